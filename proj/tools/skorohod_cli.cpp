// Command-line frontend: distances, moduli profiles, compactness/tightness
// reports, the heavy-tailed partial-sum simulator, and the verify suites.
// All JSON output is deterministic (sorted keys, shortest round-trip
// doubles), so reruns are byte-identical.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skorohod/diagnostics.hpp"
#include "skorohod/json_io.hpp"
#include "skorohod/metric.hpp"
#include "skorohod/moduli.hpp"
#include "skorohod/nested_metric.hpp"
#include "skorohod/selftest.hpp"
#include "skorohod/simulate.hpp"

namespace {

using namespace skorohod;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    io::save_text_file(out_path, text);
}

void require_json_format(const std::string& format, const char* cmd) {
  if (format != "json")
    throw std::invalid_argument(std::string(cmd) + " only writes json output");
}

Objective parse_objective(const std::string& s) {
  return s == "j1" ? Objective::j1 : Objective::j1_0;
}

// ---- dist -----------------------------------------------------------------

struct DistOpts {
  std::string x_path, y_path, objective = "j1", level = "scalar", format = "json", out;
};

int run_dist(const DistOpts& o) {
  require_json_format(o.format, "dist");
  Objective obj = parse_objective(o.objective);
  DistanceResult res;
  if (o.level == "scalar") {
    StepFunction x = io::step_from_json(io::load_json_file(o.x_path));
    StepFunction y = io::step_from_json(io::load_json_file(o.y_path));
    res = obj == Objective::j1 ? d_j1(x, y) : d_j1_0(x, y);
  } else {
    NestedPath x = io::nested_from_json(io::load_json_file(o.x_path));
    NestedPath y = io::nested_from_json(io::load_json_file(o.y_path));
    res = obj == Objective::j1 ? d_D(x, y) : d_D0(x, y);
  }
  emit(io::dump(io::to_json(res)), o.out);
  return 0;
}

// ---- moduli ----------------------------------------------------------------

struct ModuliOpts {
  std::string input, level = "scalar", format = "json", out;
  std::vector<double> delta_grid;
  std::vector<std::string> which;
};

int run_moduli(const ModuliOpts& o) {
  static const std::vector<std::string> scalar_names{"wprime", "wsecond"};
  static const std::vector<std::string> nested_names{"wDprime", "wDsecond", "wusecond"};
  const auto& allowed = o.level == "scalar" ? scalar_names : nested_names;
  std::vector<std::string> names = o.which.empty() ? allowed : o.which;
  for (const auto& n : names)
    if (std::find(allowed.begin(), allowed.end(), n) == allowed.end())
      throw std::invalid_argument("modulus " + n + " not available at level " + o.level);
  // canonical emission order, independent of how --which was spelled
  std::vector<std::string> ordered;
  for (const auto& n : allowed)
    if (std::find(names.begin(), names.end(), n) != names.end()) ordered.push_back(n);

  io::json input = io::load_json_file(o.input);
  std::map<std::string, std::vector<double>> values;
  if (o.level == "scalar") {
    StepFunction x = io::step_from_json(input);
    for (double d : o.delta_grid) {
      values["wprime"].push_back(modulus_wprime(x, d));
      values["wsecond"].push_back(modulus_wsecond(x, d));
    }
  } else {
    NestedPath x = io::nested_from_json(input);
    for (double d : o.delta_grid) {
      values["wDprime"].push_back(w_D_prime(x, d));
      values["wDsecond"].push_back(w_D_second(x, d));
      values["wusecond"].push_back(w_u_second(x, d));
    }
  }

  if (o.format == "csv") {
    std::string csv = "modulus,delta,value\n";
    for (const auto& n : ordered)
      for (std::size_t i = 0; i < o.delta_grid.size(); ++i)
        csv += n + "," + io::format_double(o.delta_grid[i]) + "," +
               io::format_double(values[n][i]) + "\n";
    emit(csv, o.out);
  } else {
    io::json j{{"level", o.level}, {"delta_grid", o.delta_grid}};
    for (const auto& n : ordered) j["moduli"][n] = values[n];
    emit(io::dump(j), o.out);
  }
  return 0;
}

// ---- compactness ------------------------------------------------------------

struct CompactOpts {
  std::string input, variant = "wprime", format = "json", out;
  std::vector<double> delta_grid;
};

int run_compactness(const CompactOpts& o) {
  io::json j = io::load_json_file(o.input);
  std::vector<NestedPath> paths;
  if (j.is_array()) {
    for (const auto& p : j) paths.push_back(io::nested_from_json(p));
  } else if (j.contains("paths")) {
    paths = io::ensemble_from_json(j).paths;
  } else {
    paths.push_back(io::nested_from_json(j));
  }
  ProfileVariant v = o.variant == "wprime" ? ProfileVariant::wprime : ProfileVariant::wsecond;
  CompactnessReport rep = compactness_profile(paths, o.delta_grid, v);
  emit(o.format == "csv" ? io::to_csv(rep) : io::dump(io::to_json(rep)), o.out);
  return 0;
}

// ---- tightness --------------------------------------------------------------

struct TightOpts {
  std::vector<std::string> inputs;
  std::string format = "json", out;
  std::vector<double> a_grid, delta_grid, epsilon_grid, t_grid{1.0};
};

int run_tightness(const TightOpts& o) {
  std::vector<PathEnsemble> ensembles;
  for (const auto& path : o.inputs) {
    io::json j = io::load_json_file(path);
    if (j.contains("paths"))
      ensembles.push_back(io::ensemble_from_json(j));
    else
      ensembles.push_back(make_ensemble(io::simconfig_from_json(j)));
  }
  TightnessReport rep =
      tightness_report(ensembles, o.a_grid, o.delta_grid, o.epsilon_grid, o.t_grid);
  emit(o.format == "csv" ? io::to_csv(rep) : io::dump(io::to_json(rep)), o.out);
  return 0;
}

// ---- simulate ---------------------------------------------------------------

struct SimOpts {
  std::string config, format = "json", out;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

int run_simulate(const SimOpts& o) {
  require_json_format(o.format, "simulate");
  SimConfig cfg = io::simconfig_from_json(io::load_json_file(o.config));
  if (o.seed_set) cfg.seed = o.seed;
  emit(io::dump(io::to_json(make_ensemble(cfg))), o.out);
  return 0;
}

// ---- verify -----------------------------------------------------------------

int run_verify(const std::string& corpus_dir) {
  auto suites = run_verify_suites(corpus_dir);
  bool all_ok = true;
  for (const auto& s : suites) {
    std::cout << (s.ok() ? "[ok]   " : "[FAIL] ") << s.name << ": " << s.passed << "/" << s.total
              << "\n";
    for (const auto& f : s.failures) std::cout << "       " << f << "\n";
    all_ok = all_ok && s.ok();
  }
  std::cout << (all_ok ? "verify: all suites passed\n" : "verify: FAILURES above\n");
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact J1 computations on piecewise-constant paths"};
  app.require_subcommand(1);

  DistOpts dopt;
  auto* dist = app.add_subcommand("dist", "distance between two paths, with witness");
  dist->add_option("--x", dopt.x_path, "left path (json)")->required();
  dist->add_option("--y", dopt.y_path, "right path (json)")->required();
  dist->add_option("--objective", dopt.objective)->check(CLI::IsMember({"j1", "j1_0"}));
  dist->add_option("--level", dopt.level)->check(CLI::IsMember({"scalar", "nested"}));
  dist->add_option("--format", dopt.format)->check(CLI::IsMember({"json", "csv"}));
  dist->add_option("--out", dopt.out, "write here instead of stdout");

  ModuliOpts mopt;
  auto* mod = app.add_subcommand("moduli", "moduli of continuity over a delta grid");
  mod->add_option("--input", mopt.input, "path (json)")->required();
  mod->add_option("--level", mopt.level)->check(CLI::IsMember({"scalar", "nested"}));
  mod->add_option("--delta-grid", mopt.delta_grid)->required()->delimiter(',');
  mod->add_option("--which", mopt.which, "subset of moduli to report")->delimiter(',');
  mod->add_option("--format", mopt.format)->check(CLI::IsMember({"json", "csv"}));
  mod->add_option("--out", mopt.out);

  CompactOpts copt;
  auto* comp = app.add_subcommand("compactness", "exact profile maxima for a path family");
  comp->add_option("--input", copt.input, "ensemble, path array, or single path (json)")
      ->required();
  comp->add_option("--delta-grid", copt.delta_grid)->required()->delimiter(',');
  comp->add_option("--variant", copt.variant)->check(CLI::IsMember({"wprime", "wsecond"}));
  comp->add_option("--format", copt.format)->check(CLI::IsMember({"json", "csv"}));
  comp->add_option("--out", copt.out);

  TightOpts topt;
  auto* tight = app.add_subcommand("tightness", "exceedance frequencies across ensembles");
  tight->add_option("--input", topt.inputs, "ensemble or sim-config files (json)")->required();
  tight->add_option("--a-grid", topt.a_grid)->required()->delimiter(',');
  tight->add_option("--delta-grid", topt.delta_grid)->required()->delimiter(',');
  tight->add_option("--epsilon-grid", topt.epsilon_grid)->required()->delimiter(',');
  tight->add_option("--t-grid", topt.t_grid, "marginal times, must contain 1")->delimiter(',');
  tight->add_option("--format", topt.format)->check(CLI::IsMember({"json", "csv"}));
  tight->add_option("--out", topt.out);

  SimOpts sopt;
  auto* sim = app.add_subcommand("simulate", "seeded heavy-tailed partial-sum ensembles");
  sim->add_option("--config", sopt.config, "sim config (json)")->required();
  auto* seed_opt = sim->add_option("--seed", sopt.seed, "override the config seed");
  sim->add_option("--format", sopt.format)->check(CLI::IsMember({"json", "csv"}));
  sim->add_option("--out", sopt.out);

  std::string corpus_dir = "corpus";
  auto* verify = app.add_subcommand("verify", "run the invariant suites over the corpus");
  verify->add_option("--corpus", corpus_dir, "corpus directory");

  int rc = 0;
  dist->callback([&] { rc = run_dist(dopt); });
  mod->callback([&] { rc = run_moduli(mopt); });
  comp->callback([&] { rc = run_compactness(copt); });
  tight->callback([&] { rc = run_tightness(topt); });
  sim->callback([&] {
    sopt.seed_set = seed_opt->count() > 0;
    rc = run_simulate(sopt);
  });
  verify->callback([&] { rc = run_verify(corpus_dir); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
