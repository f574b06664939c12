#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "generators.hpp"
#include "skorohod/diagnostics.hpp"
#include "skorohod/json_io.hpp"
#include "skorohod/nested_metric.hpp"
#include "skorohod/simulate.hpp"

using namespace skorohod;
namespace fs = std::filesystem;

namespace {

std::string corpus(const char* name) {
  return std::string(SKOROHOD_CORPUS_DIR) + "/" + name;
}

fs::path scratch_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("skorohod_io_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliResult {
  int exit = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path tmp = scratch_dir() / ("cli_" + std::to_string(counter++) + ".out");
  std::string cmd =
      std::string("\"") + SKOROHOD_CLI_PATH + "\" " + args + " > \"" + tmp.string() + "\" 2>&1";
  int rc = std::system(cmd.c_str());
  CliResult res;
  REQUIRE(rc != -1);
  res.exit = WEXITSTATUS(rc);
  res.out = slurp(tmp);
  fs::remove(tmp);
  return res;
}

}  // namespace

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

TEST_CASE("value types round-trip through json") {
  std::mt19937_64 g(901);
  for (int trial = 0; trial < 80; ++trial) {
    StepFunction x = gen::rand_step(g, 5);
    CHECK(io::step_from_json(io::to_json(x)) == x);
    NestedPath p = gen::rand_nested(g, 4, 3);
    CHECK(io::nested_from_json(io::to_json(p)) == p);
    TimeChange lam = gen::rand_timechange(g, 4);
    CHECK(io::timechange_from_json(io::to_json(lam)).knots() == lam.knots());
  }
  // parsing validates like the constructors do
  CHECK_THROWS_AS(io::step_from_json(io::json{{"breakpoints", {0.7, 0.3}},
                                              {"values", {1.0, 2.0, 3.0}}}),
                  std::invalid_argument);
  CHECK_THROWS(io::step_from_json(io::json{{"values", {1.0}}}));  // missing key
}

TEST_CASE("sim config parsing and defaults") {
  io::json j{{"alpha", 1.5}, {"n", 8}, {"m", 4}, {"seed", 42}, {"sign_balance", 0.25}};
  SimConfig cfg = io::simconfig_from_json(j);
  CHECK(cfg.alpha == 1.5);
  CHECK(cfg.n == 8);
  CHECK(cfg.m == 4);
  CHECK(cfg.seed == 42);
  CHECK(cfg.sign_balance == 0.25);
  CHECK(io::to_json(cfg) == j);

  j.erase("sign_balance");
  CHECK(io::simconfig_from_json(j).sign_balance == 0.5);

  j["alpha"] = 2.0;
  CHECK_THROWS_AS(io::simconfig_from_json(j), std::invalid_argument);
  j.erase("alpha");
  CHECK_THROWS(io::simconfig_from_json(j));
}

TEST_CASE("distance results round-trip with witness data") {
  StepFunction a = io::step_from_json(io::load_json_file(corpus("step_a.json")));
  StepFunction b = io::step_from_json(io::load_json_file(corpus("step_b.json")));
  DistanceResult res = d_j1_0(a, b);
  io::json j = io::to_json(res);
  CHECK(j.at("objective") == "j1_0");
  CHECK(j.at("value").get<double>() == res.value);

  DistanceResult back = io::distance_from_json(j);
  CHECK(back.value == res.value);
  CHECK(back.objective == res.objective);
  CHECK(back.witness.pairs == res.witness.pairs);
  CHECK(back.witness_timechange.knots() == res.witness_timechange.knots());
  CHECK(io::to_json(back) == j);
}

TEST_CASE("ensembles round-trip") {
  SimConfig cfg = io::simconfig_from_json(io::load_json_file(corpus("simconfig_small.json")));
  PathEnsemble e = make_ensemble(cfg);
  io::json j = io::to_json(e);
  PathEnsemble back = io::ensemble_from_json(j);
  CHECK(back.n == e.n);
  CHECK(back.seed == e.seed);
  REQUIRE(back.paths.size() == e.paths.size());
  for (std::size_t i = 0; i < e.paths.size(); ++i) CHECK(back.paths[i] == e.paths[i]);
  CHECK(io::to_json(back) == j);
}

TEST_CASE("reports round-trip and keep null placeholders") {
  NestedPath x = io::nested_from_json(io::load_json_file(corpus("nested_a.json")));
  NestedPath y = io::nested_from_json(io::load_json_file(corpus("nested_b.json")));

  for (auto variant : {ProfileVariant::wprime, ProfileVariant::wsecond}) {
    CompactnessReport rep = compactness_profile({x, y}, {0.1, 0.2}, variant);
    io::json j = io::to_json(rep);
    CHECK(io::to_json(io::compactness_from_json(j)) == j);
  }

  PathEnsemble e;
  e.n = 4;
  e.seed = 9;
  e.paths = {x, y};
  TightnessReport rep = tightness_report({e}, {0.5}, {0.1}, {0.25}, {1.0});
  io::json j = io::to_json(rep);
  // threshold rows carry null for the grid axes they do not use
  const io::json& first = j.at("rows").at(0);
  CHECK(first.at("condition") == "super_norm_geq_a");
  CHECK(first.at("a").is_number());
  CHECK(first.at("delta").is_null());
  CHECK(first.at("epsilon").is_null());
  CHECK(io::to_json(io::tightness_from_json(j)) == j);
}

TEST_CASE("csv layouts are frozen") {
  CompactnessReport r;
  r.variant = ProfileVariant::wprime;
  r.delta_grid = {0.1, 0.2};
  r.sup_super_norm = 1.5;
  r.inner_wprime = {0.25, 0.5};
  r.nested_wprime = {1.0, 1.25};
  CHECK(io::to_csv(r) ==
        "delta,quantity,value\n"
        ",sup_super_norm,1.5\n"
        "0.1,inner_wprime,0.25\n"
        "0.2,inner_wprime,0.5\n"
        "0.1,nested_wprime,1\n"
        "0.2,nested_wprime,1.25\n");

  TightnessReport t;
  t.a_grid = {1.5};
  t.delta_grid = {0.1};
  t.epsilon_grid = {0.25};
  t.t_subset = {1.0};
  TightnessRow r1;
  r1.n = 8;
  r1.a = 1.5;
  r1.condition = "super_norm_geq_a";
  r1.count = 2;
  r1.total = 4;
  r1.frequency = 0.5;
  TightnessRow r2;
  r2.n = 8;
  r2.delta = 0.1;
  r2.epsilon = 0.25;
  r2.condition = "inner_wprime_geq_eps";
  r2.count = 1;
  r2.total = 4;
  r2.frequency = 0.25;
  t.rows = {r1, r2};
  CHECK(io::to_csv(t) ==
        "n,a,delta,epsilon,condition,count,total,frequency\n"
        "8,1.5,,,super_norm_geq_a,2,4,0.5\n"
        "8,,0.1,0.25,inner_wprime_geq_eps,1,4,0.25\n");
}

TEST_CASE("doubles print shortest and round-trip") {
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1e-09) == "1e-09");
  CHECK(io::format_double(0.09999999999999998) == "0.09999999999999998");

  std::mt19937_64 g(902);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-40, 40);
  for (int i = 0; i < 1000; ++i) {
    double d = std::ldexp(unif(g), expo(g));
    CHECK(std::stod(io::format_double(d)) == d);
  }
}

TEST_CASE("dump format") {
  io::json j{{"b", 1}, {"a", 2.5}};
  CHECK(io::dump(j) == "{\n  \"a\": 2.5,\n  \"b\": 1\n}\n");
}

TEST_CASE("file io reports the failing path") {
  fs::path missing = scratch_dir() / "missing.json";
  try {
    io::load_json_file(missing.string());
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(missing.string()) != std::string::npos);
  }

  fs::path broken = scratch_dir() / "broken.json";
  io::save_text_file(broken.string(), "{ not json");
  try {
    io::load_json_file(broken.string());
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
  }

  fs::path file = scratch_dir() / "save.txt";
  io::save_text_file(file.string(), "two\nlines\n");
  CHECK(slurp(file) == "two\nlines\n");
  CHECK_THROWS_AS(io::save_text_file((scratch_dir() / "no/dir/file").string(), "x"),
                  std::runtime_error);
}

// ---------------------------------------------------------------------------
// command line
// ---------------------------------------------------------------------------

TEST_CASE("cli dist matches the library and writes identically to --out") {
  std::string args = "dist --x \"" + corpus("step_a.json") + "\" --y \"" + corpus("step_b.json") +
                     "\" --objective j1_0";
  CliResult r = run_cli(args);
  REQUIRE(r.exit == 0);

  StepFunction a = io::step_from_json(io::load_json_file(corpus("step_a.json")));
  StepFunction b = io::step_from_json(io::load_json_file(corpus("step_b.json")));
  CHECK(r.out == io::dump(io::to_json(d_j1_0(a, b))));

  fs::path outfile = scratch_dir() / "dist.json";
  CliResult r2 = run_cli(args + " --out \"" + outfile.string() + "\"");
  REQUIRE(r2.exit == 0);
  CHECK(r2.out.empty());
  CHECK(slurp(outfile) == r.out);

  // nested level
  std::string nested = "dist --x \"" + corpus("nested_a.json") + "\" --y \"" +
                       corpus("nested_b.json") + "\" --level nested";
  CliResult rn = run_cli(nested);
  REQUIRE(rn.exit == 0);
  NestedPath nx = io::nested_from_json(io::load_json_file(corpus("nested_a.json")));
  NestedPath ny = io::nested_from_json(io::load_json_file(corpus("nested_b.json")));
  CHECK(rn.out == io::dump(io::to_json(d_D(nx, ny))));

  CHECK(run_cli(args + " --format csv").exit == 2);
}

TEST_CASE("cli moduli emits the canonical order") {
  StepFunction a = io::step_from_json(io::load_json_file(corpus("step_a.json")));
  std::string expected = "modulus,delta,value\n";
  for (double d : {0.1, 0.2})
    expected += "wprime," + io::format_double(d) + "," + io::format_double(modulus_wprime(a, d)) +
                "\n";
  for (double d : {0.1, 0.2})
    expected += "wsecond," + io::format_double(d) + "," + io::format_double(modulus_wsecond(a, d)) +
                "\n";

  std::string base = "moduli --input \"" + corpus("step_a.json") + "\" --delta-grid 0.1,0.2";
  CliResult r = run_cli(base + " --format csv");
  REQUIRE(r.exit == 0);
  CHECK(r.out == expected);

  // --which spelling order does not change the emission order
  CliResult shuffled = run_cli(base + " --format csv --which wsecond,wprime");
  CHECK(shuffled.out == expected);
  CliResult one = run_cli(base + " --format csv --which wsecond");
  CHECK(one.out == "modulus,delta,value\n"
                   "wsecond,0.1," + io::format_double(modulus_wsecond(a, 0.1)) + "\n" +
                   "wsecond,0.2," + io::format_double(modulus_wsecond(a, 0.2)) + "\n");
  CHECK(run_cli(base + " --which wDprime").exit == 2);  // nested-only name

  NestedPath nx = io::nested_from_json(io::load_json_file(corpus("nested_a.json")));
  CliResult rn = run_cli("moduli --input \"" + corpus("nested_a.json") +
                         "\" --level nested --delta-grid 0.25 --format csv"
                         " --which wusecond,wDprime");
  REQUIRE(rn.exit == 0);
  CHECK(rn.out == "modulus,delta,value\n"
                  "wDprime,0.25," + io::format_double(w_D_prime(nx, 0.25)) + "\n" +
                  "wusecond,0.25," + io::format_double(w_u_second(nx, 0.25)) + "\n");
}

TEST_CASE("cli simulate is byte-deterministic and honours seed override") {
  fs::path t1 = scratch_dir() / "ens1.json";
  fs::path t2 = scratch_dir() / "ens2.json";
  std::string base = "simulate --config \"" + corpus("simconfig_small.json") + "\"";
  REQUIRE(run_cli(base + " --out \"" + t1.string() + "\"").exit == 0);
  REQUIRE(run_cli(base + " --out \"" + t2.string() + "\"").exit == 0);
  CHECK(slurp(t1) == slurp(t2));
  // the shipped fixture was produced by this very command
  CHECK(slurp(t1) == slurp(corpus("ensemble_small.json")));

  CliResult r = run_cli(base + " --seed 7");
  REQUIRE(r.exit == 0);
  io::json j = io::json::parse(r.out);
  CHECK(j.at("seed") == 7);
  CHECK(r.out != slurp(t1));

  CHECK(run_cli(base + " --format csv").exit == 2);
}

TEST_CASE("cli compactness accepts a path, an array, or an ensemble") {
  NestedPath nx = io::nested_from_json(io::load_json_file(corpus("nested_a.json")));
  NestedPath ny = io::nested_from_json(io::load_json_file(corpus("nested_b.json")));

  CliResult single = run_cli("compactness --input \"" + corpus("nested_a.json") +
                             "\" --delta-grid 0.1,0.2");
  REQUIRE(single.exit == 0);
  CHECK(single.out == io::dump(io::to_json(
                          compactness_profile({nx}, {0.1, 0.2}, ProfileVariant::wprime))));

  fs::path arr = scratch_dir() / "pair.json";
  io::json both = io::json::array({io::to_json(nx), io::to_json(ny)});
  io::save_text_file(arr.string(), io::dump(both));
  CliResult array_in = run_cli("compactness --input \"" + arr.string() +
                               "\" --delta-grid 0.1 --variant wsecond --format csv");
  REQUIRE(array_in.exit == 0);
  CHECK(array_in.out ==
        io::to_csv(compactness_profile({nx, ny}, {0.1}, ProfileVariant::wsecond)));

  PathEnsemble ens = io::ensemble_from_json(io::load_json_file(corpus("ensemble_small.json")));
  CliResult ens_in = run_cli("compactness --input \"" + corpus("ensemble_small.json") +
                             "\" --delta-grid 0.25");
  REQUIRE(ens_in.exit == 0);
  CHECK(ens_in.out == io::dump(io::to_json(
                          compactness_profile(ens.paths, {0.25}, ProfileVariant::wprime))));
}

TEST_CASE("cli tightness accepts ensembles and sim configs") {
  PathEnsemble ens = io::ensemble_from_json(io::load_json_file(corpus("ensemble_small.json")));
  std::string grids = " --a-grid 0.5,1 --delta-grid 0.1,0.25 --epsilon-grid 0.2";

  CliResult r = run_cli("tightness --input \"" + corpus("ensemble_small.json") + "\"" + grids);
  REQUIRE(r.exit == 0);
  CHECK(r.out == io::dump(io::to_json(
                     tightness_report({ens}, {0.5, 1.0}, {0.1, 0.25}, {0.2}, {1.0}))));

  // a sim config generates the same ensemble on the fly
  CliResult rc = run_cli("tightness --input \"" + corpus("simconfig_small.json") + "\"" + grids);
  REQUIRE(rc.exit == 0);
  CHECK(rc.out == r.out);

  // two inputs, custom marginal times, csv
  CliResult r2 = run_cli("tightness --input \"" + corpus("ensemble_small.json") + "\" --input \"" +
                         corpus("simconfig_small.json") + "\"" + grids +
                         " --t-grid 0.5,1 --format csv");
  REQUIRE(r2.exit == 0);
  CHECK(r2.out == io::to_csv(tightness_report({ens, ens}, {0.5, 1.0}, {0.1, 0.25}, {0.2},
                                              {0.5, 1.0})));

  CHECK(run_cli("tightness --input \"" + corpus("ensemble_small.json") + "\"" + grids +
                " --t-grid 0.5").exit == 2);  // 1 must be present
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("--help").exit == 0);
  CHECK(run_cli("dist --help").exit == 0);
  CHECK(run_cli("dist --x a.json").exit == 2);      // missing required --y
  CHECK(run_cli("frobnicate").exit == 2);           // unknown subcommand
  CHECK(run_cli("moduli --input nope.json --delta-grid 0.1").exit == 2);
  CliResult missing = run_cli("dist --x nope.json --y also_nope.json");
  CHECK(missing.exit == 2);
  CHECK(missing.out.find("error:") != std::string::npos);

  CHECK(run_cli("verify --corpus \"" + std::string(SKOROHOD_CORPUS_DIR) + "\"").exit == 0);
  CHECK(run_cli("verify --corpus \"" + scratch_dir().string() + "\"").exit == 2);
}
