#include "skorohod/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace skorohod::io {

namespace {

std::string objective_name(Objective o) { return o == Objective::j1 ? "j1" : "j1_0"; }

Objective objective_parse(const std::string& s) {
  if (s == "j1") return Objective::j1;
  if (s == "j1_0") return Objective::j1_0;
  throw std::invalid_argument("unknown objective: " + s);
}

std::string variant_name(ProfileVariant v) {
  return v == ProfileVariant::wprime ? "wprime" : "wsecond";
}

ProfileVariant variant_parse(const std::string& s) {
  if (s == "wprime") return ProfileVariant::wprime;
  if (s == "wsecond") return ProfileVariant::wsecond;
  throw std::invalid_argument("unknown profile variant: " + s);
}

void put_opt(std::ostringstream& out, const std::optional<double>& v) {
  if (v) out << format_double(*v);
  out << ',';
}

json opt_json(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

std::optional<double> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

}  // namespace

json to_json(const StepFunction& x) {
  return json{{"breakpoints", x.breakpoints()}, {"values", x.values()}};
}

json to_json(const TimeChange& lam) {
  json knots = json::array();
  for (const auto& [s, l] : lam.knots()) knots.push_back(json::array({s, l}));
  return json{{"knots", knots}};
}

json to_json(const NestedPath& x) {
  json segs = json::array();
  for (const auto& s : x.segments()) segs.push_back(to_json(s));
  return json{{"t_breakpoints", x.t_breakpoints()}, {"segments", segs}};
}

json to_json(const DistanceResult& r) {
  json pairs = json::array();
  for (const auto& [i, j] : r.witness.pairs) pairs.push_back(json::array({i, j}));
  return json{{"value", r.value},
              {"objective", objective_name(r.objective)},
              {"matching", pairs},
              {"timechange", to_json(r.witness_timechange)}};
}

json to_json(const SimConfig& cfg) {
  return json{{"alpha", cfg.alpha},
              {"n", cfg.n},
              {"m", cfg.m},
              {"seed", cfg.seed},
              {"sign_balance", cfg.sign_balance}};
}

json to_json(const PathEnsemble& e) {
  json paths = json::array();
  for (const auto& p : e.paths) paths.push_back(to_json(p));
  return json{{"n", e.n}, {"seed", e.seed}, {"paths", paths}};
}

json to_json(const CompactnessReport& r) {
  json j{{"variant", variant_name(r.variant)},
         {"delta_grid", r.delta_grid},
         {"sup_super_norm", r.sup_super_norm}};
  if (r.variant == ProfileVariant::wprime) {
    j["inner_wprime"] = r.inner_wprime;
    j["nested_wprime"] = r.nested_wprime;
  } else {
    j["inner_wsecond"] = r.inner_wsecond;
    j["inner_left_increment"] = r.inner_left_increment;
    j["inner_right_increment"] = r.inner_right_increment;
    j["nested_wsecond"] = r.nested_wsecond;
    j["nested_left_increment"] = r.nested_left_increment;
    j["nested_right_increment"] = r.nested_right_increment;
  }
  return j;
}

json to_json(const TightnessReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back(json{{"n", row.n},
                        {"a", opt_json(row.a)},
                        {"delta", opt_json(row.delta)},
                        {"epsilon", opt_json(row.epsilon)},
                        {"condition", row.condition},
                        {"count", row.count},
                        {"total", row.total},
                        {"frequency", row.frequency}});
  }
  return json{{"a_grid", r.a_grid},
              {"delta_grid", r.delta_grid},
              {"epsilon_grid", r.epsilon_grid},
              {"t_subset", r.t_subset},
              {"rows", rows}};
}

StepFunction step_from_json(const json& j) {
  return make_step(j.at("breakpoints").get<std::vector<double>>(),
                   j.at("values").get<std::vector<double>>());
}

TimeChange timechange_from_json(const json& j) {
  std::vector<std::pair<double, double>> knots;
  for (const auto& k : j.at("knots"))
    knots.emplace_back(k.at(0).get<double>(), k.at(1).get<double>());
  return TimeChange::make(knots);
}

NestedPath nested_from_json(const json& j) {
  std::vector<StepFunction> segs;
  for (const auto& s : j.at("segments")) segs.push_back(step_from_json(s));
  return NestedPath::make(j.at("t_breakpoints").get<std::vector<double>>(), segs);
}

DistanceResult distance_from_json(const json& j) {
  DistanceResult r;
  r.value = j.at("value").get<double>();
  r.objective = objective_parse(j.at("objective").get<std::string>());
  for (const auto& p : j.at("matching"))
    r.witness.pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
  r.witness_timechange = timechange_from_json(j.at("timechange"));
  return r;
}

SimConfig simconfig_from_json(const json& j) {
  SimConfig cfg;
  cfg.alpha = j.at("alpha").get<double>();
  cfg.n = j.at("n").get<std::uint64_t>();
  cfg.m = j.at("m").get<std::uint64_t>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.sign_balance = j.value("sign_balance", 0.5);
  cfg.validate();
  return cfg;
}

PathEnsemble ensemble_from_json(const json& j) {
  PathEnsemble e;
  e.n = j.at("n").get<std::size_t>();
  e.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& p : j.at("paths")) e.paths.push_back(nested_from_json(p));
  return e;
}

CompactnessReport compactness_from_json(const json& j) {
  CompactnessReport r;
  r.variant = variant_parse(j.at("variant").get<std::string>());
  r.delta_grid = j.at("delta_grid").get<std::vector<double>>();
  r.sup_super_norm = j.at("sup_super_norm").get<double>();
  auto grab = [&j](const char* key) { return j.at(key).get<std::vector<double>>(); };
  if (r.variant == ProfileVariant::wprime) {
    r.inner_wprime = grab("inner_wprime");
    r.nested_wprime = grab("nested_wprime");
  } else {
    r.inner_wsecond = grab("inner_wsecond");
    r.inner_left_increment = grab("inner_left_increment");
    r.inner_right_increment = grab("inner_right_increment");
    r.nested_wsecond = grab("nested_wsecond");
    r.nested_left_increment = grab("nested_left_increment");
    r.nested_right_increment = grab("nested_right_increment");
  }
  return r;
}

TightnessReport tightness_from_json(const json& j) {
  TightnessReport r;
  r.a_grid = j.at("a_grid").get<std::vector<double>>();
  r.delta_grid = j.at("delta_grid").get<std::vector<double>>();
  r.epsilon_grid = j.at("epsilon_grid").get<std::vector<double>>();
  r.t_subset = j.at("t_subset").get<std::vector<double>>();
  for (const auto& jr : j.at("rows")) {
    TightnessRow row;
    row.n = jr.at("n").get<std::size_t>();
    row.a = opt_from(jr.at("a"));
    row.delta = opt_from(jr.at("delta"));
    row.epsilon = opt_from(jr.at("epsilon"));
    row.condition = jr.at("condition").get<std::string>();
    row.count = jr.at("count").get<std::size_t>();
    row.total = jr.at("total").get<std::size_t>();
    row.frequency = jr.at("frequency").get<double>();
    r.rows.push_back(std::move(row));
  }
  return r;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::logic_error("format_double: to_chars failed");
  return std::string(buf, res.ptr);
}

std::string to_csv(const CompactnessReport& r) {
  std::ostringstream out;
  out << "delta,quantity,value\n";
  out << ",sup_super_norm," << format_double(r.sup_super_norm) << '\n';
  auto block = [&](const char* name, const std::vector<double>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      out << format_double(r.delta_grid[i]) << ',' << name << ',' << format_double(v[i]) << '\n';
  };
  if (r.variant == ProfileVariant::wprime) {
    block("inner_wprime", r.inner_wprime);
    block("nested_wprime", r.nested_wprime);
  } else {
    block("inner_wsecond", r.inner_wsecond);
    block("inner_left_increment", r.inner_left_increment);
    block("inner_right_increment", r.inner_right_increment);
    block("nested_wsecond", r.nested_wsecond);
    block("nested_left_increment", r.nested_left_increment);
    block("nested_right_increment", r.nested_right_increment);
  }
  return out.str();
}

std::string to_csv(const TightnessReport& r) {
  std::ostringstream out;
  out << "n,a,delta,epsilon,condition,count,total,frequency\n";
  for (const auto& row : r.rows) {
    out << row.n << ',';
    put_opt(out, row.a);
    put_opt(out, row.delta);
    put_opt(out, row.epsilon);
    out << row.condition << ',' << row.count << ',' << row.total << ','
        << format_double(row.frequency) << '\n';
  }
  return out.str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace skorohod::io
