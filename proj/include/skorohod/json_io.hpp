#pragma once

#include <string>

#include "json.hpp"
#include "skorohod/diagnostics.hpp"
#include "skorohod/metric.hpp"
#include "skorohod/nested_path.hpp"
#include "skorohod/simulate.hpp"
#include "skorohod/step_function.hpp"
#include "skorohod/time_change.hpp"

// Serialization. Schemas:
//   StepFunction     {"breakpoints":[...],"values":[...]}
//   TimeChange       {"knots":[[s,lambda_s],...]}
//   NestedPath       {"t_breakpoints":[...],"segments":[StepFunction,...]}
//   DistanceResult   {"value":...,"objective":"j1"|"j1_0",
//                     "matching":[[i,j],...],"timechange":{...}}
//   SimConfig        {"alpha":...,"n":...,"m":...,"seed":...,"sign_balance":...}
//   PathEnsemble     {"n":...,"seed":...,"paths":[NestedPath,...]}
// Doubles round-trip exactly (shortest decimal that parses back bit-equal);
// object keys serialize sorted, so reruns are byte-identical.

namespace skorohod::io {

using json = nlohmann::json;

json to_json(const StepFunction& x);
json to_json(const TimeChange& lam);
json to_json(const NestedPath& x);
json to_json(const DistanceResult& r);
json to_json(const SimConfig& cfg);
json to_json(const PathEnsemble& e);
json to_json(const CompactnessReport& r);
json to_json(const TightnessReport& r);

StepFunction step_from_json(const json& j);
TimeChange timechange_from_json(const json& j);
NestedPath nested_from_json(const json& j);
DistanceResult distance_from_json(const json& j);
SimConfig simconfig_from_json(const json& j);
PathEnsemble ensemble_from_json(const json& j);
CompactnessReport compactness_from_json(const json& j);
TightnessReport tightness_from_json(const json& j);

// Shortest decimal that round-trips the double (std::to_chars).
std::string format_double(double v);

// Long-format CSV, deterministic row order.
//   CompactnessReport: delta,quantity,value (sup_super_norm row has empty delta)
//   TightnessReport:   n,a,delta,epsilon,condition,count,total,frequency
std::string to_csv(const CompactnessReport& r);
std::string to_csv(const TightnessReport& r);

// Canonical text form used everywhere a file is written: dump(2) + newline.
std::string dump(const json& j);

// Throws std::runtime_error naming the path on read/parse failure.
json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace skorohod::io
