#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skorohod/nested_path.hpp"

namespace skorohod {

struct PathEnsemble {
  std::size_t n = 0;       // sequence label (time resolution of the generator)
  std::uint64_t seed = 0;  // seed the ensemble was generated from
  std::vector<NestedPath> paths;
};

enum class ProfileVariant { wprime, wsecond };

// Exact maxima over a finite path family. Which profile arrays are filled
// depends on the variant; the others stay empty. All profiles are
// non-decreasing in delta.
struct CompactnessReport {
  ProfileVariant variant = ProfileVariant::wprime;
  std::vector<double> delta_grid;
  double sup_super_norm = 0.0;

  // variant == wprime
  std::vector<double> inner_wprime;   // max over paths, t of w'(x(t), delta)
  std::vector<double> nested_wprime;  // max over paths of w_D_prime(x, delta)

  // variant == wsecond
  std::vector<double> inner_wsecond;          // max over paths, t of w''(x(t), delta)
  std::vector<double> inner_left_increment;   // max over paths, t of |x(t,delta) - x(t,0)|
  std::vector<double> inner_right_increment;  // max over paths, t of |x(t,1-) - x(t,1-delta)|
  std::vector<double> nested_wsecond;         // max over paths of w_D_second(x, delta)
  std::vector<double> nested_left_increment;  // max over paths of d_j1_0(x(delta), x(0))
  std::vector<double> nested_right_increment; // max over paths of d_j1_0(x(1-), x(1-delta))
};

CompactnessReport compactness_profile(const std::vector<NestedPath>& paths,
                                      const std::vector<double>& delta_grid,
                                      ProfileVariant variant);

// One empirical exceedance frequency. Fields that do not apply to the
// condition are left empty (e.g. super_norm thresholds have no delta).
struct TightnessRow {
  std::size_t n = 0;
  std::optional<double> a;
  std::optional<double> delta;
  std::optional<double> epsilon;
  std::string condition;
  std::size_t count = 0;
  std::size_t total = 0;
  double frequency = 0.0;
};

struct TightnessReport {
  std::vector<double> a_grid;
  std::vector<double> delta_grid;
  std::vector<double> epsilon_grid;
  std::vector<double> t_subset;
  std::vector<TightnessRow> rows;
};

// Condition labels, in the emitted row order per ensemble:
//   super_norm_geq_a                       (a)
//   inner_wprime_geq_eps                   (delta, epsilon; some t)
//   nested_wprime_geq_eps                  (delta, epsilon)
//   norm_at_t_geq_a;t=<t>                  (a; one block per t in t_subset)
//   inner_wsecond_geq_eps                  (delta, epsilon; some t)
//   inner_left_increment_geq_eps           (delta, epsilon; some t)
//   inner_right_increment_geq_eps          (delta, epsilon; some t)
//   nested_wsecond_geq_eps                 (delta, epsilon)
//   nested_left_increment_geq_eps          (delta, epsilon)
//   nested_right_increment_geq_eps         (delta, epsilon)
// "some t" events are exact: the sup over t is a max over t-pieces.
// t_subset must contain 1.
TightnessReport tightness_report(const std::vector<PathEnsemble>& ensembles,
                                 const std::vector<double>& a_grid,
                                 const std::vector<double>& delta_grid,
                                 const std::vector<double>& epsilon_grid,
                                 const std::vector<double>& t_subset);

enum class IncrementMetric { j1, uniform };

// Two-sided increment at r <= s <= t: the smaller of the (r,s) and (s,t)
// distances, d_j1_0 or sup-norm of the difference by metric.
double m_rst(const NestedPath& x, double r, double s, double t, IncrementMetric metric);

// sup of m_rst over r <= s <= t with t - r < delta, delta in (0,1]; exact
// over piece-boundary candidates. With metric j1 this equals
// w_D_second(x, delta) for delta < 1 and extends it continuously to delta = 1.
double L_max(const NestedPath& x, double delta, IncrementMetric metric);

// M_n for the running partial sums S_0 = 0, S_k = sum of the first k
// increments: max over i <= j <= k of
// min(sup_norm(S_j - S_i), sup_norm(S_k - S_j)). Direct O(n^3) scan over a
// precomputed pairwise-norm table; n capped at 512.
double discrete_max_M(const std::vector<StepFunction>& increments);

}  // namespace skorohod
