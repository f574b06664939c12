#include "skorohod/nested_metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skorohod/detail/match_engine.hpp"

namespace skorohod {

namespace {

// Lazy pairwise d_j1_0 between segment lists; every pair is solved once.
struct InnerDist {
  const std::vector<StepFunction>& sx;
  const std::vector<StepFunction>& sy;
  mutable std::vector<std::vector<double>> memo;

  InnerDist(const std::vector<StepFunction>& a, const std::vector<StepFunction>& b)
      : sx(a), sy(b), memo(a.size(), std::vector<double>(b.size(), -1.0)) {}

  double operator()(std::size_t i, std::size_t j) const {
    double& m = memo[i][j];
    if (m < 0.0) m = d_j1_0(sx[i], sy[j]).value;
    return m;
  }
};

std::vector<double> t_cuts(const NestedPath& x) {
  std::vector<double> cuts;
  cuts.reserve(x.jump_count() + 2);
  cuts.push_back(0.0);
  for (double b : x.t_breakpoints()) cuts.push_back(b);
  cuts.push_back(1.0);
  return cuts;
}

void check_delta(double delta, const char* who) {
  if (!(delta > 0.0 && delta < 1.0))
    throw std::domain_error(std::string(who) + ": delta outside (0,1)");
}

detail::MatchView nested_view(const NestedPath& x, const NestedPath& y, const InnerDist& dist) {
  return {x.t_breakpoints(), y.t_breakpoints(),
          [&dist](std::size_t i, std::size_t j) { return dist(i, j); }};
}

DistanceResult solve_nested(const NestedPath& x, const NestedPath& y, Objective obj) {
  InnerDist dist(x.segments(), y.segments());
  auto out = detail::match_minimax(nested_view(x, y, dist), obj);
  DistanceResult r;
  r.value = out.value;
  r.objective = obj;
  r.witness = out.matching;
  r.witness_timechange = nested_matching_timechange(x, y, out.matching);
  return r;
}

}  // namespace

double rho_D(const NestedPath& x, const NestedPath& y) {
  InnerDist dist(x.segments(), y.segments());
  const auto& bx = x.t_breakpoints();
  const auto& by = y.t_breakpoints();
  std::size_t i = 0, j = 0;
  double best = dist(0, 0);
  while (i < bx.size() || j < by.size()) {
    if (j == by.size() || (i < bx.size() && bx[i] < by[j]))
      ++i;
    else if (i == bx.size() || by[j] < bx[i])
      ++j;
    else
      ++i, ++j;
    best = std::max(best, dist(i, j));
  }
  return best;
}

DistanceResult d_D(const NestedPath& x, const NestedPath& y) {
  return solve_nested(x, y, Objective::j1);
}

DistanceResult d_D0(const NestedPath& x, const NestedPath& y) {
  return solve_nested(x, y, Objective::j1_0);
}

TimeChange nested_matching_timechange(const NestedPath& x, const NestedPath& y,
                                      const Matching& m) {
  detail::MatchView v{x.t_breakpoints(), y.t_breakpoints(), nullptr};
  auto mid = detail::matched_knots(v, m);
  std::vector<std::pair<double, double>> knots;
  knots.reserve(mid.size() + 2);
  knots.emplace_back(0.0, 0.0);
  knots.insert(knots.end(), mid.begin(), mid.end());
  knots.emplace_back(1.0, 1.0);
  return TimeChange::make(std::move(knots));
}

double nested_matching_cost(const NestedPath& x, const NestedPath& y, const Matching& m,
                            Objective obj) {
  InnerDist dist(x.segments(), y.segments());
  return detail::match_cost(nested_view(x, y, dist), m, obj);
}

std::vector<Matching> nested_enumerate_matchings(const NestedPath& x, const NestedPath& y,
                                                 EnumerationMode mode, std::size_t cap) {
  if (mode == EnumerationMode::dp_best)
    return {solve_nested(x, y, Objective::j1).witness,
            solve_nested(x, y, Objective::j1_0).witness};
  auto count = [](const std::vector<double>& b) {
    std::size_t n = 0;
    for (double p : b)
      if (p < 1.0) ++n;
    return n;
  };
  return detail::enumerate_all(count(x.t_breakpoints()), count(y.t_breakpoints()), cap);
}

double w_D(const NestedPath& x, const Interval& T) {
  if (!(T.lo >= 0.0 && T.hi <= 1.0 && T.lo <= T.hi))
    throw std::domain_error("w_D: interval outside [0,1]");
  if (T.half_open && T.lo == T.hi) return 0.0;
  auto cuts = t_cuts(x);
  auto [first, last] = moduli_engine::piece_range(cuts, T.lo, T.hi, T.half_open);
  if (first > last) return 0.0;
  InnerDist dist(x.segments(), x.segments());
  double best = 0.0;
  for (auto p = first; p <= last; ++p)
    for (auto q = p + 1; q <= last; ++q)
      best = std::max(best, dist(static_cast<std::size_t>(p), static_cast<std::size_t>(q)));
  return best;
}

double max_jump(const NestedPath& x) {
  const auto& s = x.segments();
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    m = std::max(m, d_j1_0(s[i + 1], s[i]).value);
  return m;
}

double w_D_prime(const NestedPath& x, double delta) {
  check_delta(delta, "w_D_prime");
  auto cuts = t_cuts(x);
  InnerDist dist(x.segments(), x.segments());
  auto W = moduli_engine::window_table(
      x.segments().size(), [&dist](std::size_t p, std::size_t q) { return dist(p, q); });
  return moduli_engine::sparse_infimum(cuts, W, delta);
}

SparsePartition w_D_prime_witness(const NestedPath& x, double delta) {
  check_delta(delta, "w_D_prime");
  auto cuts = t_cuts(x);
  InnerDist dist(x.segments(), x.segments());
  auto W = moduli_engine::window_table(
      x.segments().size(), [&dist](std::size_t p, std::size_t q) { return dist(p, q); });
  return moduli_engine::sparse_infimum_witness(cuts, W, delta);
}

double w_D_second(const NestedPath& x, double delta) {
  check_delta(delta, "w_D_second");
  const auto& s = x.segments();
  return moduli_engine::min_increment_window(
      t_cuts(x), [&s](std::size_t p, std::size_t q) { return d_j1_0(s[p], s[q]).value; }, delta);
}

double w_u_second(const NestedPath& x, double delta) {
  check_delta(delta, "w_u_second");
  const auto& s = x.segments();
  return moduli_engine::min_increment_window(
      t_cuts(x), [&s](std::size_t p, std::size_t q) { return sup_norm(subtract(s[p], s[q])); },
      delta);
}

double w_D_window(const NestedPath& x, double delta) {
  if (!(delta >= 0.0)) throw std::domain_error("w_D_window: negative width");
  auto cuts = t_cuts(x);
  InnerDist dist(x.segments(), x.segments());
  auto W = moduli_engine::window_table(
      x.segments().size(), [&dist](std::size_t p, std::size_t q) { return dist(p, q); });
  return moduli_engine::pair_window_sup(cuts, W, delta);
}

}  // namespace skorohod
