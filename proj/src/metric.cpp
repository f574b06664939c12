#include "skorohod/metric.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "skorohod/detail/match_engine.hpp"

namespace skorohod {

namespace {

detail::MatchView view_of(const StepFunction& x, const StepFunction& y) {
  const auto& vx = x.values();
  const auto& vy = y.values();
  return {x.breakpoints(), y.breakpoints(),
          [&vx, &vy](std::size_t i, std::size_t j) { return std::fabs(vx[i] - vy[j]); }};
}

DistanceResult solve(const StepFunction& x, const StepFunction& y, Objective obj) {
  auto v = view_of(x, y);
  auto out = detail::match_minimax(v, obj);
  DistanceResult r;
  r.value = out.value;
  r.objective = obj;
  r.witness = out.matching;
  r.witness_timechange = matching_timechange(x, y, out.matching);
  return r;
}

std::size_t matchable_count(const std::vector<double>& b) {
  std::size_t n = 0;
  for (double p : b)
    if (p < 1.0) ++n;
  return n;
}

}  // namespace

DistanceResult d_j1(const StepFunction& x, const StepFunction& y) {
  return solve(x, y, Objective::j1);
}

DistanceResult d_j1_0(const StepFunction& x, const StepFunction& y) {
  return solve(x, y, Objective::j1_0);
}

TimeChange matching_timechange(const StepFunction& x, const StepFunction& y, const Matching& m) {
  auto v = view_of(x, y);
  auto mid = detail::matched_knots(v, m);
  std::vector<std::pair<double, double>> knots;
  knots.reserve(mid.size() + 2);
  knots.emplace_back(0.0, 0.0);
  knots.insert(knots.end(), mid.begin(), mid.end());
  knots.emplace_back(1.0, 1.0);
  return TimeChange::make(std::move(knots));
}

double matching_cost(const StepFunction& x, const StepFunction& y, const Matching& m,
                     Objective obj) {
  auto v = view_of(x, y);
  return detail::match_cost(v, m, obj);
}

std::vector<Matching> enumerate_matchings(const StepFunction& x, const StepFunction& y,
                                          EnumerationMode mode, std::size_t cap) {
  if (mode == EnumerationMode::dp_best)
    return {solve(x, y, Objective::j1).witness, solve(x, y, Objective::j1_0).witness};
  return detail::enumerate_all(matchable_count(x.breakpoints()),
                               matchable_count(y.breakpoints()), cap);
}

double oracle_dist(const StepFunction& x, const StepFunction& y, Objective obj, int trials,
                   std::uint64_t seed) {
  // Independent certification path: evaluates candidate time changes with
  // the composition operator, not the matching machinery. The cost surface
  // is discontinuous (the sup part only drops when jump times align
  // exactly), so proposals mix three moves: zipping random order-preserving
  // subsets of the two jump-time pools (optionally pinning the leftover
  // jumps somewhere inside their segments), fresh global draws, and local
  // jitter of a single knot with pool snapping. Basin hopping keeps the
  // best; the norm part is smooth inside a fixed alignment, so the local
  // move polishes whatever the discrete moves discover.
  auto size_of = [&](const TimeChange& lam) {
    return obj == Objective::j1 ? timechange_devnorm(lam) : timechange_lognorm(lam);
  };
  auto cost = [&](const TimeChange& lam) {
    return std::max(size_of(lam), sup_norm(subtract(x, compose(y, lam))));
  };

  std::vector<double> pool_x, pool_y;  // interior jump times
  for (double b : x.breakpoints())
    if (b < 1.0) pool_x.push_back(b);
  for (double b : y.breakpoints())
    if (b < 1.0) pool_y.push_back(b);

  TimeChange incumbent;  // identity
  double best = cost(incumbent);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto snap = [&](double v, const std::vector<double>& pool) {
    if (pool.empty() || rng() % 2 == 0) return v;
    auto it = std::lower_bound(pool.begin(), pool.end(), v);
    if (it == pool.end()) return pool.back();
    if (it == pool.begin()) return pool.front();
    return v - *(it - 1) < *it - v ? *(it - 1) : *it;
  };
  auto draw_coord = [&](const std::vector<double>& pool) {
    if (!pool.empty() && rng() % 2 == 0) return pool[rng() % pool.size()];
    return unif(rng);
  };
  auto valid = [](const std::vector<std::pair<double, double>>& ks) {
    for (std::size_t i = 0; i < ks.size(); ++i) {
      if (!(ks[i].first > 0.0 && ks[i].first < 1.0)) return false;
      if (!(ks[i].second > 0.0 && ks[i].second < 1.0)) return false;
      if (i > 0 && (ks[i - 1].first >= ks[i].first || ks[i - 1].second >= ks[i].second))
        return false;
    }
    return true;
  };

  // sorted random k-subset of a pool, partial Fisher-Yates then sort
  auto pick = [&](const std::vector<double>& pool, std::size_t k) {
    std::vector<double> s(pool);
    for (std::size_t i = 0; i < k; ++i) std::swap(s[i], s[i + rng() % (s.size() - i)]);
    s.resize(k);
    std::sort(s.begin(), s.end());
    return s;
  };

  for (int t = 0; t < trials; ++t) {
    std::vector<std::pair<double, double>> ks;
    std::size_t mode = rng() % 4;
    if (mode <= 1 && (pool_x.empty() || pool_y.empty())) mode = 2;
    if (mode == 3 && incumbent.knots().size() == 2) mode = 2;
    if (mode <= 1) {
      // alignment draw: zip sorted random subsets of the two pools, then
      // optionally pin each leftover jump somewhere inside its segment so
      // the interleavings of unmatched jumps get explored as well
      std::size_t k = rng() % (std::min(pool_x.size(), pool_y.size()) + 1);
      auto as = pick(pool_x, k);
      auto bs = pick(pool_y, k);
      std::vector<std::pair<double, double>> base;
      base.emplace_back(0.0, 0.0);
      for (std::size_t i = 0; i < k; ++i) base.emplace_back(as[i], bs[i]);
      base.emplace_back(1.0, 1.0);
      ks.assign(base.begin() + 1, base.end() - 1);
      for (double a : pool_x) {
        if (std::binary_search(as.begin(), as.end(), a) || rng() % 2 == 0) continue;
        std::size_t i = 0;
        while (base[i + 1].first < a) ++i;
        ks.emplace_back(a, base[i].second + unif(rng) * (base[i + 1].second - base[i].second));
      }
      for (double b : pool_y) {
        if (std::binary_search(bs.begin(), bs.end(), b) || rng() % 2 == 0) continue;
        std::size_t i = 0;
        while (base[i + 1].second < b) ++i;
        ks.emplace_back(base[i].first + unif(rng) * (base[i + 1].first - base[i].first), b);
      }
      std::sort(ks.begin(), ks.end());
    } else if (mode == 2) {
      // global draw: fresh knot set, coordinates sampled from the pools or
      // uniformly
      std::size_t k = 1 + rng() % 4;
      std::vector<double> as(k), bs(k);
      for (auto& u : as) u = draw_coord(pool_x);
      for (auto& u : bs) u = draw_coord(pool_y);
      std::sort(as.begin(), as.end());
      std::sort(bs.begin(), bs.end());
      for (std::size_t i = 0; i < k; ++i) ks.emplace_back(as[i], bs[i]);
    } else {
      // local refinement: jitter one knot at a log-uniform scale (the rest
      // stay bitwise identical, preserving exact alignments), snapping each
      // moved coordinate onto its pool half the time
      double sigma = std::exp(std::log(1e-9) + unif(rng) * (std::log(0.3) - std::log(1e-9)));
      const auto& inc = incumbent.knots();
      ks.assign(inc.begin() + 1, inc.end() - 1);
      std::size_t i = rng() % ks.size();
      ks[i] = {snap(ks[i].first + sigma * gauss(rng), pool_x),
               snap(ks[i].second + sigma * gauss(rng), pool_y)};
      if (rng() % 4 == 0) {
        double a = draw_coord(pool_x);
        ks.emplace_back(a, snap(incumbent(a) + sigma * gauss(rng), pool_y));
      }
      if (rng() % 8 == 0) ks.erase(ks.begin() + static_cast<std::ptrdiff_t>(rng() % ks.size()));
      std::sort(ks.begin(), ks.end());
    }
    if (!valid(ks)) continue;
    ks.insert(ks.begin(), {0.0, 0.0});
    ks.emplace_back(1.0, 1.0);
    TimeChange lam = TimeChange::make(std::move(ks));
    double c = cost(lam);
    if (c < best) {
      best = c;
      incumbent = lam;
    }
  }
  return best;
}

}  // namespace skorohod
