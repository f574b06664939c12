// Acceptance gate: ten criteria, one pass/fail line each, pinned seeds and
// tolerances. Every check recomputes its quantities against an independent
// reference (longhand scans, the randomized time-change oracle, or direct
// stream replay); inequality criteria allow 1e-9 slack, identities must hold
// bitwise, and the stochastic criteria carry fixed seeds plus the runtime
// budgets they were sized for.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "skorohod/diagnostics.hpp"
#include "skorohod/metric.hpp"
#include "skorohod/moduli.hpp"
#include "skorohod/nested_metric.hpp"
#include "skorohod/nested_path.hpp"
#include "skorohod/simulate.hpp"
#include "skorohod/step_function.hpp"
#include "skorohod/time_change.hpp"

using namespace skorohod;
using clk = std::chrono::steady_clock;

namespace {

std::string strf(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  return buf;
}

struct Gate {
  int failed = 0;

  void line(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %2d %-32s %s\n", ok ? "PASS" : "FAIL", idx, name, detail.c_str());
    if (!ok) ++failed;
  }
};

double secs(clk::time_point t0) { return std::chrono::duration<double>(clk::now() - t0).count(); }

// piece layout one level up, trailing duplicate 1 for a switch at 1
std::vector<double> t_cuts(const NestedPath& x) {
  std::vector<double> cuts{0.0};
  for (double b : x.t_breakpoints()) cuts.push_back(b);
  cuts.push_back(1.0);
  return cuts;
}

struct SegDist {
  const NestedPath* x;
  mutable std::vector<std::vector<double>> memo;

  explicit SegDist(const NestedPath& p)
      : x(&p), memo(p.segments().size(), std::vector<double>(p.segments().size(), -1.0)) {}

  double operator()(std::size_t p, std::size_t q) const {
    if (p == q) return 0.0;
    if (p > q) std::swap(p, q);
    if (memo[p][q] < 0.0) memo[p][q] = d_j1_0(x->segments()[p], x->segments()[q]).value;
    return memo[p][q];
  }
};

std::vector<double> probe_times(const NestedPath& x, const NestedPath& y) {
  std::vector<double> cuts{0.0, 1.0};
  for (double b : x.t_breakpoints()) cuts.push_back(b);
  for (double b : y.t_breakpoints()) cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> probes;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    probes.push_back(cuts[i]);
    probes.push_back(cuts[i] + (cuts[i + 1] - cuts[i]) / 2.0);
  }
  probes.push_back(1.0);
  return probes;
}

// rescaled partial-sum marginal at t = 1 by direct stream replay: the value
// accumulates the signed Pareto draws in stream order and scales once, which
// criterion 9 first certifies bitwise against eval_ts on full paths
double marginal_at_one(const SimConfig& cfg, std::uint64_t r) {
  Stream s = Stream::substream(cfg.seed, r);
  double acc = 0.0;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    double xi = std::pow(s.uniform01(), -1.0 / cfg.alpha);
    double sign = s.uniform01() < cfg.sign_balance ? 1.0 : -1.0;
    s.uniform01();  // position draw, keeps the stream phase aligned
    acc += sign * xi;
  }
  double a_n = std::pow(static_cast<double>(cfg.n), 1.0 / cfg.alpha);
  return acc * (1.0 / a_n);
}

const std::vector<double> kDeltas{0.02, 0.05, 0.1, 0.2};

// ---- 1: metric axioms -------------------------------------------------------

void criterion_1(Gate& gate) {
  auto t0 = clk::now();
  std::mt19937_64 g(9101);
  double sym = 0.0, tri = -1e300;
  int id_bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    StepFunction x = gen::rand_step(g, 6);
    StepFunction y = gen::rand_step(g, 6);
    StepFunction z = gen::rand_step(g, 6);
    if (d_j1_0(x, x).value != 0.0) ++id_bad;
    double xy = d_j1_0(x, y).value;
    sym = std::max(sym, std::fabs(xy - d_j1_0(y, x).value));
    tri = std::max(tri, xy - (d_j1_0(x, z).value + d_j1_0(z, y).value));
  }
  double el = secs(t0);
  bool ok = id_bad == 0 && sym <= 1e-9 && tri <= 1e-9 && el < 30.0;
  gate.line(1, "metric axioms", ok,
            strf("1000 triples  sym %.1e  tri %.1e  d(x,x)=0 %s  %.1fs", sym, tri,
                 id_bad ? "BROKEN" : "exact", el));
}

// ---- 2: norm-metric inequality chain ---------------------------------------

void criterion_2(Gate& gate) {
  auto t0 = clk::now();
  std::mt19937_64 g(9102);
  double slack = -1e300;
  int id_bad = 0;
  auto observe = [&](double lhs, double rhs) { slack = std::max(slack, lhs - rhs); };
  for (int trial = 0; trial < 1000; ++trial) {
    TimeChange lam = gen::rand_timechange(g, 6);
    observe(timechange_devnorm(lam), std::expm1(timechange_lognorm(lam)));

    StepFunction x = gen::rand_step(g, 5);
    StepFunction y = gen::rand_step(g, 5);
    double d0 = d_j1_0(x, y).value;
    observe(d0, sup_norm(subtract(x, y)));
    observe(d_j1(x, y).value, std::expm1(d0));
    if (d_j1(x, StepFunction::zero()).value != sup_norm(x)) ++id_bad;

    NestedPath X = gen::rand_nested(g, 4, 3);
    NestedPath Y = gen::rand_nested(g, 4, 3);
    if (d_D(X, NestedPath::zero()).value != super_norm(X)) ++id_bad;
    double rho = rho_D(X, Y);
    observe(d_D(X, Y).value, rho);
    observe(rho, super_norm(subtract(X, Y)));
    observe(d_D(X, Y).value, std::expm1(d_D0(X, Y).value));
  }
  bool ok = slack <= 1e-9 && id_bad == 0;
  gate.line(2, "norm-metric inequality chain", ok,
            strf("1000 instances  slack %.1e  zero-distance ids %s  %.1fs", slack,
                 id_bad ? "BROKEN" : "exact", secs(t0)));
}

// ---- 3: matching optimum vs oracle ------------------------------------------

void criterion_3(Gate& gate) {
  auto t0 = clk::now();
  std::mt19937_64 g(9103);
  double gap = 0.0;
  int enum_bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    StepFunction x = gen::rand_step(g, 4);
    StepFunction y = gen::rand_step(g, 4);
    auto all = enumerate_matchings(x, y, EnumerationMode::exhaustive, 16);
    for (Objective obj : {Objective::j1, Objective::j1_0}) {
      double dp = (obj == Objective::j1 ? d_j1(x, y) : d_j1_0(x, y)).value;
      double ex = 1e300;
      for (const Matching& m : all) ex = std::min(ex, matching_cost(x, y, m, obj));
      if (dp != ex) ++enum_bad;
      std::uint64_t oseed = 7000 + 2 * static_cast<std::uint64_t>(trial) +
                            (obj == Objective::j1_0 ? 1 : 0);
      gap = std::max(gap, std::fabs(oracle_dist(x, y, obj, 10000, oseed) - dp));
    }
  }
  double el = secs(t0);
  bool ok = enum_bad == 0 && gap <= 1e-3 && el < 120.0;
  gate.line(3, "matching optimum vs oracle", ok,
            strf("200 pairs  enumeration %s  oracle gap %.1e  %.1fs",
                 enum_bad ? "BROKEN" : "exact", gap, el));
}

// ---- 4: moduli relations and oracles ----------------------------------------

void criterion_4(Gate& gate) {
  auto t0 = clk::now();
  std::mt19937_64 g(9104);
  double slack = -1e300, wp_gap = 0.0;
  int ws_bad = 0;
  auto observe = [&](double lhs, double rhs) { slack = std::max(slack, lhs - rhs); };
  for (int trial = 0; trial < 500; ++trial) {
    NestedPath x = gen::rand_nested(g, 5, 3);
    SegDist dist(x);
    std::vector<double> cuts = t_cuts(x);
    for (double delta : kDeltas) {
      double wp = w_D_prime(x, delta);
      double ws = w_D_second(x, delta);
      observe(ws, wp);
      observe(wp, w_D_window(x, 2.0 * delta));
      observe(w_D_window(x, delta), 2.0 * wp + max_jump(x));

      double left = d_j1_0(eval_t(x, delta), eval_t(x, 0.0)).value;
      double right = d_j1_0(left_limit_t(x, 1.0), eval_t(x, 1.0 - delta)).value;
      observe(std::max({ws, left, right}), w_D_prime(x, 2.0 * delta));
      observe(w_D_prime(x, delta / 2.0), 12.0 * (ws + left + right));

      wp_gap = std::max(wp_gap, std::fabs(wp - oracle::wprime_grid(cuts, dist, delta)));
      if (ws != oracle::wsecond_triples(cuts, dist, delta)) ++ws_bad;
    }
  }
  bool ok = slack <= 1e-9 && wp_gap <= 1e-9 && ws_bad == 0;
  gate.line(4, "moduli relations and oracles", ok,
            strf("500 paths x 4 deltas  slack %.1e  grid gap %.1e  triples %s  %.1fs", slack,
                 wp_gap, ws_bad ? "BROKEN" : "exact", secs(t0)));
}

// ---- 5: two-sided increment identity ----------------------------------------

void criterion_5(Gate& gate) {
  auto t0 = clk::now();
  std::mt19937_64 g(9105);
  int bad = 0;
  double diff = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    NestedPath x = gen::rand_nested(g, 5, 3);
    for (double delta : kDeltas) {
      double lm = L_max(x, delta, IncrementMetric::j1);
      double ws = w_D_second(x, delta);
      if (lm != ws) {
        ++bad;
        diff = std::max(diff, std::fabs(lm - ws));
      }
    }
  }
  gate.line(5, "two-sided increment identity", bad == 0,
            strf("500 paths x 4 deltas  %s  %.1fs",
                 bad ? strf("%d mismatches, worst %.1e", bad, diff).c_str() : "exact", secs(t0)));
}

// ---- 6: perturbation comparisons --------------------------------------------

void criterion_6(Gate& gate) {
  auto t0 = clk::now();
  std::mt19937_64 g(9106);
  double slack = -1e300;
  auto observe = [&](double lhs, double rhs) { slack = std::max(slack, lhs - rhs); };
  for (int trial = 0; trial < 500; ++trial) {
    NestedPath x = gen::rand_nested(g, 4, 3);
    NestedPath y = gen::rand_nested(g, 4, 3);

    // additive perturbation of the two-sided modulus
    double bump = 2.0 * super_norm(y);
    NestedPath s = add(x, y);
    for (double delta : kDeltas) observe(w_D_second(s, delta), w_D_second(x, delta) + bump);

    // segmentwise comparison against a reference path
    double gap = 2.0 * super_norm(subtract(x, y));
    for (double t : probe_times(x, y)) {
      const StepFunction& a = eval_t(x, t);
      const StepFunction& b = eval_t(y, t);
      for (double delta : kDeltas) {
        observe(modulus_wsecond(a, delta), modulus_wsecond(b, delta) + gap);
        observe(std::fabs(eval(a, delta) - eval(a, 0.0)),
                std::fabs(eval(b, delta) - eval(b, 0.0)) + gap);
        observe(std::fabs(left_limit(a, 1.0) - eval(a, 1.0 - delta)),
                std::fabs(left_limit(b, 1.0) - eval(b, 1.0 - delta)) + gap);
      }
    }
  }
  gate.line(6, "perturbation comparisons", slack <= 1e-9,
            strf("500 pairs  slack %.1e  %.1fs", slack, secs(t0)));
}

// ---- 7: discretization error bound ------------------------------------------

void criterion_7(Gate& gate) {
  auto t0 = clk::now();
  std::mt19937_64 g(9107);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double slack = -1e300;
  int done = 0;
  while (done < 500) {
    NestedPath x = gen::rand_nested(g, 4, 3);
    std::vector<double> pts{0.0, 1.0};
    int extra = 1 + static_cast<int>(g() % 6);
    for (int k = 0; k < extra; ++k) {
      double p = unif(g);
      if (p > 0.0 && p < 1.0) pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Grid sigma = Grid::make(pts);
    double delta = sigma.mesh() * (1.0 + unif(g));
    if (delta >= 0.999) continue;
    ++done;
    double err = d_D(discretize(x, sigma), x).value;
    slack = std::max(slack, err - std::max(delta, w_D_prime(x, delta)));
  }
  gate.line(7, "discretization error bound", slack <= 1e-9,
            strf("500 cases  slack %.1e  %.1fs", slack, secs(t0)));
}

// ---- 8: discrete running maximum --------------------------------------------

void criterion_8(Gate& gate) {
  auto t0 = clk::now();
  std::mt19937_64 g(9108);
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = trial == 0 ? 64 : 1 + g() % 64;
    std::vector<StepFunction> inc;
    for (std::size_t i = 0; i < n; ++i) inc.push_back(gen::rand_step(g, 2, 1.0));

    std::vector<StepFunction> S{StepFunction::zero()};
    for (const auto& d : inc) S.push_back(add(S.back(), d));
    std::vector<std::vector<double>> D(S.size(), std::vector<double>(S.size(), 0.0));
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = i + 1; j < S.size(); ++j)
        D[i][j] = sup_norm(subtract(S[j], S[i]));
    double want = 0.0;
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = i; j < S.size(); ++j)
        for (std::size_t k = j; k < S.size(); ++k)
          want = std::max(want, std::min(D[i][j], D[j][k]));
    if (discrete_max_M(inc) != want) ++bad;
  }
  gate.line(8, "discrete running maximum", bad == 0,
            strf("100 sequences n<=64  %s  %.1fs", bad ? "BROKEN" : "exact", secs(t0)));
}

// ---- 9: tail index recovery --------------------------------------------------

void criterion_9(Gate& gate) {
  auto t0 = clk::now();
  // certify the replay against full paths first, bit for bit
  int replay_bad = 0;
  for (double alpha : {0.8, 1.5}) {
    for (std::size_t n : {std::size_t{5}, std::size_t{16}}) {
      SimConfig cfg;
      cfg.alpha = alpha;
      cfg.n = n;
      cfg.m = 6;
      cfg.seed = 424242;
      PathEnsemble ens = make_ensemble(cfg);
      for (std::uint64_t r = 0; r < cfg.m; ++r)
        if (marginal_at_one(cfg, r) != eval_ts(ens.paths[r], 1.0, 1.0)) ++replay_bad;
    }
  }

  double h[2] = {0.0, 0.0};
  const double targets[2] = {0.8, 1.5};
  for (int a = 0; a < 2; ++a) {
    SimConfig cfg;
    cfg.alpha = targets[a];
    cfg.n = 2000;
    cfg.m = 5000;
    cfg.seed = 424242;
    std::vector<double> sample;
    sample.reserve(cfg.m);
    for (std::uint64_t r = 0; r < cfg.m; ++r)
      sample.push_back(std::fabs(marginal_at_one(cfg, r)));
    h[a] = hill_estimate(sample, 250);
  }
  double el = secs(t0);
  bool ok = replay_bad == 0 && std::fabs(h[0] - 0.8) <= 0.2 && std::fabs(h[1] - 1.5) <= 0.2 &&
            el < 180.0;
  gate.line(9, "tail index recovery", ok,
            strf("replay %s  hill %.3f / %.3f (targets 0.8 / 1.5, k=250, m=5000)  %.1fs",
                 replay_bad ? "BROKEN" : "exact", h[0], h[1], el));
}

// ---- 10: marginal stabilization and tightness trend --------------------------

void criterion_10(Gate& gate) {
  auto t0 = clk::now();
  std::vector<double> s500, s2000;
  for (std::size_t n : {std::size_t{500}, std::size_t{2000}}) {
    SimConfig cfg;
    cfg.alpha = 1.5;
    cfg.n = n;
    cfg.m = 2000;
    cfg.seed = 424242;
    auto& dst = n == 500 ? s500 : s2000;
    dst.reserve(cfg.m);
    for (std::uint64_t r = 0; r < cfg.m; ++r) dst.push_back(marginal_at_one(cfg, r));
  }
  double ks = ks_two_sample(s500, s2000);

  // exceedance frequency of the sparse modulus must not grow as the window
  // shrinks, for every ensemble in the report
  std::vector<PathEnsemble> ensembles;
  const double alphas[3] = {0.8, 1.5, 1.9};
  const std::size_t sizes[3] = {8, 12, 16};
  for (int i = 0; i < 3; ++i) {
    SimConfig cfg;
    cfg.alpha = alphas[i];
    cfg.n = sizes[i];
    cfg.m = 32;
    cfg.seed = 424242 + static_cast<std::uint64_t>(i);
    ensembles.push_back(make_ensemble(cfg));
  }
  const std::vector<double> deltas{0.2, 0.1, 0.05, 0.02};  // shrinking windows
  TightnessReport rep = tightness_report(ensembles, {1.0}, deltas, {0.5}, {1.0});
  bool monotone = true;
  int rows_seen = 0;
  for (std::size_t n : sizes) {
    double prev = 1.0;
    for (double delta : deltas) {
      for (const TightnessRow& row : rep.rows) {
        if (row.n != n || row.condition != "nested_wprime_geq_eps") continue;
        if (!row.delta || *row.delta != delta) continue;
        ++rows_seen;
        if (row.frequency > prev) monotone = false;
        prev = row.frequency;
      }
    }
  }
  double el = secs(t0);
  bool ok = ks < 0.1 && monotone && rows_seen == 12;
  gate.line(10, "marginal stabilization + trend", ok,
            strf("ks %.3f (n 500 vs 2000)  exceedance %s over 3 ensembles  %.1fs", ks,
                 monotone ? "monotone" : "NOT MONOTONE", el));
}

}  // namespace

int main() {
  Gate gate;
  struct Entry {
    int idx;
    const char* name;
    void (*fn)(Gate&);
  };
  const Entry entries[] = {
      {1, "metric axioms", criterion_1},
      {2, "norm-metric inequality chain", criterion_2},
      {3, "matching optimum vs oracle", criterion_3},
      {4, "moduli relations and oracles", criterion_4},
      {5, "two-sided increment identity", criterion_5},
      {6, "perturbation comparisons", criterion_6},
      {7, "discretization error bound", criterion_7},
      {8, "discrete running maximum", criterion_8},
      {9, "tail index recovery", criterion_9},
      {10, "marginal stabilization + trend", criterion_10},
  };
  for (const Entry& e : entries) {
    try {
      e.fn(gate);
    } catch (const std::exception& ex) {
      gate.line(e.idx, e.name, false, strf("threw: %s", ex.what()));
    }
  }
  std::printf("acceptance: %d/10 passed\n", 10 - gate.failed);
  return gate.failed == 0 ? 0 : 1;
}
