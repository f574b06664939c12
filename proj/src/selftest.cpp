#include "skorohod/selftest.hpp"

#include <cmath>
#include <random>

#include "skorohod/diagnostics.hpp"
#include "skorohod/json_io.hpp"
#include "skorohod/metric.hpp"
#include "skorohod/moduli.hpp"
#include "skorohod/nested_metric.hpp"
#include "skorohod/simulate.hpp"

namespace skorohod {

namespace {

constexpr double kTol = 1e-9;

struct Ctx {
  SuiteResult r;

  explicit Ctx(std::string name) { r.name = std::move(name); }

  void check(bool ok, const std::string& msg) {
    ++r.total;
    if (ok) {
      ++r.passed;
    } else if (r.failures.size() < 8) {
      r.failures.push_back(msg);
    }
  }
};

// ---- fixed-seed generators ----------------------------------------------

StepFunction rand_step(std::mt19937_64& g, int max_jumps) {
  std::uniform_int_distribution<int> nj(0, max_jumps);
  std::uniform_real_distribution<double> pos(0.0, 1.0), val(-2.0, 2.0);
  int k = nj(g);
  std::vector<double> b;
  for (int i = 0; i < k; ++i) {
    double p = pos(g);
    if (p > 0.0) b.push_back(p);
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::vector<double> v;
  for (std::size_t i = 0; i < b.size() + 1; ++i) v.push_back(val(g));
  return make_step(b, v);
}

NestedPath rand_nested(std::mt19937_64& g, int max_switch, int max_jumps) {
  std::uniform_int_distribution<int> ns(0, max_switch);
  std::uniform_real_distribution<double> pos(0.0, 1.0);
  int k = ns(g);
  std::vector<double> tb;
  for (int i = 0; i < k; ++i) {
    double p = pos(g);
    if (p > 0.0) tb.push_back(p);
  }
  std::sort(tb.begin(), tb.end());
  tb.erase(std::unique(tb.begin(), tb.end()), tb.end());
  std::vector<StepFunction> segs;
  for (std::size_t i = 0; i < tb.size() + 1; ++i) segs.push_back(rand_step(g, max_jumps));
  return NestedPath::make(tb, segs);
}

TimeChange rand_timechange(std::mt19937_64& g, int max_knots) {
  std::uniform_int_distribution<int> nk(0, max_knots);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int k = nk(g);
  std::vector<double> ss, ls;
  for (int i = 0; i < k; ++i) {
    double s = u(g), l = u(g);
    if (s > 0.0 && s < 1.0 && l > 0.0 && l < 1.0) {
      ss.push_back(s);
      ls.push_back(l);
    }
  }
  std::sort(ss.begin(), ss.end());
  std::sort(ls.begin(), ls.end());
  ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
  ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
  std::size_t m = std::min(ss.size(), ls.size());
  std::vector<std::pair<double, double>> knots;
  knots.emplace_back(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) knots.emplace_back(ss[i], ls[i]);
  knots.emplace_back(1.0, 1.0);
  return TimeChange::make(knots);
}

// ---- suites ---------------------------------------------------------------

SuiteResult suite_json_roundtrip(const std::vector<io::json>& fixtures) {
  Ctx c("json_roundtrip");
  auto rt = [&](const io::json& before, const io::json& after, const char* what) {
    c.check(before == after, std::string("roundtrip changed ") + what);
  };
  // fixtures: step_a, step_b, timechange, nested_a, nested_b, simconfig, ensemble
  rt(fixtures[0], io::to_json(io::step_from_json(fixtures[0])), "step_a");
  rt(fixtures[1], io::to_json(io::step_from_json(fixtures[1])), "step_b");
  rt(fixtures[2], io::to_json(io::timechange_from_json(fixtures[2])), "timechange");
  rt(fixtures[3], io::to_json(io::nested_from_json(fixtures[3])), "nested_a");
  rt(fixtures[4], io::to_json(io::nested_from_json(fixtures[4])), "nested_b");
  rt(fixtures[5], io::to_json(io::simconfig_from_json(fixtures[5])), "simconfig");
  rt(fixtures[6], io::to_json(io::ensemble_from_json(fixtures[6])), "ensemble");

  auto x = io::nested_from_json(fixtures[3]);
  auto y = io::nested_from_json(fixtures[4]);
  auto res = d_D0(x, y);
  auto jr = io::to_json(res);
  rt(jr, io::to_json(io::distance_from_json(jr)), "distance result");

  std::vector<double> dg{0.05, 0.1, 0.2};
  for (auto variant : {ProfileVariant::wprime, ProfileVariant::wsecond}) {
    auto rep = compactness_profile({x, y}, dg, variant);
    auto j = io::to_json(rep);
    rt(j, io::to_json(io::compactness_from_json(j)), "compactness report");
    c.check(io::dump(j) == io::dump(io::to_json(io::compactness_from_json(j))),
            "compactness dump not byte-stable");
  }
  PathEnsemble ens = io::ensemble_from_json(fixtures[6]);
  auto rep = tightness_report({ens}, {0.5, 1.0}, dg, {0.25, 0.5}, {0.5, 1.0});
  auto j = io::to_json(rep);
  rt(j, io::to_json(io::tightness_from_json(j)), "tightness report");
  return c.r;
}

SuiteResult suite_right_continuity(const std::vector<StepFunction>& pool) {
  Ctx c("right_continuity");
  for (const auto& x : pool) {
    const auto& b = x.breakpoints();
    const auto& v = x.values();
    c.check(eval(x, 0.0) == v.front(), "eval(0) is not the first value");
    double want_ll1 = b.empty() || b.back() < 1.0 ? v.back() : v[v.size() - 2];
    c.check(left_limit(x, 1.0) == want_ll1, "left limit at 1 inconsistent");
    for (std::size_t i = 0; i < b.size(); ++i) {
      c.check(eval(x, b[i]) == v[i + 1], "eval at breakpoint is not the post-jump value");
      c.check(left_limit(x, b[i]) == v[i], "left limit at breakpoint is not the pre-jump value");
    }
    // right continuity just past each breakpoint (when a gap exists)
    for (std::size_t i = 0; i < b.size(); ++i) {
      double next = i + 1 < b.size() ? b[i + 1] : 1.0;
      double s = b[i] + (next - b[i]) / 3.0;
      if (s > b[i] && s < next) c.check(eval(x, s) == v[i + 1], "not constant after jump");
    }
  }
  return c.r;
}

SuiteResult suite_timechange_inequality(std::uint64_t seed) {
  Ctx c("timechange_inequality");
  std::mt19937_64 g(seed);
  for (int trial = 0; trial < 200; ++trial) {
    TimeChange lam = rand_timechange(g, 5);
    double dev = timechange_devnorm(lam);
    double logn = timechange_lognorm(lam);
    c.check(dev <= std::expm1(logn) + kTol, "devnorm exceeds exp(lognorm)-1");
    for (const auto& [s, l] : lam.knots()) {
      c.check(lam(s) == l, "timechange not exact at knot");
      c.check(lam.inverse(l) == s, "inverse not exact at knot");
    }
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 5; ++i) {
      double s = u(g);
      c.check(std::fabs(lam.inverse(lam(s)) - s) <= 1e-12, "inverse o forward drifts");
    }
  }
  return c.r;
}

SuiteResult suite_scalar_moduli(std::uint64_t seed) {
  Ctx c("scalar_moduli_relations");
  std::mt19937_64 g(seed);
  std::vector<double> dg{0.02, 0.05, 0.1, 0.2, 0.4};
  for (int trial = 0; trial < 120; ++trial) {
    StepFunction x = rand_step(g, 6);
    double prev = 0.0;
    for (double d : dg) {
      double wp = modulus_wprime(x, d);
      double ws = modulus_wsecond(x, d);
      c.check(ws <= wp + kTol, "wsecond exceeds wprime");
      c.check(wp + kTol >= prev, "wprime not monotone in delta");
      prev = wp;
      SparsePartition part = modulus_wprime_witness(x, d);
      c.check(part.value == wp, "witness value mismatch");
      for (std::size_t i = 0; i + 1 < part.cuts.size(); ++i)
        c.check(part.cuts[i + 1] - part.cuts[i] > d, "witness partition not delta-sparse");
    }
    // jump gap law: below the smallest gap between jump times w' vanishes
    const auto& b = x.breakpoints();
    if (b.size() >= 1) {
      double gap = b.front();
      for (std::size_t i = 0; i + 1 < b.size(); ++i) gap = std::min(gap, b[i + 1] - b[i]);
      gap = std::min(gap, 1.0 - b.back());
      if (gap > 1e-6) {
        c.check(modulus_wprime(x, gap * 0.5) == 0.0, "wprime nonzero below the minimal gap");
        if (x.jump_count() > 0 && gap < 1.0)
          c.check(modulus_wsecond(x, gap * 0.5) == 0.0, "wsecond nonzero below the minimal gap");
      }
    }
  }
  return c.r;
}

SuiteResult suite_metric_axioms(std::uint64_t seed) {
  Ctx c("metric_axioms");
  std::mt19937_64 g(seed);
  for (int trial = 0; trial < 60; ++trial) {
    StepFunction x = rand_step(g, 4), y = rand_step(g, 4), z = rand_step(g, 4);
    for (auto obj : {Objective::j1, Objective::j1_0}) {
      auto dist = [obj](const StepFunction& a, const StepFunction& b) {
        return obj == Objective::j1 ? d_j1(a, b).value : d_j1_0(a, b).value;
      };
      c.check(dist(x, x) == 0.0, "d(x,x) != 0");
      double dxy = dist(x, y), dyx = dist(y, x);
      c.check(std::fabs(dxy - dyx) <= kTol, "asymmetric distance");
      double dxz = dist(x, z), dzy = dist(z, y);
      c.check(dxy <= dxz + dzy + kTol, "triangle inequality violated");
      if (!(x == y)) c.check(dxy > 0.0, "zero distance for distinct functions");
    }
  }
  return c.r;
}

SuiteResult suite_metric_bounds(std::uint64_t seed) {
  Ctx c("metric_bounds");
  std::mt19937_64 g(seed);
  for (int trial = 0; trial < 120; ++trial) {
    StepFunction x = rand_step(g, 5), y = rand_step(g, 5);
    double d = d_j1(x, y).value;
    double d0 = d_j1_0(x, y).value;
    double un = sup_norm(subtract(x, y));
    c.check(d <= un, "d exceeds the uniform distance");
    c.check(d0 <= un + kTol, "d0 exceeds the uniform distance");
    c.check(d <= std::expm1(d0) + kTol, "d exceeds exp(d0)-1");
    c.check(d_j1(x, StepFunction::zero()).value == sup_norm(x), "d(x,0) is not the sup norm");
    c.check(d_j1_0(x, StepFunction::zero()).value == sup_norm(x), "d0(x,0) is not the sup norm");
    // the witness reproduces the reported value
    auto res = d_j1_0(x, y);
    c.check(matching_cost(x, y, res.witness, Objective::j1_0) == res.value,
            "witness cost mismatch");
  }
  return c.r;
}

SuiteResult suite_nested_chain(std::uint64_t seed) {
  Ctx c("nested_chain");
  std::mt19937_64 g(seed);
  for (int trial = 0; trial < 40; ++trial) {
    NestedPath x = rand_nested(g, 3, 3), y = rand_nested(g, 3, 3);
    double dd = d_D(x, y).value;
    double dd0 = d_D0(x, y).value;
    double rho = rho_D(x, y);
    c.check(dd <= rho, "d_D exceeds rho_D");
    c.check(dd <= std::expm1(dd0) + kTol, "d_D exceeds exp(d_D0)-1");
    double sn = 0.0;
    {
      NestedPath diff = subtract(x, y);
      sn = super_norm(diff);
    }
    c.check(rho <= sn, "rho_D exceeds the uniform nested distance");
    NestedPath zero = NestedPath::zero();
    c.check(d_D(x, zero).value == super_norm(x), "d_D(x,0) is not the super norm");
    c.check(rho_D(x, zero) == super_norm(x), "rho_D(x,0) is not the super norm");
  }
  return c.r;
}

SuiteResult suite_nested_moduli(std::uint64_t seed) {
  Ctx c("nested_moduli");
  std::mt19937_64 g(seed);
  std::vector<double> dg{0.05, 0.1, 0.2};
  for (int trial = 0; trial < 25; ++trial) {
    NestedPath x = rand_nested(g, 4, 3);
    double prev = 0.0;
    for (double d : dg) {
      double wp = w_D_prime(x, d);
      double ws = w_D_second(x, d);
      c.check(ws <= wp + kTol, "w_D_second exceeds w_D_prime");
      c.check(wp + kTol >= prev, "w_D_prime not monotone");
      prev = wp;
      double lft = d_j1_0(eval_t(x, d), eval_t(x, 0.0)).value;
      double rgt = d_j1_0(left_limit_t(x, 1.0), eval_t(x, 1.0 - d)).value;
      double w2d = w_D_prime(x, std::min(2.0 * d, 0.999999));
      c.check(std::max(ws, std::max(lft, rgt)) <= w2d + kTol,
              "wsecond/boundary trio exceeds w_D_prime(2 delta)");
      c.check(L_max(x, d, IncrementMetric::j1) == ws, "L_max differs from w_D_second");
    }
  }
  return c.r;
}

SuiteResult suite_window_identity(std::uint64_t seed) {
  Ctx c("window_identity");
  std::mt19937_64 g(seed);
  for (int trial = 0; trial < 120; ++trial) {
    StepFunction x = rand_step(g, 6);
    std::uniform_real_distribution<double> wd(0.01, 0.8);
    double width = wd(g);
    // brute-force the same sup: pairs of pieces whose open separation fits
    std::vector<double> cuts{0.0};
    for (double b : x.breakpoints()) cuts.push_back(b);
    cuts.push_back(1.0);
    const auto& v = x.values();
    double want = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p)
      for (std::size_t q = p; q + 1 < cuts.size(); ++q)
        if (p == q || cuts[q] - cuts[p + 1] < width)
          want = std::max(want, std::fabs(v[p] - v[q]));
    c.check(oscillation_window(x, width) == want, "window oscillation mismatch");
  }
  return c.r;
}

SuiteResult suite_discretization(std::uint64_t seed) {
  Ctx c("discretization_bound");
  std::mt19937_64 g(seed);
  for (int trial = 0; trial < 30; ++trial) {
    NestedPath x = rand_nested(g, 4, 3);
    std::uniform_int_distribution<int> np(3, 9);
    int k = np(g);
    std::vector<double> pts{0.0};
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < k; ++i) {
      double p = u(g);
      if (p > 0.0 && p < 1.0) pts.push_back(p);
    }
    pts.push_back(1.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Grid grid = Grid::make(pts);
    double mesh = grid.mesh();
    if (!(mesh < 1.0)) continue;
    NestedPath ax = discretize(x, grid);
    double d = d_D(ax, x).value;
    double bound = std::max(mesh, w_D_prime(x, mesh));
    c.check(d <= bound + kTol, "discretization error above delta v w_D_prime");
  }
  return c.r;
}

SuiteResult suite_max_m(std::uint64_t seed) {
  Ctx c("max_m_bruteforce");
  std::mt19937_64 g(seed);
  for (int trial = 0; trial < 40; ++trial) {
    std::uniform_int_distribution<int> nn(1, 10);
    int n = nn(g);
    std::vector<StepFunction> inc;
    for (int i = 0; i < n; ++i) inc.push_back(rand_step(g, 2));
    // direct evaluation straight off the definition
    std::vector<StepFunction> S{StepFunction::zero()};
    for (const auto& e : inc) S.push_back(add(S.back(), e));
    double want = 0.0;
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = i + 1; j < S.size(); ++j)
        for (std::size_t k = j + 1; k < S.size(); ++k)
          want = std::max(want, std::min(sup_norm(subtract(S[j], S[i])),
                                         sup_norm(subtract(S[k], S[j]))));
    c.check(discrete_max_M(inc) == want, "discrete_max_M differs from the triple scan");
  }
  return c.r;
}

SuiteResult suite_simulator(const io::json& simconfig_json, const io::json& ensemble_json) {
  Ctx c("simulator_determinism");
  SimConfig cfg = io::simconfig_from_json(simconfig_json);
  PathEnsemble fresh = make_ensemble(cfg);
  PathEnsemble pinned = io::ensemble_from_json(ensemble_json);
  c.check(fresh.paths.size() == pinned.paths.size(), "ensemble size drifted");
  for (std::size_t i = 0; i < std::min(fresh.paths.size(), pinned.paths.size()); ++i)
    c.check(fresh.paths[i] == pinned.paths[i], "replicate differs from the pinned corpus");
  PathEnsemble again = make_ensemble(cfg);
  for (std::size_t i = 0; i < fresh.paths.size(); ++i)
    c.check(fresh.paths[i] == again.paths[i], "rerun not bit-identical");
  // replicates are seeded independently of generation order
  for (std::uint64_t r = 0; r < cfg.m; ++r) {
    Stream s = Stream::substream(cfg.seed, r);
    c.check(partial_sum_path(cfg, s) == fresh.paths[r], "substream not order-independent");
  }
  // marginal self-consistency: the endpoint equals the scaled running sum
  double a_n = std::pow(static_cast<double>(cfg.n), 1.0 / cfg.alpha);
  for (std::uint64_t r = 0; r < cfg.m; ++r) {
    Stream s = Stream::substream(cfg.seed, r);
    double acc = 0.0;
    for (std::uint64_t i = 0; i < cfg.n; ++i) {
      double xi = std::pow(s.uniform01(), -1.0 / cfg.alpha);
      double sign = s.uniform01() < cfg.sign_balance ? 1.0 : -1.0;
      s.uniform01();  // position draw
      acc += sign * xi;
    }
    c.check(eval_ts(fresh.paths[r], 1.0, 1.0) == acc * (1.0 / a_n),
            "endpoint differs from the replayed running sum");
  }
  return c.r;
}

}  // namespace

std::vector<SuiteResult> run_verify_suites(const std::string& corpus_dir) {
  auto load = [&corpus_dir](const char* name) {
    return io::load_json_file(corpus_dir + "/" + name);
  };
  std::vector<io::json> fx;
  fx.push_back(load("step_a.json"));
  fx.push_back(load("step_b.json"));
  fx.push_back(load("timechange.json"));
  fx.push_back(load("nested_a.json"));
  fx.push_back(load("nested_b.json"));
  fx.push_back(load("simconfig_small.json"));
  fx.push_back(load("ensemble_small.json"));

  std::vector<StepFunction> pool{io::step_from_json(fx[0]), io::step_from_json(fx[1])};
  {
    std::mt19937_64 g(2026);
    for (int i = 0; i < 100; ++i) pool.push_back(rand_step(g, 6));
  }

  std::vector<SuiteResult> out;
  out.push_back(suite_json_roundtrip(fx));
  out.push_back(suite_right_continuity(pool));
  out.push_back(suite_timechange_inequality(11));
  out.push_back(suite_scalar_moduli(12));
  out.push_back(suite_metric_axioms(13));
  out.push_back(suite_metric_bounds(14));
  out.push_back(suite_nested_chain(15));
  out.push_back(suite_nested_moduli(16));
  out.push_back(suite_window_identity(17));
  out.push_back(suite_discretization(18));
  out.push_back(suite_max_m(19));
  out.push_back(suite_simulator(fx[5], fx[6]));
  return out;
}

}  // namespace skorohod
