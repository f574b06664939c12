#include "skorohod/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skorohod/json_io.hpp"
#include "skorohod/metric.hpp"
#include "skorohod/moduli.hpp"
#include "skorohod/nested_metric.hpp"

namespace skorohod {

namespace {

std::vector<double> t_cuts(const NestedPath& x) {
  std::vector<double> cuts;
  cuts.reserve(x.jump_count() + 2);
  cuts.push_back(0.0);
  for (double b : x.t_breakpoints()) cuts.push_back(b);
  cuts.push_back(1.0);
  return cuts;
}

// Lazy pairwise d_j1_0 among one path's segments.
struct SelfDist {
  const std::vector<StepFunction>& s;
  mutable std::vector<std::vector<double>> memo;

  explicit SelfDist(const std::vector<StepFunction>& seg)
      : s(seg), memo(seg.size(), std::vector<double>(seg.size(), -1.0)) {}

  double operator()(std::size_t i, std::size_t j) const {
    double& m = memo[i][j];
    if (m < 0.0) m = d_j1_0(s[i], s[j]).value;
    return m;
  }
};

void check_grid(const std::vector<double>& delta_grid) {
  if (delta_grid.empty()) throw std::invalid_argument("diagnostics: empty delta grid");
  for (double d : delta_grid)
    if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("diagnostics: delta outside (0,1)");
}

// Everything the reports need from one path, per delta. The t-level window
// table and the pairwise-distance memo are built once and shared across
// the whole delta grid.
struct PathProfile {
  double sn = 0.0;
  std::vector<double> inner_wprime, nested_wprime;
  std::vector<double> inner_wsecond, inner_left, inner_right;
  std::vector<double> nested_wsecond, nested_left, nested_right;
};

PathProfile profile_path(const NestedPath& x, const std::vector<double>& dg, bool wprime,
                         bool wsecond) {
  PathProfile pr;
  pr.sn = super_norm(x);
  auto cuts = t_cuts(x);
  SelfDist dist(x.segments());
  auto distfn = [&dist](std::size_t p, std::size_t q) { return dist(p, q); };
  std::vector<std::vector<double>> W;
  if (wprime) W = moduli_engine::window_table(x.segments().size(), distfn);

  for (double d : dg) {
    if (wprime) {
      double iw = 0.0;
      for (const auto& seg : x.segments()) iw = std::max(iw, modulus_wprime(seg, d));
      pr.inner_wprime.push_back(iw);
      pr.nested_wprime.push_back(moduli_engine::sparse_infimum(cuts, W, d));
    }
    if (wsecond) {
      double iw = 0.0, il = 0.0, ir = 0.0;
      for (const auto& seg : x.segments()) {
        iw = std::max(iw, modulus_wsecond(seg, d));
        il = std::max(il, std::fabs(eval(seg, d) - eval(seg, 0.0)));
        ir = std::max(ir, std::fabs(left_limit(seg, 1.0) - eval(seg, 1.0 - d)));
      }
      pr.inner_wsecond.push_back(iw);
      pr.inner_left.push_back(il);
      pr.inner_right.push_back(ir);
      pr.nested_wsecond.push_back(moduli_engine::min_increment_window(cuts, distfn, d));
      pr.nested_left.push_back(d_j1_0(eval_t(x, d), eval_t(x, 0.0)).value);
      pr.nested_right.push_back(d_j1_0(left_limit_t(x, 1.0), eval_t(x, 1.0 - d)).value);
    }
  }
  return pr;
}

}  // namespace

CompactnessReport compactness_profile(const std::vector<NestedPath>& paths,
                                      const std::vector<double>& delta_grid,
                                      ProfileVariant variant) {
  if (paths.empty()) throw std::invalid_argument("compactness_profile: empty path set");
  check_grid(delta_grid);

  CompactnessReport rep;
  rep.variant = variant;
  rep.delta_grid = delta_grid;
  bool wp = variant == ProfileVariant::wprime;
  bool ws = variant == ProfileVariant::wsecond;
  std::size_t D = delta_grid.size();
  auto maximize = [D](std::vector<double>& acc, const std::vector<double>& v) {
    if (acc.empty()) acc.assign(D, 0.0);
    for (std::size_t i = 0; i < D; ++i) acc[i] = std::max(acc[i], v[i]);
  };
  for (const auto& x : paths) {
    PathProfile pr = profile_path(x, delta_grid, wp, ws);
    rep.sup_super_norm = std::max(rep.sup_super_norm, pr.sn);
    if (wp) {
      maximize(rep.inner_wprime, pr.inner_wprime);
      maximize(rep.nested_wprime, pr.nested_wprime);
    }
    if (ws) {
      maximize(rep.inner_wsecond, pr.inner_wsecond);
      maximize(rep.inner_left_increment, pr.inner_left);
      maximize(rep.inner_right_increment, pr.inner_right);
      maximize(rep.nested_wsecond, pr.nested_wsecond);
      maximize(rep.nested_left_increment, pr.nested_left);
      maximize(rep.nested_right_increment, pr.nested_right);
    }
  }
  return rep;
}

TightnessReport tightness_report(const std::vector<PathEnsemble>& ensembles,
                                 const std::vector<double>& a_grid,
                                 const std::vector<double>& delta_grid,
                                 const std::vector<double>& epsilon_grid,
                                 const std::vector<double>& t_subset) {
  if (ensembles.empty()) throw std::invalid_argument("tightness_report: no ensembles");
  for (const auto& e : ensembles)
    if (e.paths.empty()) throw std::invalid_argument("tightness_report: empty ensemble");
  if (a_grid.empty() || epsilon_grid.empty())
    throw std::invalid_argument("tightness_report: empty grid");
  check_grid(delta_grid);
  if (std::find(t_subset.begin(), t_subset.end(), 1.0) == t_subset.end())
    throw std::invalid_argument("tightness_report: t_subset must contain 1");
  for (double t : t_subset)
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("tightness_report: t outside [0,1]");

  TightnessReport rep;
  rep.a_grid = a_grid;
  rep.delta_grid = delta_grid;
  rep.epsilon_grid = epsilon_grid;
  rep.t_subset = t_subset;

  for (const auto& ens : ensembles) {
    std::size_t total = ens.paths.size();
    std::vector<PathProfile> prof;
    prof.reserve(total);
    for (const auto& x : ens.paths) prof.push_back(profile_path(x, delta_grid, true, true));

    auto push = [&](std::optional<double> a, std::optional<double> d, std::optional<double> eps,
                    std::string cond, std::size_t count) {
      TightnessRow row;
      row.n = ens.n;
      row.a = a;
      row.delta = d;
      row.epsilon = eps;
      row.condition = std::move(cond);
      row.count = count;
      row.total = total;
      row.frequency = static_cast<double>(count) / static_cast<double>(total);
      rep.rows.push_back(std::move(row));
    };
    auto count_ge = [&](const std::vector<double>& stat, double thr) {
      std::size_t c = 0;
      for (double v : stat)
        if (v >= thr) ++c;
      return c;
    };
    auto stat_at = [&](std::vector<double> PathProfile::* member, std::size_t di) {
      std::vector<double> v;
      v.reserve(total);
      for (const auto& p : prof) v.push_back((p.*member)[di]);
      return v;
    };

    {
      std::vector<double> sn;
      sn.reserve(total);
      for (const auto& p : prof) sn.push_back(p.sn);
      for (double a : a_grid) push(a, {}, {}, "super_norm_geq_a", count_ge(sn, a));
    }
    auto grid_block = [&](std::vector<double> PathProfile::* member, const char* cond) {
      for (std::size_t di = 0; di < delta_grid.size(); ++di) {
        auto v = stat_at(member, di);
        for (double eps : epsilon_grid)
          push({}, delta_grid[di], eps, cond, count_ge(v, eps));
      }
    };
    grid_block(&PathProfile::inner_wprime, "inner_wprime_geq_eps");
    grid_block(&PathProfile::nested_wprime, "nested_wprime_geq_eps");
    for (double t : t_subset) {
      std::vector<double> nt;
      nt.reserve(total);
      for (const auto& x : ens.paths) nt.push_back(sup_norm(eval_t(x, t)));
      std::string cond = "norm_at_t_geq_a;t=" + io::format_double(t);
      for (double a : a_grid) push(a, {}, {}, cond, count_ge(nt, a));
    }
    grid_block(&PathProfile::inner_wsecond, "inner_wsecond_geq_eps");
    grid_block(&PathProfile::inner_left, "inner_left_increment_geq_eps");
    grid_block(&PathProfile::inner_right, "inner_right_increment_geq_eps");
    grid_block(&PathProfile::nested_wsecond, "nested_wsecond_geq_eps");
    grid_block(&PathProfile::nested_left, "nested_left_increment_geq_eps");
    grid_block(&PathProfile::nested_right, "nested_right_increment_geq_eps");
  }
  return rep;
}

double m_rst(const NestedPath& x, double r, double s, double t, IncrementMetric metric) {
  if (!(0.0 <= r && r <= s && s <= t && t <= 1.0))
    throw std::domain_error("m_rst: need 0 <= r <= s <= t <= 1");
  const StepFunction& xr = eval_t(x, r);
  const StepFunction& xs = eval_t(x, s);
  const StepFunction& xt = eval_t(x, t);
  if (metric == IncrementMetric::j1)
    return std::min(d_j1_0(xr, xs).value, d_j1_0(xs, xt).value);
  return std::min(sup_norm(subtract(xr, xs)), sup_norm(subtract(xs, xt)));
}

double L_max(const NestedPath& x, double delta, IncrementMetric metric) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("L_max: delta outside (0,1]");
  const auto& s = x.segments();
  if (metric == IncrementMetric::j1) {
    SelfDist dist(s);
    return moduli_engine::min_increment_window(
        t_cuts(x), [&dist](std::size_t p, std::size_t q) { return dist(p, q); }, delta);
  }
  return moduli_engine::min_increment_window(
      t_cuts(x), [&s](std::size_t p, std::size_t q) { return sup_norm(subtract(s[p], s[q])); },
      delta);
}

double discrete_max_M(const std::vector<StepFunction>& increments) {
  std::size_t n = increments.size();
  if (n > 512) throw std::length_error("discrete_max_M: more than 512 increments");
  std::vector<StepFunction> S;
  S.reserve(n + 1);
  S.push_back(StepFunction::zero());
  for (const auto& inc : increments) S.push_back(add(S.back(), inc));
  std::vector<std::vector<double>> N(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) N[i][j] = sup_norm(subtract(S[j], S[i]));
  double best = 0.0;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      for (std::size_t k = j + 1; k <= n; ++k)
        best = std::max(best, std::min(N[i][j], N[j][k]));
  return best;
}

}  // namespace skorohod
