#include "skorohod/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace skorohod {

namespace moduli_engine {

std::vector<std::vector<double>> window_table(std::size_t pieces, const DistFn& dist) {
  std::vector<std::vector<double>> W(pieces, std::vector<double>(pieces, 0.0));
  for (std::size_t len = 1; len < pieces; ++len)
    for (std::size_t p = 0; p + len < pieces; ++p) {
      std::size_t q = p + len;
      W[p][q] = std::max({W[p][q - 1], W[p + 1][q], dist(p, q)});
    }
  return W;
}

std::pair<std::ptrdiff_t, std::ptrdiff_t> piece_range(const std::vector<double>& cuts,
                                                      double lo, double hi, bool half_open) {
  std::ptrdiff_t P = static_cast<std::ptrdiff_t>(cuts.size()) - 1;
  // Smallest p whose span reaches past lo. The last piece is closed at 1,
  // so it always qualifies.
  std::ptrdiff_t first = std::upper_bound(cuts.begin() + 1, cuts.end() - 1, lo) -
                         (cuts.begin() + 1);
  if (first > P - 1) first = P - 1;
  // Largest p starting before (or at, for closed) hi.
  std::ptrdiff_t last;
  if (half_open)
    last = std::lower_bound(cuts.begin(), cuts.begin() + P, hi) - cuts.begin() - 1;
  else
    last = std::upper_bound(cuts.begin(), cuts.begin() + P, hi) - cuts.begin() - 1;
  return {first, last};
}

namespace {

// Pieces whose positions lie in [0,1): everything except a zero-width
// point piece pinned at 1.
std::size_t visible_pieces(const std::vector<double>& cuts) {
  std::size_t P = cuts.size() - 1;
  return (P >= 2 && cuts[P - 1] == 1.0) ? P - 1 : P;
}

struct Reach {
  // Reachable boundary positions per right-end cut index rc: the interval
  // (best_l[rc], cuts[rc]]; +inf marks unreached. pred_* record how the
  // last improvement was made, for witness reconstruction.
  std::vector<double> best_l;
  std::vector<std::ptrdiff_t> pred_state;
  std::vector<std::ptrdiff_t> pred_piece;
};

// Fixpoint of the boundary-propagation relation at threshold c. A state
// (l, cuts[rc]] holds every position realizable as the current partition
// boundary; from a boundary in piece p the next one can land anywhere in
// (max(l, cuts[p]) + delta, cuts[m[p]+1]] where m[p] caps the pieces a
// window of oscillation <= c may cover.
Reach propagate(const std::vector<double>& cuts, const std::vector<std::vector<double>>& W,
                double delta, double c, std::size_t K_vis) {
  std::vector<std::size_t> m(K_vis);
  {
    std::size_t q = 0;
    for (std::size_t p = 0; p < K_vis; ++p) {
      if (q < p) q = p;
      while (q + 1 < K_vis && W[p][q + 1] <= c) ++q;
      m[p] = q;
    }
  }
  const double unreached = std::numeric_limits<double>::infinity();
  Reach r;
  r.best_l.assign(K_vis + 1, unreached);
  r.pred_state.assign(K_vis + 1, -1);
  r.pred_piece.assign(K_vis + 1, -1);
  r.best_l[0] = -1.0;
  std::vector<std::size_t> work{0};
  std::vector<char> queued(K_vis + 1, 0);
  queued[0] = 1;
  std::size_t guard = 0;
  while (!work.empty()) {
    if (++guard > 20'000'000) throw std::logic_error("sparse_infimum: propagation runaway");
    std::size_t rc = work.back();
    work.pop_back();
    queued[rc] = 0;
    double l = r.best_l[rc];
    std::size_t p_first = 0;
    {
      auto ub = std::upper_bound(cuts.begin(), cuts.end(), l) - cuts.begin();
      if (ub > 1) p_first = static_cast<std::size_t>(ub - 1);
    }
    std::size_t p_last = std::min(rc, K_vis - 1);
    for (std::size_t p = p_first; p <= p_last; ++p) {
      double nl = std::max(l, cuts[p]) + delta;
      std::size_t nrc = m[p] + 1;
      if (!(nl < cuts[nrc])) continue;
      if (nl < r.best_l[nrc]) {
        r.best_l[nrc] = nl;
        r.pred_state[nrc] = static_cast<std::ptrdiff_t>(rc);
        r.pred_piece[nrc] = static_cast<std::ptrdiff_t>(p);
        if (!queued[nrc]) {
          queued[nrc] = 1;
          work.push_back(nrc);
        }
      }
    }
  }
  return r;
}

// Can a reachable boundary close out the partition at 1 with threshold c?
// Returns the (state, piece) used, or (-1, -1).
std::pair<std::ptrdiff_t, std::ptrdiff_t> accepting(const std::vector<double>& cuts,
                                                    const std::vector<std::vector<double>>& W,
                                                    double delta, double c, std::size_t K_vis,
                                                    const Reach& r) {
  for (std::size_t rc = 0; rc <= K_vis; ++rc) {
    double l = r.best_l[rc];
    if (!(l < std::numeric_limits<double>::infinity())) continue;
    std::size_t p_first = 0;
    {
      auto ub = std::upper_bound(cuts.begin(), cuts.end(), l) - cuts.begin();
      if (ub > 1) p_first = static_cast<std::size_t>(ub - 1);
    }
    std::size_t p_last = std::min(rc, K_vis - 1);
    for (std::size_t p = p_first; p <= p_last; ++p) {
      if (W[p][K_vis - 1] > c) continue;
      if (std::max(l, cuts[p]) < 1.0 - delta)
        return {static_cast<std::ptrdiff_t>(rc), static_cast<std::ptrdiff_t>(p)};
    }
  }
  return {-1, -1};
}

bool feasible(const std::vector<double>& cuts, const std::vector<std::vector<double>>& W,
              double delta, double c, std::size_t K_vis) {
  Reach r = propagate(cuts, W, delta, c, K_vis);
  return accepting(cuts, W, delta, c, K_vis, r).first >= 0;
}

}  // namespace

double sparse_infimum(const std::vector<double>& cuts,
                      const std::vector<std::vector<double>>& W, double delta) {
  std::size_t K_vis = visible_pieces(cuts);
  std::vector<double> vals;
  vals.reserve(K_vis * (K_vis + 1) / 2);
  for (std::size_t p = 0; p < K_vis; ++p)
    for (std::size_t q = p; q < K_vis; ++q) vals.push_back(W[p][q]);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  // The infimum is attained within the finite value set: the trivial
  // partition {0,1} is always delta-sparse, so some candidate is feasible.
  std::size_t lo = 0, hi = vals.size() - 1;
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(cuts, W, delta, vals[mid], K_vis))
      hi = mid;
    else
      lo = mid + 1;
  }
  return vals[lo];
}

SparsePartition sparse_infimum_witness(const std::vector<double>& cuts,
                                       const std::vector<std::vector<double>>& W, double delta) {
  double value = sparse_infimum(cuts, W, delta);
  std::size_t K_vis = visible_pieces(cuts);
  Reach r = propagate(cuts, W, delta, value, K_vis);
  auto [rc, p] = accepting(cuts, W, delta, value, K_vis, r);
  if (rc < 0) throw std::logic_error("sparse_infimum_witness: threshold not feasible");

  // Concretize boundaries backward from t_v = 1. At each step the pending
  // boundary must exceed its successor by more than delta and sit both in
  // the chosen piece and in the reachable interval.
  std::vector<double> rev{1.0};
  double t_next = 1.0;
  while (true) {
    double l = r.best_l[static_cast<std::size_t>(rc)];
    double tau;
    if (cuts[static_cast<std::size_t>(p)] > l) {
      tau = cuts[static_cast<std::size_t>(p)];
    } else {
      double u = std::min({cuts[static_cast<std::size_t>(rc)],
                           cuts[static_cast<std::size_t>(p) + 1], t_next - delta});
      tau = l + (u - l) / 2.0;
    }
    rev.push_back(tau);
    if (rc == 0) break;
    std::ptrdiff_t prev_rc = r.pred_state[static_cast<std::size_t>(rc)];
    std::ptrdiff_t prev_p = r.pred_piece[static_cast<std::size_t>(rc)];
    rc = prev_rc;
    p = prev_p;
    t_next = tau;
  }
  SparsePartition out;
  out.cuts.assign(rev.rbegin(), rev.rend());
  out.value = value;

  // Sanity: the realized partition reproduces the reported value exactly.
  double realized = 0.0;
  for (std::size_t i = 0; i + 1 < out.cuts.size(); ++i) {
    if (!(out.cuts[i + 1] - out.cuts[i] > delta))
      throw std::logic_error("sparse_infimum_witness: gap not above delta");
    auto [a, b] = piece_range(cuts, out.cuts[i], out.cuts[i + 1], true);
    if (a <= b) realized = std::max(realized, W[a][b]);
  }
  if (realized != value) throw std::logic_error("sparse_infimum_witness: value mismatch");
  return out;
}

double min_increment_window(const std::vector<double>& cuts, const DistFn& dist, double delta) {
  std::size_t P = cuts.size() - 1;
  // Cache pairwise distances; the triple scan below touches each pair
  // many times and dist may be expensive.
  std::vector<std::vector<double>> D(P, std::vector<double>(P, 0.0));
  for (std::size_t p = 0; p < P; ++p)
    for (std::size_t q = p + 1; q < P; ++q) D[p][q] = D[q][p] = dist(p, q);
  double best = 0.0;
  std::size_t p1 = 0;
  for (std::size_t p2 = 0; p2 < P; ++p2) {
    // Positions in p1 sit strictly below cuts[p1+1], so (p1, p2) fits in a
    // window of width delta (open or closed alike) exactly when
    // cuts[p2] - cuts[p1+1] < delta.
    while (p1 < p2 && !(cuts[p2] - cuts[p1 + 1] < delta)) ++p1;
    for (std::size_t a = p1; a <= p2; ++a)
      for (std::size_t p = a; p <= p2; ++p)
        best = std::max(best, std::min(D[a][p], D[p][p2]));
  }
  return best;
}

double pair_window_sup(const std::vector<double>& cuts,
                       const std::vector<std::vector<double>>& W, double width) {
  std::size_t P = cuts.size() - 1;
  double best = 0.0;
  std::size_t p = 0;
  for (std::size_t q = 1; q < P; ++q) {
    while (p < q && !(cuts[q] - cuts[p + 1] < width)) ++p;
    if (p < q) best = std::max(best, W[p][q]);
  }
  return best;
}

}  // namespace moduli_engine

namespace {

std::vector<double> piece_cuts(const StepFunction& x) {
  std::vector<double> cuts;
  cuts.reserve(x.jump_count() + 2);
  cuts.push_back(0.0);
  for (double b : x.breakpoints()) cuts.push_back(b);
  cuts.push_back(1.0);
  return cuts;
}

void check_delta(double delta, const char* who) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error(std::string(who) + ": delta outside (0,1)");
}

}  // namespace

double modulus_wprime(const StepFunction& x, double delta) {
  check_delta(delta, "modulus_wprime");
  auto cuts = piece_cuts(x);
  const auto& v = x.values();
  auto W = moduli_engine::window_table(
      v.size(), [&](std::size_t p, std::size_t q) { return std::fabs(v[p] - v[q]); });
  return moduli_engine::sparse_infimum(cuts, W, delta);
}

SparsePartition modulus_wprime_witness(const StepFunction& x, double delta) {
  check_delta(delta, "modulus_wprime");
  auto cuts = piece_cuts(x);
  const auto& v = x.values();
  auto W = moduli_engine::window_table(
      v.size(), [&](std::size_t p, std::size_t q) { return std::fabs(v[p] - v[q]); });
  return moduli_engine::sparse_infimum_witness(cuts, W, delta);
}

double modulus_wsecond(const StepFunction& x, double delta) {
  check_delta(delta, "modulus_wsecond");
  auto cuts = piece_cuts(x);
  const auto& v = x.values();
  return moduli_engine::min_increment_window(
      cuts, [&](std::size_t p, std::size_t q) { return std::fabs(v[p] - v[q]); }, delta);
}

}  // namespace skorohod
