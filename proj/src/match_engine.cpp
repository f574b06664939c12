#include "skorohod/detail/match_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "skorohod/time_change.hpp"

namespace skorohod::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Matchable switches sit strictly inside (0,1).
std::vector<double> matchable(const std::vector<double>& b) {
  std::vector<double> out;
  for (double p : b)
    if (p < 1.0) out.push_back(p);
  return out;
}

struct Bnd {
  double pos;
  int which;  // 0: x piece advances, 1: y piece advances
};

// Cost of the segment between consecutive matched pairs (a,b) -> (c,d):
// the norm contribution of the linear stretch plus the sup of
// dist(piece of x at s, piece of y at lambda(s)) over s in [a, c)
// (and the point s = 1 when this is the closing segment).
double seg_cost(const MatchView& v, double a, double b, double c, double d, bool final_seg,
                Objective obj) {
  double norm_part;
  if (obj == Objective::j1)
    norm_part = std::max(std::fabs(b - a), std::fabs(d - c));
  else
    norm_part = std::fabs(std::log((d - b) / (c - a)));

  std::vector<Bnd> bnds;
  auto ix0 = std::upper_bound(v.bx.begin(), v.bx.end(), a) - v.bx.begin();
  auto iy0 = std::upper_bound(v.by.begin(), v.by.end(), b) - v.by.begin();
  for (auto it = v.bx.begin() + ix0; it != v.bx.end() && *it < c; ++it)
    bnds.push_back({*it, 0});
  for (auto it = v.by.begin() + iy0; it != v.by.end() && *it < d; ++it)
    bnds.push_back({interp_inverse(*it, a, b, c, d), 1});
  std::sort(bnds.begin(), bnds.end(), [](const Bnd& l, const Bnd& r) { return l.pos < r.pos; });

  double diff = 0.0;
  std::size_t ix = static_cast<std::size_t>(ix0), iy = static_cast<std::size_t>(iy0);
  double cursor = a;
  std::size_t i = 0;
  while (true) {
    double next = (i < bnds.size()) ? bnds[i].pos : c;
    if (next > cursor) diff = std::max(diff, v.dist(ix, iy));
    if (i >= bnds.size()) break;
    // apply every switch at this position before reading values again, so
    // zero-width regions contribute nothing
    while (i < bnds.size() && bnds[i].pos == next) {
      if (bnds[i].which == 0)
        ++ix;
      else
        ++iy;
      ++i;
    }
    cursor = next;
  }
  if (final_seg) diff = std::max(diff, v.dist(v.bx.size(), v.by.size()));
  return std::max(norm_part, diff);
}

}  // namespace

std::vector<std::pair<double, double>> matched_knots(const MatchView& v, const Matching& m) {
  auto ax = matchable(v.bx);
  auto ay = matchable(v.by);
  std::vector<std::pair<double, double>> k;
  k.reserve(m.pairs.size());
  for (std::size_t pi = 0; pi < m.pairs.size(); ++pi) {
    auto [i, j] = m.pairs[pi];
    if (i >= ax.size() || j >= ay.size())
      throw std::invalid_argument("matching: index out of matchable range (jumps at 1 are fixed)");
    if (pi > 0 && (m.pairs[pi - 1].first >= i || m.pairs[pi - 1].second >= j))
      throw std::invalid_argument("matching: pairs not strictly increasing");
    k.emplace_back(ax[i], ay[j]);
  }
  return k;
}

double match_cost(const MatchView& v, const Matching& m, Objective obj) {
  auto knots = matched_knots(v, m);
  double a = 0.0, b = 0.0;
  double worst = 0.0;
  for (const auto& [c, d] : knots) {
    worst = std::max(worst, seg_cost(v, a, b, c, d, false, obj));
    a = c;
    b = d;
  }
  return std::max(worst, seg_cost(v, a, b, 1.0, 1.0, true, obj));
}

MatchOutcome match_minimax(const MatchView& v, Objective obj) {
  auto ax = matchable(v.bx);
  auto ay = matchable(v.by);
  std::size_t p = ax.size(), q = ay.size();

  auto seg = [&](double a, double b, double c, double d, bool fin) {
    return seg_cost(v, a, b, c, d, fin, obj);
  };

  // suf[i][j]: best achievable max cost over completions whose last placed
  // pair is (i, j).
  std::vector<std::vector<double>> suf(p, std::vector<double>(q, kInf));
  for (std::size_t i = p; i-- > 0;)
    for (std::size_t j = q; j-- > 0;) {
      double best = seg(ax[i], ay[j], 1.0, 1.0, true);
      for (std::size_t i2 = i + 1; i2 < p; ++i2)
        for (std::size_t j2 = j + 1; j2 < q; ++j2)
          best = std::min(best, std::max(seg(ax[i], ay[j], ax[i2], ay[j2], false), suf[i2][j2]));
      suf[i][j] = best;
    }

  double value = seg(0.0, 0.0, 1.0, 1.0, true);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j)
      value = std::min(value, std::max(seg(0.0, 0.0, ax[i], ay[j], false), suf[i][j]));

  // Lexicographically smallest optimal matching: stopping beats extending,
  // smaller next pairs beat larger ones.
  MatchOutcome out;
  out.value = value;
  double ca = 0.0, cb = 0.0;
  std::size_t ci = 0, cj = 0;
  while (true) {
    if (seg(ca, cb, 1.0, 1.0, true) <= value) break;
    bool advanced = false;
    for (std::size_t i = ci; i < p && !advanced; ++i)
      for (std::size_t j = cj; j < q && !advanced; ++j)
        if (std::max(seg(ca, cb, ax[i], ay[j], false), suf[i][j]) <= value) {
          out.matching.pairs.emplace_back(i, j);
          ca = ax[i];
          cb = ay[j];
          ci = i + 1;
          cj = j + 1;
          advanced = true;
        }
    if (!advanced) throw std::logic_error("match_minimax: witness reconstruction failed");
  }
  return out;
}

std::vector<Matching> enumerate_all(std::size_t p, std::size_t q, std::size_t cap) {
  if (p + q > cap) throw std::length_error("enumerate_matchings: too many jumps");
  std::vector<Matching> out;
  Matching cur;
  // lexicographic: emit the prefix, then extend with every larger pair
  auto rec = [&](auto&& self, std::size_t i0, std::size_t j0) -> void {
    out.push_back(cur);
    for (std::size_t i = i0; i < p; ++i)
      for (std::size_t j = j0; j < q; ++j) {
        cur.pairs.emplace_back(i, j);
        self(self, i + 1, j + 1);
        cur.pairs.pop_back();
      }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace skorohod::detail
