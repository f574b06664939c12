#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "skorohod/step_function.hpp"

namespace skorohod {

// Partition witness for the sparse-partition modulus: cuts are the chosen
// boundaries 0 = t_0 < ... < t_v = 1, value the realized max oscillation.
struct SparsePartition {
  std::vector<double> cuts;
  double value = 0.0;
};

// w'(x, delta): exact infimum over delta-sparse partitions (every gap
// strictly above delta) of the max oscillation on [t_{i-1}, t_i).
// Throws std::domain_error unless delta is in (0,1).
double modulus_wprime(const StepFunction& x, double delta);
SparsePartition modulus_wprime_witness(const StepFunction& x, double delta);

// w''(x, delta): sup over s1 <= s <= s2 with s2 - s1 <= delta of
// min(|x(s) - x(s1)|, |x(s2) - x(s)|). Exact. delta in (0,1).
double modulus_wsecond(const StepFunction& x, double delta);

// Shared machinery for every modulus, scalar or nested. A path is reduced
// to its piece layout: cuts = {0, b_1, ..., b_k, 1}, piece p occupying
// [cuts[p], cuts[p+1]), except the last piece which is closed at 1 (and
// degenerates to the single point {1} when a boundary sits exactly at 1).
// dist(p, q) is the distance between the values carried by pieces p and q;
// it must be symmetric with dist(p, p) = 0.
namespace moduli_engine {

using DistFn = std::function<double(std::size_t, std::size_t)>;

// W[p][q] = max dist over all piece pairs inside [p..q], for p <= q.
std::vector<std::vector<double>> window_table(std::size_t pieces, const DistFn& dist);

// Pieces intersecting [lo, hi] (or [lo, hi) when half_open), as an
// inclusive index range; first > second encodes the empty range.
std::pair<std::ptrdiff_t, std::ptrdiff_t> piece_range(const std::vector<double>& cuts,
                                                      double lo, double hi, bool half_open);

// Exact infimum over delta-sparse partitions of the max oscillation on the
// half-open partition intervals. A piece pinned to the single point {1} is
// invisible to [t, u) windows and is skipped automatically.
double sparse_infimum(const std::vector<double>& cuts,
                      const std::vector<std::vector<double>>& W, double delta);
SparsePartition sparse_infimum_witness(const std::vector<double>& cuts,
                                       const std::vector<std::vector<double>>& W, double delta);

// sup over p1 <= p <= p2 of min(dist(p, p1), dist(p2, p)) subject to the
// window constraint. Positions inside pieces form open ranges, so the
// attainable separations between pieces p1 < p2 form the open interval
// above cuts[p2] - cuts[p1+1]; a window of width delta (open or closed)
// admits the pair exactly when that bound is strictly below delta. The
// same routine therefore computes both w''-style (s2 - s1 <= delta) and
// L-style (t - r < delta) suprema.
double min_increment_window(const std::vector<double>& cuts, const DistFn& dist, double delta);

// sup of dist over piece pairs within window width: the uniform modulus
// sup_{|s1 - s2| <= width} dist. Same separation rule as above.
double pair_window_sup(const std::vector<double>& cuts,
                       const std::vector<std::vector<double>>& W, double width);

}  // namespace moduli_engine
}  // namespace skorohod
