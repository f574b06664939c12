#pragma once

#include "skorohod/metric.hpp"
#include "skorohod/moduli.hpp"
#include "skorohod/nested_path.hpp"

namespace skorohod {

// Uniform distance: sup over t of d_j1_0(x(t), y(t)); the sup collapses to
// a max over the common refinement of t-pieces.
double rho_D(const NestedPath& x, const NestedPath& y);

// Skorohod distances one level up: minimum over order-preserving matchings
// of t-jumps of max(size(lambda_M), sup_t d_j1_0(x(t), y(lambda_M(t)))),
// size() being the deviation norm for d_D and the log-slope norm for d_D0.
// Same matching relaxation and tie-breaking as the scalar metrics.
DistanceResult d_D(const NestedPath& x, const NestedPath& y);
DistanceResult d_D0(const NestedPath& x, const NestedPath& y);

// Matching machinery one level up, mirroring the scalar versions.
TimeChange nested_matching_timechange(const NestedPath& x, const NestedPath& y, const Matching& m);
double nested_matching_cost(const NestedPath& x, const NestedPath& y, const Matching& m, Objective obj);
std::vector<Matching> nested_enumerate_matchings(const NestedPath& x, const NestedPath& y,
                                                 EnumerationMode mode = EnumerationMode::exhaustive,
                                                 std::size_t cap = 24);

// sup of d_j1_0(x(t1), x(t2)) over t1, t2 in T.
double w_D(const NestedPath& x, const Interval& T);

// j(x) = max over t-breakpoints of d_j1_0(x(t), x(t-)).
double max_jump(const NestedPath& x);

// Nested moduli: the scalar engines with oscillation replaced by pairwise
// d_j1_0 (w_D_prime, w_D_second) or by sup_norm of differences (w_u_second).
double w_D_prime(const NestedPath& x, double delta);
SparsePartition w_D_prime_witness(const NestedPath& x, double delta);
double w_D_second(const NestedPath& x, double delta);
double w_u_second(const NestedPath& x, double delta);

// Width-delta uniform modulus: sup of d_j1_0(x(t1), x(t2)) over
// |t1 - t2| <= delta. Scalar analogue of oscillation_window.
double w_D_window(const NestedPath& x, double delta);

}  // namespace skorohod
