#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "skorohod/step_function.hpp"
#include "skorohod/time_change.hpp"

namespace skorohod {

enum class Objective { j1, j1_0 };

// Order-preserving matching of jumps: pairs (i, j) strictly increasing in
// both coordinates, i indexing x's jumps and j indexing y's. Jumps sitting
// exactly at s = 1 are never listed: the fixed endpoint (1,1) of every time
// change aligns them automatically.
struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  bool operator==(const Matching& o) const { return pairs == o.pairs; }
};

struct DistanceResult {
  double value = 0.0;
  Objective objective = Objective::j1;
  Matching witness;
  TimeChange witness_timechange;
};

// Skorohod distances between step functions, computed as the exact minimum
// over all order-preserving jump matchings of
//   max(size(lambda_M), sup_s |x(s) - y(lambda_M(s))|)
// where lambda_M interpolates the matched jump positions and size() is the
// deviation norm (d_j1) or the log-slope norm (d_j1_0). This is an upper
// bound on the infimum over all time changes; the randomized oracle_dist
// certifies the gap on test corpora. Ties break toward the
// lexicographically smallest pair sequence.
DistanceResult d_j1(const StepFunction& x, const StepFunction& y);
DistanceResult d_j1_0(const StepFunction& x, const StepFunction& y);

// Interpolant through the matched jump positions (plus the fixed endpoints).
// Throws std::invalid_argument if the pairs are not strictly increasing or
// index a jump at position 1.
TimeChange matching_timechange(const StepFunction& x, const StepFunction& y, const Matching& m);

// Cost of one matching under the given objective, evaluated with the same
// arithmetic the optimizer uses, so witnesses reproduce reported values.
double matching_cost(const StepFunction& x, const StepFunction& y, const Matching& m, Objective obj);

enum class EnumerationMode { exhaustive, dp_best };

// exhaustive: every order-preserving matching, lexicographic order; throws
// std::length_error when the combined matchable jump count exceeds cap.
// dp_best: the two cost-optimal matchings {d_j1 winner, d_j1_0 winner}.
std::vector<Matching> enumerate_matchings(const StepFunction& x, const StepFunction& y,
                                          EnumerationMode mode = EnumerationMode::exhaustive,
                                          std::size_t cap = 24);

// Independent certification: best cost over `trials` random piecewise-linear
// time changes (identity first, then a mix of random jump alignments,
// global draws and local refinement around the incumbent). Deterministic in
// seed; evaluates candidates by composition only.
double oracle_dist(const StepFunction& x, const StepFunction& y, Objective obj,
                   int trials, std::uint64_t seed);

}  // namespace skorohod
