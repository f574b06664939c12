#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "skorohod/metric.hpp"

namespace skorohod::detail {

// Piece-level view of a matching problem. A side is described by the
// positions where it switches pieces (strictly increasing, in (0,1]);
// dist(i, j) compares the value of x's piece i with y's piece j and must
// be symmetric in the values it encodes. The scalar metrics use
// |vx[i] - vy[j]|; the nested ones plug in d_j1_0 between segments.
struct MatchView {
  std::vector<double> bx;
  std::vector<double> by;
  std::function<double(std::size_t, std::size_t)> dist;
};

struct MatchOutcome {
  double value = 0.0;
  Matching matching;
};

// Exact minimax over order-preserving matchings of the switches strictly
// inside (0,1) (a switch at 1 stays aligned by the fixed endpoint). The
// witness is the lexicographically smallest optimal matching.
MatchOutcome match_minimax(const MatchView& v, Objective obj);

// Cost of one matching, same arithmetic as the optimizer.
double match_cost(const MatchView& v, const Matching& m, Objective obj);

// Matched positions as (x, y) knot pairs; validates strict increase and
// range (std::invalid_argument).
std::vector<std::pair<double, double>> matched_knots(const MatchView& v, const Matching& m);

// Every order-preserving matching of p x q switches, lexicographic order;
// std::length_error when p + q exceeds cap.
std::vector<Matching> enumerate_all(std::size_t p, std::size_t q, std::size_t cap);

}  // namespace skorohod::detail
