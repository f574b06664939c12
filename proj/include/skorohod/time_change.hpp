#pragma once

#include <utility>
#include <vector>

#include "skorohod/step_function.hpp"

namespace skorohod {

// Strictly increasing piecewise-linear bijection of [0,1] onto itself,
// stored as knots (s_i, lambda(s_i)). Both coordinates strictly increase;
// first knot is (0,0), last is (1,1).
class TimeChange {
 public:
  // Identity (two knots).
  TimeChange();

  // Validates endpoints, monotonicity and finiteness; collinear interior
  // knots are kept as given (they are harmless and keep witnesses exact).
  static TimeChange make(std::vector<std::pair<double, double>> knots);

  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

  // lambda(s) by linear interpolation between knots.
  double operator()(double s) const;

  // lambda^{-1}(u); well defined since lambda is a strictly increasing
  // bijection. Uses the same interpolation arithmetic as the metric DP so
  // witness re-evaluation is bit-exact.
  double inverse(double u) const;

  bool is_identity() const;

 private:
  explicit TimeChange(std::vector<std::pair<double, double>> knots)
      : knots_(std::move(knots)) {}

  std::vector<std::pair<double, double>> knots_;
};

// sup_s |lambda(s) - s|; attained at knots for piecewise-linear lambda.
double timechange_devnorm(const TimeChange& lam);

// sup over s < t of |log((lambda(t)-lambda(s)) / (t-s))|. For a
// piecewise-linear bijection this is the largest |log slope| over
// segments: chords mix segment slopes and cannot exceed the extremes.
double timechange_lognorm(const TimeChange& lam);

// Shared interpolation helper: the u with lambda(u) = b on the segment
// from (a_lo, b_lo) to (a_hi, b_hi). Exact at segment endpoints.
double interp_inverse(double b, double a_lo, double b_lo, double a_hi, double b_hi);

// Composition s -> x(lambda(s)) as a step function. Breakpoints map
// through lambda^{-1}; positions that collide in floating point keep the
// later piece value.
StepFunction compose(const StepFunction& x, const TimeChange& lam);

}  // namespace skorohod
