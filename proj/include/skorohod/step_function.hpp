#pragma once

#include <vector>

namespace skorohod {

// Subinterval of [0,1]. When half_open is set the right endpoint is
// excluded, so [lo, hi) never sees a piece that starts exactly at hi.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  bool half_open = false;

  static Interval closed(double lo, double hi) { return Interval{lo, hi, false}; }
  static Interval right_open(double lo, double hi) { return Interval{lo, hi, true}; }
};

// Right-continuous piecewise-constant function on [0,1].
//
// breakpoints() are strictly increasing, each in (0,1]; values() has one
// more entry. Piece i is [b_{i-1}, b_i) with b_{-1}=0, and the final piece
// is [b_k, 1] (a single point when b_k == 1). Canonical form: adjacent
// equal values are merged, so every breakpoint is a genuine jump.
class StepFunction {
 public:
  StepFunction() : values_{0.0} {}

  // Validates and canonicalizes. Throws std::invalid_argument on unsorted
  // or out-of-range breakpoints, a length mismatch, or non-finite values.
  static StepFunction make(std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(double v) { return StepFunction(std::vector<double>{}, {v}); }
  static StepFunction zero() { return constant(0.0); }

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  std::size_t jump_count() const { return breakpoints_.size(); }

  bool operator==(const StepFunction& o) const {
    return breakpoints_ == o.breakpoints_ && values_ == o.values_;
  }

 private:
  StepFunction(std::vector<double> b, std::vector<double> v)
      : breakpoints_(std::move(b)), values_(std::move(v)) {}

  std::vector<double> breakpoints_;
  std::vector<double> values_;

  friend StepFunction make_step_unchecked(std::vector<double>, std::vector<double>);
};

// Canonicalizes (merges equal adjacent values, drops duplicate positions
// keeping the later value) without revalidating ranges. Used by compose,
// where floating-point inversion may collapse neighbouring breakpoints.
StepFunction make_step_unchecked(std::vector<double> breakpoints, std::vector<double> values);

StepFunction make_step(std::vector<double> breakpoints, std::vector<double> values);

// x(s). Throws std::domain_error for s outside [0,1].
double eval(const StepFunction& x, double s);

// Left limit x(s-). Throws std::domain_error for s outside (0,1].
double left_limit(const StepFunction& x, double s);

// sup over [0,1] of |x(s)|; attained on piece values.
double sup_norm(const StepFunction& x);

// max minus min of the piece values attained on T; 0 when T is empty.
double oscillation(const StepFunction& x, const Interval& T);

// sup of |x(s1) - x(s2)| over s1, s2 in [0,1] with |s1 - s2| <= width.
double oscillation_window(const StepFunction& x, double width);

// Largest jump: max over breakpoints of |x(b) - x(b-)|; 0 if constant.
double largest_jump(const StepFunction& x);

// Pointwise combinations on the merged breakpoint set.
StepFunction add(const StepFunction& x, const StepFunction& y);
StepFunction subtract(const StepFunction& x, const StepFunction& y);
StepFunction scale(const StepFunction& x, double c);

}  // namespace skorohod
