#pragma once

#include <vector>

#include "skorohod/step_function.hpp"
#include "skorohod/time_change.hpp"

namespace skorohod {

// Piecewise-constant cadlag map [0,1] -> StepFunction. Same layout as
// StepFunction one level up: t_breakpoints in (0,1] strictly increasing,
// one more segment than breakpoints, segment i held on [t_{i-1}, t_i).
// Canonical form merges adjacent equal segments.
class NestedPath {
 public:
  NestedPath() : segments_{StepFunction::zero()} {}

  static NestedPath make(std::vector<double> t_breakpoints, std::vector<StepFunction> segments);
  static NestedPath constant(StepFunction v);
  static NestedPath zero() { return NestedPath(); }

  const std::vector<double>& t_breakpoints() const { return t_breakpoints_; }
  const std::vector<StepFunction>& segments() const { return segments_; }
  std::size_t jump_count() const { return t_breakpoints_.size(); }

  bool operator==(const NestedPath& o) const {
    return t_breakpoints_ == o.t_breakpoints_ && segments_ == o.segments_;
  }

 private:
  NestedPath(std::vector<double> b, std::vector<StepFunction> s)
      : t_breakpoints_(std::move(b)), segments_(std::move(s)) {}

  std::vector<double> t_breakpoints_;
  std::vector<StepFunction> segments_;

  friend NestedPath make_nested_unchecked(std::vector<double> b, std::vector<StepFunction> s);
};

// Trusts that positions are sorted but still collapses non-positive or
// duplicate positions (keeping the later segment) and merges equal adjacent
// segments. Used where positions come from arithmetic, e.g. compose_t.
NestedPath make_nested_unchecked(std::vector<double> b, std::vector<StepFunction> s);

// Segment lookup; domain errors outside [0,1] ((0,1] for the left limit).
const StepFunction& eval_t(const NestedPath& x, double t);
double eval_ts(const NestedPath& x, double t, double s);
const StepFunction& left_limit_t(const NestedPath& x, double t);

// sup over t of sup_norm(x(t)).
double super_norm(const NestedPath& x);

// Discontinuity positions in t (finite for step paths).
std::vector<double> disc_set(const NestedPath& x);

// Pointwise combinations on the common refinement of t-pieces (segments
// combine on the common refinement of their s-breakpoints).
NestedPath add(const NestedPath& x, const NestedPath& y);
NestedPath subtract(const NestedPath& x, const NestedPath& y);

// t -> x(lambda(t)); breakpoints map through lambda^{-1} like compose.
NestedPath compose_t(const NestedPath& x, const TimeChange& lam);

// Partition of [0,1] used by the discretization maps.
struct Grid {
  std::vector<double> points;  // 0 = p_0 < ... < p_v = 1

  static Grid make(std::vector<double> points);
  double mesh() const;
};

// A_sigma: freeze x at the left grid point of each cell, keep x(1) at 1.
NestedPath discretize(const NestedPath& x, const Grid& sigma);

// V_sigma: build the path holding values[i] on [p_i, p_{i+1}) and the last
// value at 1. |values| must equal |sigma.points|.
NestedPath assemble(const std::vector<StepFunction>& values, const Grid& sigma);

}  // namespace skorohod
