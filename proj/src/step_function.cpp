#include "skorohod/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skorohod {

namespace {

// Merge adjacent equal values so every kept breakpoint is a genuine jump.
StepFunction canonical(std::vector<double> b, std::vector<double> v) {
  std::vector<double> cb, cv;
  cb.reserve(b.size());
  cv.reserve(v.size());
  cv.push_back(v[0]);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (v[i + 1] == cv.back()) continue;
    cb.push_back(b[i]);
    cv.push_back(v[i + 1]);
  }
  return make_step_unchecked(std::move(cb), std::move(cv));
}

}  // namespace

StepFunction make_step_unchecked(std::vector<double> breakpoints, std::vector<double> values) {
  // Collapse duplicate positions (zero-width pieces), keeping the later
  // value; then merge equal adjacent values.
  std::vector<double> b, v;
  b.reserve(breakpoints.size());
  v.reserve(values.size());
  v.push_back(values[0]);
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    double pos = breakpoints[i];
    double after = values[i + 1];
    if (pos <= 0.0) {
      v.back() = after;  // piece before a non-positive position is empty
    } else if (!b.empty() && pos == b.back()) {
      v.back() = after;
    } else {
      b.push_back(pos);
      v.push_back(after);
    }
  }
  std::vector<double> cb, cv;
  cb.reserve(b.size());
  cv.reserve(v.size());
  cv.push_back(v[0]);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (v[i + 1] == cv.back()) continue;
    cb.push_back(b[i]);
    cv.push_back(v[i + 1]);
  }
  return StepFunction(std::move(cb), std::move(cv));
}

StepFunction StepFunction::make(std::vector<double> breakpoints, std::vector<double> values) {
  if (values.size() != breakpoints.size() + 1)
    throw std::invalid_argument("StepFunction: need one more value than breakpoints");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("StepFunction: non-finite value");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    double b = breakpoints[i];
    if (!std::isfinite(b) || b <= 0.0 || b > 1.0)
      throw std::invalid_argument("StepFunction: breakpoint outside (0,1]");
    if (i > 0 && breakpoints[i - 1] >= b)
      throw std::invalid_argument("StepFunction: breakpoints not strictly increasing");
  }
  return canonical(std::move(breakpoints), std::move(values));
}

StepFunction make_step(std::vector<double> breakpoints, std::vector<double> values) {
  return StepFunction::make(std::move(breakpoints), std::move(values));
}

double eval(const StepFunction& x, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("eval: s outside [0,1]");
  const auto& b = x.breakpoints();
  auto idx = std::upper_bound(b.begin(), b.end(), s) - b.begin();
  return x.values()[static_cast<std::size_t>(idx)];
}

double left_limit(const StepFunction& x, double s) {
  if (!(s > 0.0 && s <= 1.0)) throw std::domain_error("left_limit: s outside (0,1]");
  const auto& b = x.breakpoints();
  auto idx = std::lower_bound(b.begin(), b.end(), s) - b.begin();
  return x.values()[static_cast<std::size_t>(idx)];
}

double sup_norm(const StepFunction& x) {
  double m = 0.0;
  for (double v : x.values()) m = std::max(m, std::fabs(v));
  return m;
}

double oscillation(const StepFunction& x, const Interval& T) {
  if (!(T.lo >= 0.0 && T.hi <= 1.0 && T.lo <= T.hi))
    throw std::domain_error("oscillation: interval outside [0,1]");
  if (T.half_open && T.lo == T.hi) return 0.0;
  const auto& b = x.breakpoints();
  auto first = std::upper_bound(b.begin(), b.end(), T.lo) - b.begin();
  auto last = T.half_open ? std::lower_bound(b.begin(), b.end(), T.hi) - b.begin()
                          : std::upper_bound(b.begin(), b.end(), T.hi) - b.begin();
  double lo = x.values()[static_cast<std::size_t>(first)];
  double hi = lo;
  for (auto p = first; p <= last; ++p) {
    lo = std::min(lo, x.values()[static_cast<std::size_t>(p)]);
    hi = std::max(hi, x.values()[static_cast<std::size_t>(p)]);
  }
  return hi - lo;
}

double oscillation_window(const StepFunction& x, double width) {
  if (!(width >= 0.0)) throw std::domain_error("oscillation_window: negative width");
  const auto& b = x.breakpoints();
  const auto& v = x.values();
  std::size_t n = v.size();
  // cuts[p] is where piece p starts.
  std::vector<double> cuts(n + 1);
  cuts[0] = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) cuts[i + 1] = b[i];
  cuts[n] = 1.0;
  double best = 0.0;
  for (std::size_t q = 1; q < n; ++q)
    for (std::size_t p = 0; p < q; ++p) {
      // Positions in piece p stay strictly below cuts[p+1], so the pair
      // (p, q) fits in a width window exactly when the open lower bound on
      // the separation is below the width.
      if (cuts[q] - cuts[p + 1] < width) best = std::max(best, std::fabs(v[q] - v[p]));
    }
  return best;
}

double largest_jump(const StepFunction& x) {
  double m = 0.0;
  const auto& v = x.values();
  for (std::size_t i = 0; i + 1 < v.size(); ++i) m = std::max(m, std::fabs(v[i + 1] - v[i]));
  return m;
}

namespace {

template <typename Op>
StepFunction combine(const StepFunction& x, const StepFunction& y, Op op) {
  const auto& bx = x.breakpoints();
  const auto& by = y.breakpoints();
  std::vector<double> b, v;
  b.reserve(bx.size() + by.size());
  v.reserve(bx.size() + by.size() + 1);
  std::size_t i = 0, j = 0;
  v.push_back(op(x.values()[0], y.values()[0]));
  while (i < bx.size() || j < by.size()) {
    double pos;
    if (j == by.size() || (i < bx.size() && bx[i] < by[j]))
      pos = bx[i++];
    else if (i == bx.size() || by[j] < bx[i])
      pos = by[j++];
    else {
      pos = bx[i];
      ++i, ++j;
    }
    b.push_back(pos);
    v.push_back(op(x.values()[i], y.values()[j]));
  }
  return StepFunction::make(std::move(b), std::move(v));
}

}  // namespace

StepFunction add(const StepFunction& x, const StepFunction& y) {
  return combine(x, y, [](double a, double c) { return a + c; });
}

StepFunction subtract(const StepFunction& x, const StepFunction& y) {
  return combine(x, y, [](double a, double c) { return a - c; });
}

StepFunction scale(const StepFunction& x, double c) {
  std::vector<double> v = x.values();
  for (double& t : v) t *= c;
  return StepFunction::make(x.breakpoints(), std::move(v));
}

}  // namespace skorohod
