#include "skorohod/nested_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skorohod {

NestedPath make_nested_unchecked(std::vector<double> b, std::vector<StepFunction> v) {
  std::vector<double> tb;
  std::vector<StepFunction> tv;
  tb.reserve(b.size());
  tv.reserve(v.size());
  tv.push_back(std::move(v[0]));
  for (std::size_t i = 0; i < b.size(); ++i) {
    double pos = b[i];
    if (pos <= 0.0) {
      tv.back() = std::move(v[i + 1]);
    } else if (!tb.empty() && pos == tb.back()) {
      tv.back() = std::move(v[i + 1]);
    } else {
      tb.push_back(pos);
      tv.push_back(std::move(v[i + 1]));
    }
  }
  std::vector<double> cb;
  std::vector<StepFunction> cv;
  cb.reserve(tb.size());
  cv.reserve(tv.size());
  cv.push_back(std::move(tv[0]));
  for (std::size_t i = 0; i < tb.size(); ++i) {
    if (tv[i + 1] == cv.back()) continue;
    cb.push_back(tb[i]);
    cv.push_back(std::move(tv[i + 1]));
  }
  return NestedPath(std::move(cb), std::move(cv));
}

NestedPath NestedPath::make(std::vector<double> t_breakpoints,
                            std::vector<StepFunction> segments) {
  if (segments.size() != t_breakpoints.size() + 1)
    throw std::invalid_argument("NestedPath: need one more segment than breakpoints");
  for (std::size_t i = 0; i < t_breakpoints.size(); ++i) {
    double b = t_breakpoints[i];
    if (!std::isfinite(b) || b <= 0.0 || b > 1.0)
      throw std::invalid_argument("NestedPath: breakpoint outside (0,1]");
    if (i > 0 && t_breakpoints[i - 1] >= b)
      throw std::invalid_argument("NestedPath: breakpoints not strictly increasing");
  }
  return make_nested_unchecked(std::move(t_breakpoints), std::move(segments));
}

NestedPath NestedPath::constant(StepFunction v) {
  return NestedPath({}, {std::move(v)});
}

const StepFunction& eval_t(const NestedPath& x, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("eval_t: t outside [0,1]");
  const auto& b = x.t_breakpoints();
  auto idx = std::upper_bound(b.begin(), b.end(), t) - b.begin();
  return x.segments()[static_cast<std::size_t>(idx)];
}

double eval_ts(const NestedPath& x, double t, double s) { return eval(eval_t(x, t), s); }

const StepFunction& left_limit_t(const NestedPath& x, double t) {
  if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("left_limit_t: t outside (0,1]");
  const auto& b = x.t_breakpoints();
  auto idx = std::lower_bound(b.begin(), b.end(), t) - b.begin();
  return x.segments()[static_cast<std::size_t>(idx)];
}

double super_norm(const NestedPath& x) {
  double m = 0.0;
  for (const auto& s : x.segments()) m = std::max(m, sup_norm(s));
  return m;
}

std::vector<double> disc_set(const NestedPath& x) { return x.t_breakpoints(); }

namespace {

template <typename Op>
NestedPath combine_nested(const NestedPath& x, const NestedPath& y, Op op) {
  const auto& bx = x.t_breakpoints();
  const auto& by = y.t_breakpoints();
  std::vector<double> b;
  std::vector<StepFunction> v;
  b.reserve(bx.size() + by.size());
  v.reserve(bx.size() + by.size() + 1);
  std::size_t i = 0, j = 0;
  v.push_back(op(x.segments()[0], y.segments()[0]));
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
    v.push_back(op(x.segments()[i], y.segments()[j]));
  }
  return NestedPath::make(std::move(b), std::move(v));
}

}  // namespace

NestedPath add(const NestedPath& x, const NestedPath& y) {
  return combine_nested(x, y, [](const StepFunction& a, const StepFunction& c) { return add(a, c); });
}

NestedPath subtract(const NestedPath& x, const NestedPath& y) {
  return combine_nested(x, y,
                        [](const StepFunction& a, const StepFunction& c) { return subtract(a, c); });
}

NestedPath compose_t(const NestedPath& x, const TimeChange& lam) {
  std::vector<double> b;
  b.reserve(x.t_breakpoints().size());
  for (double pos : x.t_breakpoints()) b.push_back(lam.inverse(pos));
  return make_nested_unchecked(std::move(b), x.segments());
}

Grid Grid::make(std::vector<double> points) {
  if (points.size() < 2) throw std::invalid_argument("Grid: need at least {0,1}");
  if (points.front() != 0.0 || points.back() != 1.0)
    throw std::invalid_argument("Grid: endpoints must be 0 and 1");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw std::invalid_argument("Grid: non-finite point");
    if (i > 0 && points[i - 1] >= points[i])
      throw std::invalid_argument("Grid: points not strictly increasing");
  }
  return Grid{std::move(points)};
}

double Grid::mesh() const {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i)
    m = std::max(m, points[i + 1] - points[i]);
  return m;
}

NestedPath discretize(const NestedPath& x, const Grid& sigma) {
  std::vector<StepFunction> vals;
  vals.reserve(sigma.points.size());
  for (double p : sigma.points) vals.push_back(eval_t(x, p));
  return assemble(vals, sigma);
}

NestedPath assemble(const std::vector<StepFunction>& values, const Grid& sigma) {
  if (values.size() != sigma.points.size())
    throw std::invalid_argument("assemble: need one value per grid point");
  // values[i] held on [p_i, p_{i+1}), last value at the point 1.
  std::vector<double> b(sigma.points.begin() + 1, sigma.points.end());
  return NestedPath::make(std::move(b), values);
}

}  // namespace skorohod
