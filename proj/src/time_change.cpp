#include "skorohod/time_change.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skorohod {

TimeChange::TimeChange() : knots_{{0.0, 0.0}, {1.0, 1.0}} {}

TimeChange TimeChange::make(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2) throw std::invalid_argument("TimeChange: need at least two knots");
  if (knots.front() != std::pair<double, double>{0.0, 0.0} ||
      knots.back() != std::pair<double, double>{1.0, 1.0})
    throw std::invalid_argument("TimeChange: must fix 0 and 1");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].first) || !std::isfinite(knots[i].second))
      throw std::invalid_argument("TimeChange: non-finite knot");
    if (i > 0 && (knots[i - 1].first >= knots[i].first ||
                  knots[i - 1].second >= knots[i].second))
      throw std::invalid_argument("TimeChange: knots not strictly increasing");
  }
  return TimeChange(std::move(knots));
}

double TimeChange::operator()(double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::domain_error("TimeChange: s outside [0,1]");
  auto it = std::lower_bound(knots_.begin(), knots_.end(), s,
                             [](const auto& k, double t) { return k.first < t; });
  if (it != knots_.end() && it->first == s) return it->second;  // exact at knots
  auto hi = it;
  auto lo = it - 1;
  return lo->second + (s - lo->first) * (hi->second - lo->second) / (hi->first - lo->first);
}

double TimeChange::inverse(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("TimeChange: u outside [0,1]");
  auto it = std::lower_bound(knots_.begin(), knots_.end(), u,
                             [](const auto& k, double t) { return k.second < t; });
  if (it != knots_.end() && it->second == u) return it->first;
  auto hi = it;
  auto lo = it - 1;
  return interp_inverse(u, lo->first, lo->second, hi->first, hi->second);
}

bool TimeChange::is_identity() const {
  for (const auto& k : knots_)
    if (k.first != k.second) return false;
  return true;
}

double timechange_devnorm(const TimeChange& lam) {
  double m = 0.0;
  for (const auto& k : lam.knots()) m = std::max(m, std::fabs(k.second - k.first));
  return m;
}

double timechange_lognorm(const TimeChange& lam) {
  const auto& k = lam.knots();
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < k.size(); ++i) {
    double slope = (k[i + 1].second - k[i].second) / (k[i + 1].first - k[i].first);
    m = std::max(m, std::fabs(std::log(slope)));
  }
  return m;
}

double interp_inverse(double b, double a_lo, double b_lo, double a_hi, double b_hi) {
  return a_lo + (b - b_lo) * (a_hi - a_lo) / (b_hi - b_lo);
}

StepFunction compose(const StepFunction& x, const TimeChange& lam) {
  std::vector<double> b;
  b.reserve(x.breakpoints().size());
  for (double pos : x.breakpoints()) b.push_back(lam.inverse(pos));
  return make_step_unchecked(std::move(b), x.values());
}

}  // namespace skorohod
