#include "skorohod/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace skorohod {

namespace {

// splitmix64 finalizer; decorrelates replicate substreams from (seed, index).
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

void SimConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 2.0)) throw std::invalid_argument("SimConfig: alpha outside (0,2)");
  if (n < 1) throw std::invalid_argument("SimConfig: n must be >= 1");
  if (m < 1) throw std::invalid_argument("SimConfig: m must be >= 1");
  if (!(sign_balance >= 0.0 && sign_balance <= 1.0))
    throw std::invalid_argument("SimConfig: sign_balance outside [0,1]");
}

Stream Stream::substream(std::uint64_t seed, std::uint64_t index) {
  return Stream(mix64(mix64(seed) ^ mix64(index + 1)));
}

StepFunction sample_increment(const SimConfig& cfg, Stream& stream) {
  cfg.validate();
  // Draw order is part of the reproducibility contract: xi, sign, position.
  double xi = std::pow(stream.uniform01(), -1.0 / cfg.alpha);
  double sign = stream.uniform01() < cfg.sign_balance ? 1.0 : -1.0;
  double u = stream.uniform01();
  return make_step({u}, {0.0, sign * xi});
}

NestedPath partial_sum_path(const SimConfig& cfg, Stream& stream) {
  cfg.validate();
  double a_n = std::pow(static_cast<double>(cfg.n), 1.0 / cfg.alpha);
  double inv = 1.0 / a_n;
  std::vector<double> tb;
  std::vector<StepFunction> segs;
  tb.reserve(cfg.n);
  segs.reserve(cfg.n + 1);
  segs.push_back(StepFunction::zero());
  StepFunction sum = StepFunction::zero();
  for (std::uint64_t i = 1; i <= cfg.n; ++i) {
    sum = add(sum, sample_increment(cfg, stream));
    tb.push_back(static_cast<double>(i) / static_cast<double>(cfg.n));
    segs.push_back(scale(sum, inv));
  }
  return NestedPath::make(tb, segs);
}

PathEnsemble make_ensemble(const SimConfig& cfg) {
  cfg.validate();
  PathEnsemble ens;
  ens.n = cfg.n;
  ens.seed = cfg.seed;
  ens.paths.reserve(cfg.m);
  for (std::uint64_t r = 0; r < cfg.m; ++r) {
    Stream s = Stream::substream(cfg.seed, r);
    ens.paths.push_back(partial_sum_path(cfg, s));
  }
  return ens;
}

double hill_estimate(const std::vector<double>& sample, std::size_t k) {
  if (k < 1 || k >= sample.size())
    throw std::invalid_argument("hill_estimate: need 1 <= k < sample size");
  for (double v : sample)
    if (!(v > 0.0)) throw std::invalid_argument("hill_estimate: sample values must be positive");
  std::vector<double> s = sample;
  std::sort(s.begin(), s.end(), std::greater<double>());
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) acc += std::log(s[i] / s[k]);
  return static_cast<double>(k) / acc;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  double best = 0.0;
  while (i < a.size() || j < b.size()) {
    double v = i < a.size() && (j == b.size() || a[i] <= b[j]) ? a[i] : b[j];
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    best = std::max(best, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

}  // namespace skorohod
