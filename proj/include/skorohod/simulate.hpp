#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "skorohod/diagnostics.hpp"
#include "skorohod/nested_path.hpp"

namespace skorohod {

struct SimConfig {
  double alpha = 1.5;          // tail index, in (0,2)
  std::size_t n = 1;           // time resolution
  std::size_t m = 1;           // replicates
  std::uint64_t seed = 0;
  double sign_balance = 0.5;   // probability of a positive sign

  // Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

// Seeded generator with cheap derived sub-streams. Replicate j of a run
// draws from substream(seed, j), so ensembles are reproducible and each
// replicate can be generated independently with identical output.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : eng_(seed) {}
  static Stream substream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next_u64() { return eng_(); }
  // 53-bit uniform on the open interval (0,1): ((u >> 11) + 0.5) * 2^-53.
  double uniform01() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53; }

 private:
  std::mt19937_64 eng_;
};

// One heavy-tailed increment: sign * xi * 1_{[U,1]} with xi Pareto(alpha)
// via inverse transform U0^(-1/alpha), sign +1 with probability
// sign_balance, U uniform. Draw order is pinned (xi, sign, U) so streams
// replay identically.
StepFunction sample_increment(const SimConfig& cfg, Stream& stream);

// Partial-sum path: t-breakpoints {i/n}, value a_n^{-1} * (X_1 + ... + X_k)
// on [k/n, (k+1)/n), a_n = n^{1/alpha}; starts at the zero function.
NestedPath partial_sum_path(const SimConfig& cfg, Stream& stream);

// m replicates, replicate j on substream(seed, j); label n and seed are
// recorded in the result.
PathEnsemble make_ensemble(const SimConfig& cfg);

// Hill estimator over the top k order statistics: inverse of the mean of
// log(X_(i) / X_(k+1)), 1 <= k < sample size, all values positive.
double hill_estimate(const std::vector<double>& sample, std::size_t k);

// sup distance between the two empirical distribution functions.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace skorohod
