#pragma once

#include <cstdint>
#include <span>

namespace bntest {

enum class Decision { Equal, Far };

/**
 * Per-invocation configuration of the two-sample closeness subtest:
 * distinguish identical sources from sources at squared Hellinger
 * distance at least eps_sq, with error probability at most eta.
 */
struct SubtestConfig {
  double eps_sq = 0.0;
  double eta = 1.0 / 3.0;
  int permutations = 200;           // calibration re-splits R
  std::uint64_t sample_budget = 0;  // 0: defer to required_samples
  std::uint64_t calibration_seed = 0;
};

struct SubtestVerdict {
  Decision decision = Decision::Equal;
  double statistic = 0.0;
  double threshold = 0.0;
  double pvalue = 0.0;
  /** Set when fewer samples than the budget were supplied; the verdict
      still stands but its error guarantee is degraded. */
  bool insufficient_samples = false;
};

/**
 * Per-distribution sample budget sufficient for the subtest over a
 * domain of the given size:
 *   ceil(C * min(D^{2/3}/eps^{8/3}, D^{3/4}/eps^2) * ln(1/eta) * (1 + ln D))
 * with eps = sqrt(eps_sq). Natural logarithms; monotone in D.
 */
std::uint64_t required_samples(std::uint64_t domain_size, double eps_sq,
                               double eta, double constant = 20.0);

/**
 * Closeness statistic sum_x ((a_x-b_x)^2 - a_x - b_x) / (a_x+b_x) over
 * cells with a_x + b_x > 0. Zero-mean under equal sources for equal
 * nominal sample sizes; grows with the squared gap between sources.
 */
double closeness_statistic(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b);

/**
 * Two-sample closeness subtest with permutation calibration: the
 * threshold is the (1-eta) empirical quantile of the statistic over R
 * uniformly random fixed-size re-splits of the pooled counts, and the
 * verdict is Far exactly when the observed statistic exceeds it.
 */
SubtestVerdict hellinger_subtest(std::span<const std::uint64_t> counts_a,
                                 std::span<const std::uint64_t> counts_b,
                                 const SubtestConfig& config);

/** Convenience overload for raw symbol lists over {0,...,domain-1}. */
SubtestVerdict hellinger_subtest(std::span<const std::uint32_t> symbols_a,
                                 std::span<const std::uint32_t> symbols_b,
                                 std::uint64_t domain,
                                 const SubtestConfig& config);

}  // namespace bntest
