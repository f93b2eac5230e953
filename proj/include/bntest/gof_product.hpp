#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bntest/sample_set.hpp"
#include "bntest/testers.hpp"

namespace bntest {

/** Product of independent Bernoulli coordinates over {0,1}^n. */
struct ProductModel {
  std::vector<double> means;
};

enum class GofThresholdMode { Chebyshev, MonteCarloNull };

/**
 * Goodness-of-fit configuration against a known product model:
 * distinguish P = Q from total variation at least eps. The Poisson
 * rate per coordinate is m = ceil(c_prime * sqrt(n) / eps^2) and
 * thresholds test against the slack-adjusted eps' = (1 - 2/c) * eps.
 */
struct GofConfig {
  double eps = 0.0;
  double c = 10.0;
  double c_prime = 15.0;
  std::uint64_t seed = 0;
  GofThresholdMode mode = GofThresholdMode::MonteCarloNull;
  int null_replicas = 500;

  std::int64_t poisson_rate(std::size_t n) const;
  /** Rows the sample supply must cover: ceil(2*e*m). */
  std::uint64_t required_rows(std::size_t n) const;
};

struct FlipResult {
  ProductModel model;
  std::vector<std::uint8_t> mask;  // 1 where the coordinate is complemented
};

/**
 * Complements every coordinate with mean strictly above 1/2, so all
 * means end up in [0, 1/2]. Total variation against any similarly
 * flipped source is unchanged.
 */
FlipResult preprocess_flip(const ProductModel& q);

struct XorNoiseResult {
  ProductModel model;
  std::vector<double> rates;  // per-coordinate noise rate, 0 where untouched
};

/**
 * Coordinates with mean below eps/(c*n) get independent Bernoulli noise
 * XORed in at rate eps/(c*n), moving the mean to q(1-r) + (1-q)r and
 * off the degenerate regime at a total variation cost of at most
 * 2*eps/c. Throws InvalidConfig when 2*eps/(c*n) exceeds 1.
 */
XorNoiseResult preprocess_xor_noise(const ProductModel& q, double eps,
                                    double c);

/** Applies a flip mask to a binary sample matrix. */
SampleSet apply_flip(const SampleSet& samples,
                     std::span<const std::uint8_t> mask);

/** XORs fresh Bernoulli(rates[i]) noise into column i. */
SampleSet apply_xor_noise(const SampleSet& samples,
                          std::span<const double> rates, std::uint64_t seed);

struct PoissonizedCounts {
  std::vector<std::int64_t> ones;   // ones among the first draws[i] rows of column i
  std::vector<std::int64_t> draws;  // M_i ~ Poisson(m)
  bool truncated = false;           // some M_i exceeded 2*e*m
};

/**
 * Poissonization: per coordinate, draws M_i ~ Poisson(m) and counts the
 * ones among the first M_i rows of that column. Requires at least
 * ceil(2*e*m) rows (InsufficientSamples otherwise); when some M_i
 * exceeds 2*e*m the result is flagged truncated and the counts are
 * computed with M_i clamped to the supply.
 */
PoissonizedCounts poissonized_counts(const SampleSet& samples, std::int64_t m,
                                     std::uint64_t seed);

/**
 * Z = sum_i ((N_i - m q_i)^2 - N_i) / (m q_i). With N_i ~ Poisson(m p_i)
 * its mean is m * sum_i (p_i - q_i)^2 / q_i. Throws ZeroQ when some
 * q_i is zero.
 */
double z_statistic(std::span<const std::int64_t> ones, std::int64_t m,
                   const ProductModel& q);

/**
 * End-to-end goodness-of-fit against a known product model: flip and
 * noise preprocessing, Poissonized counts, Z statistic, threshold per
 * config.mode. A truncated Poissonization yields a uniformly random
 * verdict. Far exactly when Z exceeds the threshold (when not truncated).
 */
Verdict gof_product(const SampleSet& samples_p, const ProductModel& q,
                    const GofConfig& config);

/** Exact squared Hellinger distance between product models. */
double product_hellinger_sq(const ProductModel& p, const ProductModel& q);

/**
 * Exact total variation between product models by convolving
 * per-coordinate probability pairs and merging numerically equal
 * states. Exact for small n or few distinct coordinate types; throws
 * DomainTooLarge when the state list would exceed `state_cap`.
 */
double product_total_variation(const ProductModel& p, const ProductModel& q,
                               std::size_t state_cap = std::size_t{1} << 22);

/** Independent rows from a product model; reproducible given seed. */
SampleSet sample_product(const ProductModel& model, std::size_t count,
                         std::uint64_t seed);

}  // namespace bntest
