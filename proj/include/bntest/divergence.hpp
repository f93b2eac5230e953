#pragma once

#include <span>

#include "bntest/dense_distribution.hpp"

namespace bntest {

enum class DivergenceKind { HellingerSq, TotalVariation, Kl, ChiSq };

struct DivergenceValue {
  DivergenceKind kind;
  double value;
};

/**
 * Squared Hellinger distance 1 - sum_k sqrt(p_k q_k), clamped to [0,1]
 * against floating-point drift. Inputs are probability vectors over the
 * same cell layout.
 */
double hellinger_sq(std::span<const double> p, std::span<const double> q);

/** Total variation distance, half the L1 difference. */
double total_variation(std::span<const double> p, std::span<const double> q);

/**
 * KL divergence sum_k p_k ln(p_k/q_k); terms with p_k = 0 contribute 0,
 * and the result is +infinity when some p_k > 0 has q_k = 0.
 */
double kl(std::span<const double> p, std::span<const double> q);

/**
 * Chi-square divergence sum_k (p_k - q_k)^2 / q_k; cells with
 * q_k = p_k = 0 contribute 0, and q_k = 0 < p_k gives +infinity.
 */
double chi_sq(std::span<const double> p, std::span<const double> q);

/** Overloads checking that both tables share scope and sizes
    (ScopeMismatch otherwise). */
double hellinger_sq(const DenseDistribution& p, const DenseDistribution& q);
double total_variation(const DenseDistribution& p, const DenseDistribution& q);
double kl(const DenseDistribution& p, const DenseDistribution& q);
double chi_sq(const DenseDistribution& p, const DenseDistribution& q);

/**
 * Upper bound (p-q)^2/2 * (1/q + 1/(1-q)) on the squared Hellinger
 * distance between Bernoulli(p) and Bernoulli(q). Requires q strictly
 * inside (0,1); throws DegenerateQ otherwise.
 */
double bernoulli_hellinger_bound(double p, double q);

/** Whether sqrt(1+t) >= 1 + t/2 - t^2/2 holds at t (requires t >= -1). */
bool sqrt_lower_bound_check(double t);

/** Squared Hellinger distance between Bernoulli(p) and Bernoulli(q). */
double bernoulli_hellinger_sq(double p, double q);

}  // namespace bntest
