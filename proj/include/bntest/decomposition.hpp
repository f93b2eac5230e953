#pragma once

#include "bntest/dense_distribution.hpp"
#include "bntest/factorization.hpp"

namespace bntest {

/**
 * Per-block squared Hellinger terms for a pair of joints under a common
 * factorization. When both distributions respect the factorization the
 * term sum dominates the joint squared Hellinger distance, i.e. slack
 * is nonnegative up to rounding; slack is reported signed either way.
 */
struct DecompositionReport {
  std::vector<double> terms;  // H^2 over members+given, per block
  double total_h_sq = 0.0;    // H^2 between the full joints
  double slack = 0.0;         // sum of terms minus total
  int argmax_block = -1;      // block with the largest term
};

DecompositionReport decompose(const DenseDistribution& p,
                              const DenseDistribution& q,
                              const Factorization& fact);

struct LocalizationResult {
  int block = -1;       // block with the largest term
  double term = 0.0;    // its squared Hellinger value
  bool premise_met = false;  // whether total H^2 reached eps
};

/**
 * Finds a block whose term certifies separation: when the joints
 * respect the factorization and H^2(P,Q) >= eps, the returned block's
 * term is at least eps divided by the block count. If the premise
 * fails the argmax block is returned with premise_met = false.
 */
LocalizationResult localize(const DenseDistribution& p,
                            const DenseDistribution& q,
                            const Factorization& fact, double eps);

}  // namespace bntest
