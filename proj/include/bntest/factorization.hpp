#pragma once

#include <span>
#include <vector>

#include "bntest/dag.hpp"
#include "bntest/dense_distribution.hpp"

namespace bntest {

/**
 * One block of a sequential factorization: the block's variables and
 * the earlier variables it is conditioned on.
 */
struct FactorBlock {
  std::vector<int> members;
  std::vector<int> given;
};

/**
 * Ordered blocks (S_1, G_1), ..., (S_L, G_L) with pairwise-disjoint
 * members covering all variables, G_1 empty, and each G_l contained in
 * the union of earlier members. A distribution respects the
 * factorization when it equals the product of the induced conditionals.
 */
struct Factorization {
  std::vector<FactorBlock> blocks;
};

/** Throws InvalidFactorization unless `fact` is valid over n variables. */
void validate_factorization(const Factorization& fact, int n);

/**
 * Singleton blocks in topological order, each conditioned on its
 * parents. Every Bayesian network respects this factorization of its
 * own DAG.
 */
Factorization neighborhood_factorization(const Dag& dag);

/**
 * Evaluates the product of block conditionals at full assignments.
 * Block marginals are computed once at construction. A conditioning
 * event of probability zero makes the whole factor zero.
 */
class ConditionalFactorEvaluator {
 public:
  ConditionalFactorEvaluator(const DenseDistribution& dist,
                             const Factorization& fact);

  /** `assignment` is indexed by variable id over the full scope. */
  double eval(std::span<const int> assignment) const;

 private:
  struct BlockTables {
    DenseDistribution joint;            // over members + given
    std::vector<DenseDistribution> given;  // size 0 or 1
  };
  std::vector<BlockTables> tables_;
  int n_ = 0;
};

/** One-shot convenience wrapper around ConditionalFactorEvaluator. */
double conditional_factor_eval(const DenseDistribution& dist,
                               const Factorization& fact,
                               std::span<const int> assignment);

}  // namespace bntest
