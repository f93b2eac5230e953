#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bntest/dag.hpp"
#include "bntest/dense_distribution.hpp"
#include "bntest/sample_set.hpp"

namespace bntest {

/**
 * Discrete Bayesian network: a DAG plus one conditional probability
 * table per node. Table v is row-major with one row per parent
 * configuration and arity[v] columns; rows are keyed by the shared
 * mixed-radix encoding over the (ascending) parent ids. Every row must
 * sum to 1 within 1e-12.
 */
class BayesNet {
 public:
  BayesNet(Dag dag, std::vector<int> arity,
           std::vector<std::vector<double>> cpt);

  const Dag& dag() const { return dag_; }
  int node_count() const { return dag_.node_count(); }
  const std::vector<int>& arity() const { return arity_; }
  const std::vector<std::vector<double>>& cpt() const { return cpt_; }

  std::size_t parent_rows(int v) const;
  std::span<const double> cpt_row(int v, std::size_t row) const;

  /** Row index of node v's table under a full assignment (by node id). */
  std::size_t parent_config_index(int v, std::span<const int> assignment) const;

  /** Probability of a full assignment: the product of its CPT entries. */
  double probability(std::span<const int> assignment) const;

 private:
  Dag dag_;
  std::vector<int> arity_;
  std::vector<std::vector<double>> cpt_;
};

/**
 * Exact joint table over all nodes (scope 0..n-1). Throws
 * DomainTooLarge when the joint domain exceeds `cap`.
 */
DenseDistribution joint_distribution(const BayesNet& net,
                                     std::size_t cap = kDefaultDomainCap);

/** Ancestral sampling in topological order; reproducible given seed. */
SampleSet sample(const BayesNet& net, std::size_t count, std::uint64_t seed);

}  // namespace bntest
