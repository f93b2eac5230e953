#pragma once

#include <span>
#include <vector>

#include "bntest/factorization.hpp"
#include "bntest/tree.hpp"

namespace bntest {

/**
 * Nodes of `prefix` whose tree path to `v` contains no other prefix
 * node strictly inside it. Computed by graph search from v through
 * non-prefix nodes; result sorted ascending. Throws NodeInPrefix when
 * v itself is in the prefix.
 */
std::vector<int> dependent_set(const Tree& tree, std::span<const int> prefix,
                               int v);

/**
 * A variable order over two trees plus, per position, the dependent
 * sets in each tree and their union. Conditioning each variable on
 * pi[i] yields a factorization that both tree-Markov distributions
 * respect; the construction keeps every |pi[i]| at most 5.
 */
struct OrderingResult {
  std::vector<int> order;
  std::vector<std::vector<int>> dep_p;
  std::vector<std::vector<int>> dep_q;
  std::vector<std::vector<int>> pi;
};

struct OrderingOptions {
  /**
   * Re-derives the component partition from scratch after every pick
   * and cross-checks the incremental bookkeeping and the boundary-size
   * budget (all components at most 2 boundary nodes, at most one
   * exception of 3 across both trees). Meant for tests; quadratic cost.
   */
  bool check_invariants = false;
};

OrderingResult order_two_trees(const Tree& tree_p, const Tree& tree_q,
                               const OrderingOptions& options = {});

/** Singleton blocks in the constructed order, conditioned on pi[i]. */
Factorization two_tree_factorization(const Tree& tree_p, const Tree& tree_q);

}  // namespace bntest
