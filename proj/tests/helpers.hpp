#pragma once

// Shared builders for randomized test instances. Everything is
// deterministic given the Rng handed in.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "bntest/bayes_net.hpp"
#include "bntest/dense_distribution.hpp"
#include "bntest/rng.hpp"
#include "bntest/tree.hpp"

namespace bntest::testutil {

/** Random full-support distribution; `floor` biases cells away from 0. */
inline DenseDistribution random_distribution(std::vector<int> scope,
                                             std::vector<int> sizes, Rng& rng,
                                             double floor = 0.01) {
  std::size_t cells = 1;
  for (int s : sizes) cells *= static_cast<std::size_t>(s);
  std::vector<double> probs(cells);
  double total = 0.0;
  for (auto& p : probs) {
    p = floor + rng.uniform();
    total += p;
  }
  for (auto& p : probs) p /= total;
  return DenseDistribution(std::move(scope), std::move(sizes),
                           std::move(probs));
}

inline std::vector<std::vector<double>> random_cpt(const Dag& dag,
                                                   const std::vector<int>& arity,
                                                   Rng& rng,
                                                   double floor = 0.05) {
  std::vector<std::vector<double>> cpt(static_cast<std::size_t>(dag.node_count()));
  for (int v = 0; v < dag.node_count(); ++v) {
    std::size_t rows = 1;
    for (int p : dag.parents(v))
      rows *= static_cast<std::size_t>(arity[static_cast<std::size_t>(p)]);
    const auto k = static_cast<std::size_t>(arity[static_cast<std::size_t>(v)]);
    auto& table = cpt[static_cast<std::size_t>(v)];
    table.resize(rows * k);
    for (std::size_t r = 0; r < rows; ++r) {
      double total = 0.0;
      for (std::size_t s = 0; s < k; ++s) {
        table[r * k + s] = floor + rng.uniform();
        total += table[r * k + s];
      }
      for (std::size_t s = 0; s < k; ++s) table[r * k + s] /= total;
    }
  }
  return cpt;
}

/** Random DAG on n nodes: each node draws up to `max_parents` parents
    among smaller indices. */
inline Dag random_dag(int n, int max_parents, Rng& rng) {
  std::vector<std::vector<int>> parents(static_cast<std::size_t>(n));
  for (int v = 1; v < n; ++v) {
    const int want = static_cast<int>(
        rng.below(static_cast<std::uint64_t>(std::min(max_parents, v)) + 1));
    std::vector<int> pool(static_cast<std::size_t>(v));
    for (int j = 0; j < v; ++j) pool[static_cast<std::size_t>(j)] = j;
    for (int j = 0; j < want; ++j) {
      const auto pick =
          j + static_cast<int>(rng.below(static_cast<std::uint64_t>(v - j)));
      std::swap(pool[static_cast<std::size_t>(j)],
                pool[static_cast<std::size_t>(pick)]);
    }
    parents[static_cast<std::size_t>(v)].assign(pool.begin(),
                                                pool.begin() + want);
  }
  return Dag(n, std::move(parents));
}

inline BayesNet random_net(const Dag& dag, const std::vector<int>& arity,
                           Rng& rng, double floor = 0.05) {
  return BayesNet(dag, arity, random_cpt(dag, arity, rng, floor));
}

/** Uniform random labeled tree via a random parent for each node. */
inline Tree random_tree(int n, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(n - 1));
  for (int v = 1; v < n; ++v)
    edges.push_back({static_cast<int>(rng.below(static_cast<std::uint64_t>(v))),
                     v});
  return Tree(n, edges);
}

/** Bayes net whose DAG is `tree` rooted at 0 (so the joint is Markov
    on the tree). */
inline BayesNet tree_markov_net(const Tree& tree, int k, Rng& rng,
                                double floor = 0.05) {
  const int n = tree.node_count();
  std::vector<std::vector<int>> parents(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    if (v != tree.root()) parents[static_cast<std::size_t>(v)] = {tree.parent(v)};
  Dag dag(n, std::move(parents));
  std::vector<int> arity(static_cast<std::size_t>(n), k);
  return random_net(dag, arity, rng, floor);
}

/** Copy of `net` with `delta` probability mass moved inside one row. */
inline BayesNet shift_one_row(const BayesNet& net, int v, std::size_t row,
                              double delta) {
  auto cpt = net.cpt();
  const auto k =
      static_cast<std::size_t>(net.arity()[static_cast<std::size_t>(v)]);
  auto& table = cpt[static_cast<std::size_t>(v)];
  double& from = table[row * k];
  double& to = table[row * k + 1];
  const double moved = std::min(delta, from);
  from -= moved;
  to += moved;
  return BayesNet(net.dag(), net.arity(), std::move(cpt));
}

}  // namespace bntest::testutil
