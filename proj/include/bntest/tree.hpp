#pragma once

#include <span>
#include <utility>
#include <vector>

namespace bntest {

/**
 * Undirected tree on nodes 0..n-1, held as sorted adjacency lists and
 * rooted (node 0 by default). Construction rejects inputs that are not
 * connected acyclic graphs on the full node set.
 */
class Tree {
 public:
  Tree(int node_count, std::span<const std::pair<int, int>> edges, int root = 0);

  int node_count() const { return node_count_; }
  int root() const { return root_; }
  const std::vector<int>& neighbors(int v) const;

  /** Parent under the rooting; -1 at the root. */
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }

  /** Lowest common ancestor under the rooting. */
  int lca(int a, int b) const;

 private:
  int node_count_ = 0;
  int root_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<int> parent_;
  std::vector<int> depth_;
};

}  // namespace bntest
