#pragma once

#include <string>
#include <vector>

namespace bntest {

/**
 * Directed graph given by per-node parent lists. Parent lists are
 * normalized to ascending order at construction; self-loops and
 * duplicates are rejected. Acyclicity is checked by topological_order.
 */
class Dag {
 public:
  Dag(int node_count, std::vector<std::vector<int>> parents,
      std::vector<std::string> labels = {});

  int node_count() const { return node_count_; }
  const std::vector<int>& parents(int v) const;
  const std::vector<std::vector<int>>& parents() const { return parents_; }
  const std::string& label(int v) const;
  int max_in_degree() const;

 private:
  int node_count_ = 0;
  std::vector<std::vector<int>> parents_;
  std::vector<std::string> labels_;
};

/**
 * Topological order with ties broken by ascending node index.
 * Throws CycleDetected when the graph has a directed cycle.
 */
std::vector<int> topological_order(const Dag& dag);

}  // namespace bntest
