#include "bntest/dag.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "bntest/errors.hpp"

namespace bntest {

Dag::Dag(int node_count, std::vector<std::vector<int>> parents,
         std::vector<std::string> labels)
    : node_count_(node_count), parents_(std::move(parents)), labels_(std::move(labels)) {
  if (node_count_ < 0) throw InvalidModel("node count must be nonnegative");
  if (parents_.size() != static_cast<std::size_t>(node_count_))
    throw InvalidModel("parent list count does not match node count");
  for (int v = 0; v < node_count_; ++v) {
    auto& ps = parents_[v];
    std::sort(ps.begin(), ps.end());
    if (std::adjacent_find(ps.begin(), ps.end()) != ps.end())
      throw InvalidModel("duplicate parent at node " + std::to_string(v));
    for (int p : ps) {
      if (p < 0 || p >= node_count_)
        throw UnknownVariable("parent index out of range at node " +
                              std::to_string(v));
      if (p == v) throw InvalidModel("self-loop at node " + std::to_string(v));
    }
  }
  if (labels_.empty()) {
    labels_.reserve(static_cast<std::size_t>(node_count_));
    for (int v = 0; v < node_count_; ++v) labels_.push_back("X" + std::to_string(v));
  } else if (labels_.size() != static_cast<std::size_t>(node_count_)) {
    throw InvalidModel("label count does not match node count");
  }
}

const std::vector<int>& Dag::parents(int v) const {
  if (v < 0 || v >= node_count_) throw UnknownVariable("node index out of range");
  return parents_[static_cast<std::size_t>(v)];
}

const std::string& Dag::label(int v) const {
  if (v < 0 || v >= node_count_) throw UnknownVariable("node index out of range");
  return labels_[static_cast<std::size_t>(v)];
}

int Dag::max_in_degree() const {
  std::size_t best = 0;
  for (const auto& ps : parents_) best = std::max(best, ps.size());
  return static_cast<int>(best);
}

std::vector<int> topological_order(const Dag& dag) {
  const int n = dag.node_count();
  std::vector<int> indegree(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    indegree[static_cast<std::size_t>(v)] = static_cast<int>(dag.parents(v).size());
    for (int p : dag.parents(v)) children[static_cast<std::size_t>(p)].push_back(v);
  }
  // Min-heap makes the order unique: among ready nodes, lowest index first.
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int v = 0; v < n; ++v)
    if (indegree[static_cast<std::size_t>(v)] == 0) ready.push(v);

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int c : children[static_cast<std::size_t>(v)])
      if (--indegree[static_cast<std::size_t>(c)] == 0) ready.push(c);
  }
  if (order.size() != static_cast<std::size_t>(n))
    throw CycleDetected("graph contains a directed cycle");
  return order;
}

}  // namespace bntest
