#include "bntest/tree.hpp"

#include <algorithm>
#include <string>

#include "bntest/errors.hpp"

namespace bntest {

Tree::Tree(int node_count, std::span<const std::pair<int, int>> edges, int root)
    : node_count_(node_count), root_(root) {
  if (node_count_ < 1) throw InvalidModel("tree needs at least one node");
  if (root_ < 0 || root_ >= node_count_) throw InvalidModel("root out of range");
  if (edges.size() != static_cast<std::size_t>(node_count_ - 1))
    throw InvalidModel("tree on " + std::to_string(node_count_) +
                       " nodes needs exactly " + std::to_string(node_count_ - 1) +
                       " edges");
  adj_.assign(static_cast<std::size_t>(node_count_), {});
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= node_count_ || v < 0 || v >= node_count_)
      throw UnknownVariable("edge endpoint out of range");
    if (u == v) throw InvalidModel("self-loop edge");
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    if (std::adjacent_find(list.begin(), list.end()) != list.end())
      throw InvalidModel("duplicate edge");
  }

  parent_.assign(static_cast<std::size_t>(node_count_), -1);
  depth_.assign(static_cast<std::size_t>(node_count_), -1);
  std::vector<int> stack{root_};
  depth_[static_cast<std::size_t>(root_)] = 0;
  int visited = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    ++visited;
    for (int w : adj_[static_cast<std::size_t>(v)]) {
      if (depth_[static_cast<std::size_t>(w)] >= 0) continue;
      depth_[static_cast<std::size_t>(w)] = depth_[static_cast<std::size_t>(v)] + 1;
      parent_[static_cast<std::size_t>(w)] = v;
      stack.push_back(w);
    }
  }
  if (visited != node_count_) throw InvalidModel("edge set is not connected");
}

const std::vector<int>& Tree::neighbors(int v) const {
  if (v < 0 || v >= node_count_) throw UnknownVariable("node index out of range");
  return adj_[static_cast<std::size_t>(v)];
}

int Tree::lca(int a, int b) const {
  if (a < 0 || a >= node_count_ || b < 0 || b >= node_count_)
    throw UnknownVariable("node index out of range");
  while (depth(a) > depth(b)) a = parent(a);
  while (depth(b) > depth(a)) b = parent(b);
  while (a != b) {
    a = parent(a);
    b = parent(b);
  }
  return a;
}

}  // namespace bntest
