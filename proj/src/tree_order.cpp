#include "bntest/tree_order.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "bntest/errors.hpp"

namespace bntest {

std::vector<int> dependent_set(const Tree& tree, std::span<const int> prefix,
                               int v) {
  const int n = tree.node_count();
  if (v < 0 || v >= n) throw UnknownVariable("node index out of range");
  std::vector<char> in_prefix(static_cast<std::size_t>(n), 0);
  for (int u : prefix) {
    if (u < 0 || u >= n) throw UnknownVariable("prefix node out of range");
    in_prefix[static_cast<std::size_t>(u)] = 1;
  }
  if (in_prefix[static_cast<std::size_t>(v)])
    throw NodeInPrefix("query node is in the prefix");

  // A prefix node qualifies exactly when it is reachable from v without
  // crossing another prefix node, i.e. it sits on the frontier of the
  // search below.
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{v};
  visited[static_cast<std::size_t>(v)] = 1;
  std::vector<int> found;
  while (!stack.empty()) {
    const int w = stack.back();
    stack.pop_back();
    for (int x : tree.neighbors(w)) {
      if (visited[static_cast<std::size_t>(x)]) continue;
      visited[static_cast<std::size_t>(x)] = 1;
      if (in_prefix[static_cast<std::size_t>(x)])
        found.push_back(x);
      else
        stack.push_back(x);
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

namespace {

struct Component {
  std::vector<int> nodes;
  std::vector<int> boundary;  // picked nodes adjacent to the component, sorted
  int top = -1;               // unique node whose tree parent is picked or absent
};

/**
 * Incremental partition of one tree's unpicked nodes into connected
 * components. Picking a node splits only its own component; boundaries
 * never change elsewhere because boundaries contain picked nodes only.
 */
class ComponentState {
 public:
  ComponentState(const Tree& tree, const std::vector<char>& picked)
      : tree_(&tree), picked_(&picked) {
    const int n = tree.node_count();
    Component all;
    all.nodes.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) all.nodes[static_cast<std::size_t>(v)] = v;
    all.top = tree.root();
    comps_.push_back(std::move(all));
    comp_of_.assign(static_cast<std::size_t>(n), 0);
  }

  int comp_id(int v) const { return comp_of_[static_cast<std::size_t>(v)]; }
  const Component& comp(int id) const {
    return comps_[static_cast<std::size_t>(id)];
  }

  /** Splits x's component; `picked_` must already mark x. Returns new ids. */
  std::vector<int> split_at(int x) {
    const int old_id = comp_of_[static_cast<std::size_t>(x)];
    comp_of_[static_cast<std::size_t>(x)] = -1;
    std::vector<int> created;
    for (int y : tree_->neighbors(x)) {
      if ((*picked_)[static_cast<std::size_t>(y)]) continue;
      if (comp_of_[static_cast<std::size_t>(y)] != old_id) continue;  // already moved
      const int id = static_cast<int>(comps_.size());
      Component piece;
      piece.top = y;
      std::vector<int> stack{y};
      comp_of_[static_cast<std::size_t>(y)] = id;
      while (!stack.empty()) {
        const int w = stack.back();
        stack.pop_back();
        piece.nodes.push_back(w);
        if (tree_->depth(w) < tree_->depth(piece.top)) piece.top = w;
        for (int z : tree_->neighbors(w)) {
          if ((*picked_)[static_cast<std::size_t>(z)]) {
            piece.boundary.push_back(z);
            continue;
          }
          if (comp_of_[static_cast<std::size_t>(z)] == id) continue;
          comp_of_[static_cast<std::size_t>(z)] = id;
          stack.push_back(z);
        }
      }
      std::sort(piece.boundary.begin(), piece.boundary.end());
      piece.boundary.erase(
          std::unique(piece.boundary.begin(), piece.boundary.end()),
          piece.boundary.end());
      comps_.push_back(std::move(piece));
      created.push_back(id);
    }
    return created;
  }

 private:
  const Tree* tree_;
  const std::vector<char>* picked_;
  std::vector<Component> comps_;
  std::vector<int> comp_of_;
};

/**
 * Case analysis choosing the next node inside the designated component.
 * Boundary nodes split into at most one parent of the component's top
 * and child-type nodes attached below; the pick keys on the number of
 * child-type nodes so every resulting piece has boundary size <= 2.
 */
int select_pick(const Tree& tree, const Component& comp) {
  const int parent_of_top = tree.parent(comp.top);
  std::vector<int> attach;
  for (int u : comp.boundary) {
    if (u == parent_of_top) continue;
    attach.push_back(tree.parent(u));
  }
  switch (attach.size()) {
    case 0:
      return *std::min_element(comp.nodes.begin(), comp.nodes.end());
    case 1:
      return attach[0];
    case 2:
      return tree.lca(attach[0], attach[1]);
    case 3: {
      const int cand[3] = {tree.lca(attach[0], attach[1]),
                           tree.lca(attach[0], attach[2]),
                           tree.lca(attach[1], attach[2])};
      int best = cand[0];
      for (int c : cand)
        if (tree.depth(c) > tree.depth(best) ||
            (tree.depth(c) == tree.depth(best) && c < best))
          best = c;
      return best;
    }
    default:
      throw Error("component boundary budget exceeded");
  }
}

void verify_state(const Tree& tree, const ComponentState& state,
                  const std::vector<char>& picked, int& exceptional_count) {
  const int n = tree.node_count();
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    if (picked[static_cast<std::size_t>(v)]) {
      if (state.comp_id(v) != -1) throw Error("picked node still assigned");
      continue;
    }
    if (visited[static_cast<std::size_t>(v)]) continue;
    // Fresh search reproduces one component and its boundary.
    std::vector<int> nodes, boundary, stack{v};
    visited[static_cast<std::size_t>(v)] = 1;
    while (!stack.empty()) {
      const int w = stack.back();
      stack.pop_back();
      nodes.push_back(w);
      for (int z : tree.neighbors(w)) {
        if (picked[static_cast<std::size_t>(z)]) {
          boundary.push_back(z);
          continue;
        }
        if (visited[static_cast<std::size_t>(z)]) continue;
        visited[static_cast<std::size_t>(z)] = 1;
        stack.push_back(z);
      }
    }
    std::sort(boundary.begin(), boundary.end());
    if (std::adjacent_find(boundary.begin(), boundary.end()) != boundary.end())
      throw Error("picked node adjacent to one component twice");
    if (boundary.size() > 3) throw Error("component boundary exceeds 3");
    if (boundary.size() == 3) ++exceptional_count;

    const int id = state.comp_id(v);
    const Component& comp = state.comp(id);
    std::vector<int> expect_nodes(comp.nodes), got_nodes(nodes);
    std::sort(expect_nodes.begin(), expect_nodes.end());
    std::sort(got_nodes.begin(), got_nodes.end());
    if (expect_nodes != got_nodes)
      throw Error("incremental component nodes drifted from scratch recompute");
    if (comp.boundary != boundary)
      throw Error("incremental boundary drifted from scratch recompute");
    int top = nodes.front();
    for (int w : nodes)
      if (tree.depth(w) < tree.depth(top)) top = w;
    if (comp.top != top) throw Error("incremental component top drifted");
    for (int w : nodes)
      if (state.comp_id(w) != id) throw Error("component id map inconsistent");
  }
}

std::vector<int> sorted_union(const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

}  // namespace

OrderingResult order_two_trees(const Tree& tree_p, const Tree& tree_q,
                               const OrderingOptions& options) {
  const int n = tree_p.node_count();
  if (tree_q.node_count() != n)
    throw NodeSetMismatch("trees have different node counts");

  std::vector<char> picked(static_cast<std::size_t>(n), 0);
  ComponentState state_p(tree_p, picked);
  ComponentState state_q(tree_q, picked);
  // (tree index, component id) of the single allowed boundary-3 component.
  std::optional<std::pair<int, int>> exceptional;

  OrderingResult result;
  result.order.reserve(static_cast<std::size_t>(n));
  result.dep_p.resize(static_cast<std::size_t>(n));
  result.dep_q.resize(static_cast<std::size_t>(n));
  result.pi.resize(static_cast<std::size_t>(n));

  for (int step = 0; step < n; ++step) {
    const Tree* tree = &tree_p;
    const ComponentState* state = &state_p;
    int comp_id = -1;
    if (exceptional) {
      if (exceptional->first == 1) {
        tree = &tree_q;
        state = &state_q;
      }
      comp_id = exceptional->second;
    } else {
      int v0 = 0;
      while (picked[static_cast<std::size_t>(v0)]) ++v0;
      comp_id = state_p.comp_id(v0);
    }

    const int x = select_pick(*tree, state->comp(comp_id));
    const auto i = static_cast<std::size_t>(step);
    result.order.push_back(x);
    result.dep_p[i] = state_p.comp(state_p.comp_id(x)).boundary;
    result.dep_q[i] = state_q.comp(state_q.comp_id(x)).boundary;
    result.pi[i] = sorted_union(result.dep_p[i], result.dep_q[i]);

    picked[static_cast<std::size_t>(x)] = 1;
    const auto new_p = state_p.split_at(x);
    const auto new_q = state_q.split_at(x);
    exceptional.reset();
    for (int id : new_p)
      if (state_p.comp(id).boundary.size() == 3) {
        if (exceptional) throw Error("two boundary-3 components spawned");
        exceptional = {{0, id}};
      }
    for (int id : new_q)
      if (state_q.comp(id).boundary.size() == 3) {
        if (exceptional) throw Error("two boundary-3 components spawned");
        exceptional = {{1, id}};
      }

    if (options.check_invariants) {
      int count3 = 0;
      verify_state(tree_p, state_p, picked, count3);
      verify_state(tree_q, state_q, picked, count3);
      if (count3 > 1) throw Error("more than one boundary-3 component");
      if (count3 != (exceptional ? 1 : 0))
        throw Error("exceptional-component tracking drifted");
    }
  }
  return result;
}

Factorization two_tree_factorization(const Tree& tree_p, const Tree& tree_q) {
  const OrderingResult ordering = order_two_trees(tree_p, tree_q);
  Factorization fact;
  fact.blocks.reserve(ordering.order.size());
  for (std::size_t i = 0; i < ordering.order.size(); ++i)
    fact.blocks.push_back(FactorBlock{{ordering.order[i]}, ordering.pi[i]});
  return fact;
}

}  // namespace bntest
