#include "bntest/factorization.hpp"

#include <algorithm>
#include <string>

#include "bntest/errors.hpp"

namespace bntest {

void validate_factorization(const Factorization& fact, int n) {
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::size_t covered = 0;
  for (std::size_t l = 0; l < fact.blocks.size(); ++l) {
    const auto& block = fact.blocks[l];
    if (block.members.empty())
      throw InvalidFactorization("block " + std::to_string(l) + " is empty");
    for (int v : block.given) {
      if (v < 0 || v >= n)
        throw InvalidFactorization("conditioning variable out of range");
      if (!seen[static_cast<std::size_t>(v)])
        throw InvalidFactorization(
            "block " + std::to_string(l) +
            " conditions on a variable outside earlier blocks");
    }
    if (l == 0 && !block.given.empty())
      throw InvalidFactorization("first block must have no conditioning set");
    for (int v : block.members) {
      if (v < 0 || v >= n)
        throw InvalidFactorization("block variable out of range");
      if (seen[static_cast<std::size_t>(v)])
        throw InvalidFactorization("variable " + std::to_string(v) +
                                   " appears in two blocks");
    }
    for (int v : block.members) {
      seen[static_cast<std::size_t>(v)] = 1;
      ++covered;
    }
  }
  if (covered != static_cast<std::size_t>(n))
    throw InvalidFactorization("blocks do not cover every variable");
}

Factorization neighborhood_factorization(const Dag& dag) {
  Factorization fact;
  fact.blocks.reserve(static_cast<std::size_t>(dag.node_count()));
  for (int v : topological_order(dag))
    fact.blocks.push_back(FactorBlock{{v}, dag.parents(v)});
  return fact;
}

namespace {

std::vector<int> sorted_union(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ConditionalFactorEvaluator::ConditionalFactorEvaluator(
    const DenseDistribution& dist, const Factorization& fact)
    : n_(static_cast<int>(dist.scope().size())) {
  validate_factorization(fact, n_);
  for (std::size_t i = 0; i < dist.scope().size(); ++i)
    if (dist.scope()[i] != static_cast<int>(i))
      throw ScopeMismatch("evaluator requires a full joint with scope 0..n-1");
  tables_.reserve(fact.blocks.size());
  for (const auto& block : fact.blocks) {
    BlockTables t{marginal(dist, sorted_union(block.members, block.given)), {}};
    if (!block.given.empty()) t.given.push_back(marginal(dist, block.given));
    tables_.push_back(std::move(t));
  }
}

double ConditionalFactorEvaluator::eval(std::span<const int> assignment) const {
  if (assignment.size() != static_cast<std::size_t>(n_))
    throw ScopeMismatch("assignment must cover all variables");
  double prod = 1.0;
  std::vector<int> sub;
  for (const auto& t : tables_) {
    sub.clear();
    for (int v : t.joint.scope()) sub.push_back(assignment[static_cast<std::size_t>(v)]);
    const double num = t.joint.at(sub);
    if (t.given.empty()) {
      prod *= num;
      continue;
    }
    sub.clear();
    for (int v : t.given.front().scope())
      sub.push_back(assignment[static_cast<std::size_t>(v)]);
    const double den = t.given.front().at(sub);
    if (den == 0.0) return 0.0;  // conditioning event never happens
    prod *= num / den;
  }
  return prod;
}

double conditional_factor_eval(const DenseDistribution& dist,
                               const Factorization& fact,
                               std::span<const int> assignment) {
  return ConditionalFactorEvaluator(dist, fact).eval(assignment);
}

}  // namespace bntest
