#include "bntest/decomposition.hpp"

#include <algorithm>

#include "bntest/divergence.hpp"
#include "bntest/errors.hpp"

namespace bntest {

namespace {

std::vector<int> block_scope(const FactorBlock& block) {
  std::vector<int> vars(block.members);
  vars.insert(vars.end(), block.given.begin(), block.given.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

}  // namespace

DecompositionReport decompose(const DenseDistribution& p,
                              const DenseDistribution& q,
                              const Factorization& fact) {
  if (p.scope() != q.scope() || p.sizes() != q.sizes())
    throw ScopeMismatch("joints must share scope and arities");
  validate_factorization(fact, static_cast<int>(p.scope().size()));

  DecompositionReport report;
  report.terms.reserve(fact.blocks.size());
  for (const auto& block : fact.blocks) {
    const auto vars = block_scope(block);
    const auto mp = marginal(p, vars);
    const auto mq = marginal(q, vars);
    report.terms.push_back(hellinger_sq(mp.probs(), mq.probs()));
  }
  report.total_h_sq = hellinger_sq(p.probs(), q.probs());
  double sum = 0.0;
  for (std::size_t l = 0; l < report.terms.size(); ++l) {
    sum += report.terms[l];
    if (report.argmax_block < 0 ||
        report.terms[l] > report.terms[static_cast<std::size_t>(report.argmax_block)])
      report.argmax_block = static_cast<int>(l);
  }
  report.slack = sum - report.total_h_sq;
  return report;
}

LocalizationResult localize(const DenseDistribution& p,
                            const DenseDistribution& q,
                            const Factorization& fact, double eps) {
  if (!(eps > 0.0 && eps <= 1.0))
    throw InvalidConfig("eps must lie in (0,1]");
  const DecompositionReport report = decompose(p, q, fact);
  LocalizationResult result;
  result.block = report.argmax_block;
  result.term = report.terms[static_cast<std::size_t>(report.argmax_block)];
  result.premise_met = report.total_h_sq >= eps;
  return result;
}

}  // namespace bntest
