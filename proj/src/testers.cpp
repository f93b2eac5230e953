#include "bntest/testers.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "bntest/errors.hpp"
#include "bntest/rng.hpp"

namespace bntest {

namespace {

void check_inputs(const SampleSet& samples_p, const SampleSet& samples_q,
                  double eps) {
  if (samples_p.cols() != samples_q.cols() ||
      samples_p.arity() != samples_q.arity())
    throw ShapeMismatch("sample sets disagree on columns or arities");
  if (samples_p.rows() != samples_q.rows())
    throw ShapeMismatch("sample sets must have equal nominal sizes");
  if (!(eps > 0.0 && eps <= 1.0)) throw InvalidConfig("eps must lie in (0,1]");
}

SubtestVerdict run_default(std::span<const std::uint64_t> counts_p,
                           std::span<const std::uint64_t> counts_q,
                           const SubtestConfig& config) {
  return hellinger_subtest(counts_p, counts_q, config);
}

/**
 * Shared drive loop: projects both corpora onto each variable set,
 * runs the subtest, and aggregates. Far wins; the witness is the Far
 * set with the largest margin over its threshold.
 */
Verdict run_subtests(const SampleSet& samples_p, const SampleSet& samples_q,
                     const std::vector<std::vector<int>>& sets, double eps_sq,
                     double eta, const TesterOptions& options, bool truncated) {
  Verdict verdict;
  verdict.truncated = truncated;
  verdict.samples_used = samples_p.rows() + samples_q.rows();
  verdict.subtest_log.reserve(sets.size());
  double best_margin = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& vars = sets[i];
    const auto counts_p = empirical_counts(samples_p, vars);
    const auto counts_q = empirical_counts(samples_q, vars);
    SubtestConfig config;
    config.eps_sq = eps_sq;
    config.eta = eta;
    config.permutations = options.permutations;
    config.sample_budget = options.sample_budget;
    config.calibration_seed = derive_seed(options.seed, "tester-subtest", i);
    const SubtestVerdict sub =
        options.runner ? options.runner(vars, counts_p, counts_q, config)
                       : run_default(counts_p, counts_q, config);
    verdict.subtest_log.push_back(SubtestLogEntry{
        vars, sub.statistic, sub.threshold, sub.pvalue, sub.decision,
        sub.insufficient_samples});
    if (sub.decision == Decision::Far) {
      verdict.decision = Decision::Far;
      const double margin = sub.statistic - sub.threshold;
      if (margin > best_margin) {
        best_margin = margin;
        verdict.witness = vars;
      }
    }
  }
  return verdict;
}

std::uint64_t subset_count(int n, int k) {
  // C(n,k) with saturation well above any usable subtest budget.
  constexpr std::uint64_t kCap = std::numeric_limits<std::uint64_t>::max() / 4;
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    if (c > kCap / static_cast<std::uint64_t>(n - k + i)) return kCap;
    c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return c;
}

/**
 * Appends k-subsets of {0..n-1} in lexicographic order until `limit`
 * sets are collected; returns false if enumeration was cut short.
 */
bool enumerate_subsets(int n, int k, std::size_t limit,
                       std::vector<std::vector<int>>& out) {
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (out.size() == limit) return false;
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return true;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

Verdict test_known_structure(const SampleSet& samples_p,
                             const SampleSet& samples_q, const Dag& dag,
                             double eps, const TesterOptions& options) {
  check_inputs(samples_p, samples_q, eps);
  if (samples_p.cols() != dag.node_count())
    throw ShapeMismatch("sample columns do not match graph nodes");
  const int n = dag.node_count();
  if (static_cast<std::size_t>(n) > options.max_subtests &&
      !options.allow_truncation)
    throw BudgetExceeded("subtest budget below one per node");

  std::vector<std::vector<int>> sets;
  sets.reserve(static_cast<std::size_t>(n));
  bool complete = true;
  for (int v = 0; v < n; ++v) {
    if (sets.size() == options.max_subtests) {
      complete = false;
      break;
    }
    std::vector<int> vars(dag.parents(v));
    vars.push_back(v);
    std::sort(vars.begin(), vars.end());
    sets.push_back(std::move(vars));
  }
  const double eps_sq = eps * eps / (2.0 * static_cast<double>(n));
  const double eta = 1.0 / (3.0 * static_cast<double>(n));
  return run_subtests(samples_p, samples_q, sets, eps_sq, eta, options,
                      !complete);
}

Verdict test_unknown_structure(const SampleSet& samples_p,
                               const SampleSet& samples_q, int max_in_degree,
                               double eps, const TesterOptions& options) {
  check_inputs(samples_p, samples_q, eps);
  const int n = samples_p.cols();
  if (max_in_degree < 0 || max_in_degree >= n)
    throw InvalidConfig("in-degree bound must lie in [0, n-1]");
  const int k = max_in_degree + 1;
  const std::uint64_t total = subset_count(n, k);
  if (total > options.max_subtests && !options.allow_truncation)
    throw BudgetExceeded("would need " + std::to_string(total) + " subtests");

  std::vector<std::vector<int>> sets;
  const bool complete = enumerate_subsets(n, k, options.max_subtests, sets);
  const double eps_sq = eps * eps / (2.0 * static_cast<double>(n));
  const double eta = 1.0 / (3.0 * static_cast<double>(total));
  return run_subtests(samples_p, samples_q, sets, eps_sq, eta, options,
                      !complete);
}

Verdict test_two_trees(const SampleSet& samples_p, const SampleSet& samples_q,
                       double eps, const TesterOptions& options) {
  check_inputs(samples_p, samples_q, eps);
  const int n = samples_p.cols();
  const int max_size = std::min(6, n);
  std::uint64_t total = 0;
  for (int k = 1; k <= max_size; ++k) total += subset_count(n, k);
  if (total > options.max_subtests && !options.allow_truncation)
    throw BudgetExceeded("would need " + std::to_string(total) + " subtests");

  std::vector<std::vector<int>> sets;
  bool complete = true;
  for (int k = 1; k <= max_size && complete; ++k)
    complete = enumerate_subsets(n, k, options.max_subtests, sets);
  const double eps_sq = eps * eps / (2.0 * static_cast<double>(n));
  const double eta = 1.0 / (3.0 * static_cast<double>(total));
  return run_subtests(samples_p, samples_q, sets, eps_sq, eta, options,
                      !complete);
}

}  // namespace bntest
