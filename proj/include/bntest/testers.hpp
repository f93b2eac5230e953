#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bntest/dag.hpp"
#include "bntest/sample_set.hpp"
#include "bntest/subtest.hpp"

namespace bntest {

struct SubtestLogEntry {
  std::vector<int> vars;
  double statistic = 0.0;
  double threshold = 0.0;
  double pvalue = 0.0;
  Decision decision = Decision::Equal;
  bool insufficient_samples = false;
};

/**
 * Composite verdict: Far as soon as any subtest is Far; the witness is
 * the Far variable set with the largest statistic-threshold margin.
 */
struct Verdict {
  Decision decision = Decision::Equal;
  std::vector<int> witness;
  std::vector<SubtestLogEntry> subtest_log;
  std::uint64_t samples_used = 0;
  /** True when a compute budget cut the subtest enumeration short. */
  bool truncated = false;
};

/**
 * Pluggable subtest: receives the variable set under test and the two
 * projected count tables. Tests substitute an exact oracle here to
 * check composite behavior separately from subtest randomness.
 */
using SubtestRunner = std::function<SubtestVerdict(
    std::span<const int> vars, std::span<const std::uint64_t> counts_p,
    std::span<const std::uint64_t> counts_q, const SubtestConfig& config)>;

struct TesterOptions {
  std::uint64_t seed = 0;
  int permutations = 200;
  /** Per-subtest override for the required-sample check; 0 defers to
      required_samples. */
  std::uint64_t sample_budget = 0;
  /** Cap on the number of subtests; exceeding it throws BudgetExceeded
      unless allow_truncation is set, in which case enumeration stops
      there and the verdict is flagged truncated. */
  std::size_t max_subtests = 1'000'000;
  bool allow_truncation = false;
  SubtestRunner runner;  // empty: permutation-calibrated subtest
};

/**
 * Identity test for two sources sharing a known DAG: one subtest per
 * node over the node and its parents, with per-subtest separation
 * eps^2/(2n) and error budget 1/(3n). Both sample sets are projected
 * per subtest, so the whole test consumes one corpus per source.
 */
Verdict test_known_structure(const SampleSet& samples_p,
                             const SampleSet& samples_q, const Dag& dag,
                             double eps, const TesterOptions& options = {});

/**
 * Identity test when only a bound d on the in-degree is known: one
 * subtest per (d+1)-subset of variables, enumerated lexicographically,
 * with error budget 1/(3 * #subsets).
 */
Verdict test_unknown_structure(const SampleSet& samples_p,
                               const SampleSet& samples_q, int max_in_degree,
                               double eps, const TesterOptions& options = {});

/**
 * Identity test for two tree-Markov sources with unknown trees: one
 * subtest per variable subset of size at most 6 (sizes ascending,
 * lexicographic within a size), with error budget 1/(3 * #subsets).
 */
Verdict test_two_trees(const SampleSet& samples_p, const SampleSet& samples_q,
                       double eps, const TesterOptions& options = {});

}  // namespace bntest
