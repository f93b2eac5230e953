#include "bntest/subtest.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "bntest/errors.hpp"
#include "bntest/rng.hpp"

namespace bntest {

std::uint64_t required_samples(std::uint64_t domain_size, double eps_sq,
                               double eta, double constant) {
  if (domain_size < 1) throw InvalidConfig("domain size must be positive");
  if (!(eps_sq > 0.0 && eps_sq <= 1.0))
    throw InvalidConfig("eps_sq must lie in (0,1]");
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidConfig("eta must lie in (0,1)");
  if (!(constant > 0.0)) throw InvalidConfig("constant must be positive");
  const auto d = static_cast<double>(domain_size);
  const double eps = std::sqrt(eps_sq);
  const double branch = std::min(std::pow(d, 2.0 / 3.0) / std::pow(eps, 8.0 / 3.0),
                                 std::pow(d, 0.75) / eps_sq);
  const double value =
      constant * branch * std::log(1.0 / eta) * (1.0 + std::log(d));
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(value)));
}

double closeness_statistic(std::span<const std::uint64_t> a,
                           std::span<const std::uint64_t> b) {
  if (a.size() != b.size())
    throw DomainMismatch("count tables have different lengths");
  double t = 0.0;
  for (std::size_t x = 0; x < a.size(); ++x) {
    const auto ax = static_cast<double>(a[x]);
    const auto bx = static_cast<double>(b[x]);
    const double pooled = ax + bx;
    if (pooled == 0.0) continue;
    const double d = ax - bx;
    t += (d * d - ax - bx) / pooled;
  }
  return t;
}

SubtestVerdict hellinger_subtest(std::span<const std::uint64_t> counts_a,
                                 std::span<const std::uint64_t> counts_b,
                                 const SubtestConfig& config) {
  if (counts_a.size() != counts_b.size())
    throw DomainMismatch("count tables have different lengths");
  if (config.permutations < 1)
    throw InvalidConfig("permutation count must be at least 1");
  if (!(config.eta > 0.0 && config.eta < 1.0))
    throw InvalidConfig("eta must lie in (0,1)");

  std::uint64_t total_a = 0, total_b = 0;
  std::vector<std::uint64_t> pooled(counts_a.size());
  for (std::size_t x = 0; x < counts_a.size(); ++x) {
    total_a += counts_a[x];
    total_b += counts_b[x];
    pooled[x] = counts_a[x] + counts_b[x];
  }

  const std::uint64_t budget =
      config.sample_budget > 0
          ? config.sample_budget
          : required_samples(counts_a.size(), config.eps_sq, config.eta);

  SubtestVerdict verdict;
  verdict.insufficient_samples = std::min(total_a, total_b) < budget;
  verdict.statistic = closeness_statistic(counts_a, counts_b);

  // Permutation null: re-split the pooled counts into sides of the same
  // sizes uniformly at random. The side-A cell counts of such a re-split
  // are a multivariate hypergeometric draw, sampled cell by cell.
  const int runs = config.permutations;
  std::vector<double> replicas(static_cast<std::size_t>(runs));
  std::vector<std::uint64_t> split_a(pooled.size()), split_b(pooled.size());
  for (int r = 0; r < runs; ++r) {
    Rng rng(derive_seed(config.calibration_seed, "subtest-resplit",
                        static_cast<std::uint64_t>(r)));
    std::int64_t remaining = static_cast<std::int64_t>(total_a + total_b);
    std::int64_t slots = static_cast<std::int64_t>(total_a);
    for (std::size_t x = 0; x < pooled.size(); ++x) {
      const auto cell = static_cast<std::int64_t>(pooled[x]);
      const std::int64_t take = rng.hypergeometric(remaining, cell, slots);
      split_a[x] = static_cast<std::uint64_t>(take);
      split_b[x] = pooled[x] - split_a[x];
      remaining -= cell;
      slots -= take;
    }
    replicas[static_cast<std::size_t>(r)] = closeness_statistic(split_a, split_b);
  }

  std::vector<double> sorted(replicas);
  std::sort(sorted.begin(), sorted.end());
  // Exceedance-exact quantile: under exchangeability the observed value
  // beats the k-th order statistic with probability (R+1-k)/(R+1) <= eta.
  const auto k = std::min<std::size_t>(
      sorted.size(),
      static_cast<std::size_t>(
          std::ceil((1.0 - config.eta) * static_cast<double>(runs + 1))));
  verdict.threshold = sorted[k - 1];
  verdict.decision =
      verdict.statistic > verdict.threshold ? Decision::Far : Decision::Equal;

  std::size_t at_least = 0;
  for (double t : replicas)
    if (t >= verdict.statistic) ++at_least;
  verdict.pvalue =
      static_cast<double>(1 + at_least) / static_cast<double>(runs + 1);
  return verdict;
}

SubtestVerdict hellinger_subtest(std::span<const std::uint32_t> symbols_a,
                                 std::span<const std::uint32_t> symbols_b,
                                 std::uint64_t domain,
                                 const SubtestConfig& config) {
  std::vector<std::uint64_t> a(domain, 0), b(domain, 0);
  for (std::uint32_t s : symbols_a) {
    if (s >= domain) throw OutOfDomain("symbol out of range");
    ++a[s];
  }
  for (std::uint32_t s : symbols_b) {
    if (s >= domain) throw OutOfDomain("symbol out of range");
    ++b[s];
  }
  return hellinger_subtest(std::span<const std::uint64_t>(a),
                           std::span<const std::uint64_t>(b), config);
}

}  // namespace bntest
