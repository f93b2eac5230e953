#include "bntest/dense_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bntest/errors.hpp"

namespace bntest {

std::size_t mixed_radix_size(std::span<const int> sizes, std::size_t cap) {
  std::size_t total = 1;
  for (int k : sizes) {
    if (k < 1) throw InvalidModel("variable arity must be at least 1");
    if (total > cap / static_cast<std::size_t>(k))
      throw DomainTooLarge("joint domain exceeds cap of " + std::to_string(cap));
    total *= static_cast<std::size_t>(k);
  }
  return total;
}

DenseDistribution::DenseDistribution(std::vector<int> scope,
                                     std::vector<int> sizes,
                                     std::vector<double> probs)
    : scope_(std::move(scope)), sizes_(std::move(sizes)), probs_(std::move(probs)) {
  if (scope_.size() != sizes_.size())
    throw ScopeMismatch("scope and sizes lengths differ");
  if (!std::is_sorted(scope_.begin(), scope_.end()) ||
      std::adjacent_find(scope_.begin(), scope_.end()) != scope_.end())
    throw ScopeMismatch("scope must be strictly ascending");
  const std::size_t want = mixed_radix_size(sizes_);
  if (probs_.size() != want)
    throw ShapeMismatch("probability table has " + std::to_string(probs_.size()) +
                        " cells, domain needs " + std::to_string(want));
  // Compensated summation keeps the mass check meaningful on large tables.
  double sum = 0.0, carry = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw InvalidModel("probabilities must be finite and nonnegative");
    const double y = p - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw InvalidModel("probabilities sum to " + std::to_string(sum));
}

std::size_t DenseDistribution::index_of(std::span<const int> assignment) const {
  if (assignment.size() != scope_.size())
    throw ScopeMismatch("assignment length does not match scope");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int v = assignment[i];
    if (v < 0 || v >= sizes_[i]) throw OutOfDomain("symbol out of range");
    idx = idx * static_cast<std::size_t>(sizes_[i]) + static_cast<std::size_t>(v);
  }
  return idx;
}

void DenseDistribution::decode(std::size_t index, std::span<int> out) const {
  if (out.size() != scope_.size())
    throw ScopeMismatch("output length does not match scope");
  if (index >= probs_.size()) throw OutOfDomain("cell index out of range");
  for (std::size_t i = scope_.size(); i-- > 0;) {
    const auto k = static_cast<std::size_t>(sizes_[i]);
    out[i] = static_cast<int>(index % k);
    index /= k;
  }
}

DenseDistribution marginal(const DenseDistribution& dist,
                           std::span<const int> subset) {
  std::vector<int> keep(subset.begin(), subset.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  const auto& scope = dist.scope();
  const auto& sizes = dist.sizes();
  // Position of each kept variable within the source scope.
  std::vector<std::size_t> pos(keep.size());
  std::vector<int> keep_sizes(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const auto it = std::lower_bound(scope.begin(), scope.end(), keep[i]);
    if (it == scope.end() || *it != keep[i])
      throw UnknownVariable("variable " + std::to_string(keep[i]) +
                            " not in scope");
    pos[i] = static_cast<std::size_t>(it - scope.begin());
    keep_sizes[i] = sizes[pos[i]];
  }

  const std::size_t out_cells = mixed_radix_size(keep_sizes);
  std::vector<double> out(out_cells, 0.0);
  // Stride of each source position in the target index; zero if summed out.
  std::vector<std::size_t> stride(scope.size(), 0);
  {
    std::size_t s = 1;
    for (std::size_t i = keep.size(); i-- > 0;) {
      stride[pos[i]] = s;
      s *= static_cast<std::size_t>(keep_sizes[i]);
    }
  }

  std::vector<int> digits(scope.size(), 0);
  std::size_t target = 0;
  const auto& probs = dist.probs();
  for (std::size_t idx = 0;; ++idx) {
    out[target] += probs[idx];
    if (idx + 1 == probs.size()) break;
    // Odometer increment, keeping the target index in lockstep.
    for (std::size_t i = scope.size(); i-- > 0;) {
      if (++digits[i] < sizes[i]) {
        target += stride[i];
        break;
      }
      digits[i] = 0;
      target -= stride[i] * static_cast<std::size_t>(sizes[i] - 1);
    }
  }
  return DenseDistribution(std::move(keep), std::move(keep_sizes), std::move(out));
}

}  // namespace bntest
