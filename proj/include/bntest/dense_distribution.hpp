#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bntest {

inline constexpr std::size_t kDefaultDomainCap = std::size_t{1} << 24;

/**
 * Number of assignments of a variable tuple with the given arities.
 * Throws DomainTooLarge when the product exceeds `cap`.
 */
std::size_t mixed_radix_size(std::span<const int> sizes,
                             std::size_t cap = kDefaultDomainCap);

/**
 * Explicit probability table over a tuple of discrete variables.
 *
 * The scope lists variable ids in ascending order. Cells use the shared
 * mixed-radix encoding: the scope's first (smallest-id) variable is the
 * most significant digit. Every module that exchanges tables or count
 * vectors indexes cells this way.
 */
class DenseDistribution {
 public:
  DenseDistribution(std::vector<int> scope, std::vector<int> sizes,
                    std::vector<double> probs);

  const std::vector<int>& scope() const { return scope_; }
  const std::vector<int>& sizes() const { return sizes_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t domain_size() const { return probs_.size(); }

  /** Cell index of an assignment given in scope order. */
  std::size_t index_of(std::span<const int> assignment) const;

  /** Writes the assignment for `index` into `out` (scope order). */
  void decode(std::size_t index, std::span<int> out) const;

  double at(std::span<const int> assignment) const {
    return probs_[index_of(assignment)];
  }

 private:
  std::vector<int> scope_;
  std::vector<int> sizes_;
  std::vector<double> probs_;
};

/**
 * Marginal onto `subset` (a set of variable ids drawn from the scope;
 * order does not matter). The result scope is ascending. The empty
 * subset yields the scalar distribution (1.0).
 */
DenseDistribution marginal(const DenseDistribution& dist,
                           std::span<const int> subset);

}  // namespace bntest
