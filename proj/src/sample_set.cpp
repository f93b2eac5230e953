#include "bntest/sample_set.hpp"

#include <algorithm>
#include <string>

#include "bntest/dense_distribution.hpp"
#include "bntest/errors.hpp"

namespace bntest {

SampleSet::SampleSet(std::size_t rows, std::vector<int> arity,
                     std::vector<std::uint32_t> data)
    : rows_(rows), arity_(std::move(arity)), data_(std::move(data)) {
  for (int k : arity_)
    if (k < 1) throw InvalidModel("column arity must be at least 1");
  if (data_.size() != rows_ * arity_.size())
    throw ShapeMismatch("sample matrix size does not match rows x cols");
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < arity_.size(); ++c)
      if (data_[r * arity_.size() + c] >= static_cast<std::uint32_t>(arity_[c]))
        throw OutOfDomain("sample symbol out of range in column " +
                          std::to_string(c));
}

std::vector<std::uint64_t> empirical_counts(const SampleSet& samples,
                                            std::span<const int> subset) {
  std::vector<int> vars(subset.begin(), subset.end());
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::vector<int> sizes(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (vars[i] < 0 || vars[i] >= samples.cols())
      throw UnknownVariable("column " + std::to_string(vars[i]) +
                            " not in sample set");
    sizes[i] = samples.arity()[static_cast<std::size_t>(vars[i])];
  }
  std::vector<std::uint64_t> counts(mixed_radix_size(sizes), 0);
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < vars.size(); ++i)
      idx = idx * static_cast<std::size_t>(sizes[i]) + samples.at(r, vars[i]);
    ++counts[idx];
  }
  return counts;
}

}  // namespace bntest
