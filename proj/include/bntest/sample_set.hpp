#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bntest {

/**
 * Row-major matrix of categorical samples. Column j holds symbols in
 * {0, ..., arity[j]-1}.
 */
class SampleSet {
 public:
  SampleSet() = default;
  SampleSet(std::size_t rows, std::vector<int> arity,
            std::vector<std::uint32_t> data);

  std::size_t rows() const { return rows_; }
  int cols() const { return static_cast<int>(arity_.size()); }
  const std::vector<int>& arity() const { return arity_; }
  const std::vector<std::uint32_t>& data() const { return data_; }

  std::uint32_t at(std::size_t row, int col) const {
    return data_[row * arity_.size() + static_cast<std::size_t>(col)];
  }
  void set(std::size_t row, int col, std::uint32_t value) {
    data_[row * arity_.size() + static_cast<std::size_t>(col)] = value;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<int> arity_;
  std::vector<std::uint32_t> data_;
};

/**
 * Joint occurrence counts over a subset of columns. Cells use the
 * shared mixed-radix encoding (ascending variable ids, smallest id most
 * significant), so they line up with DenseDistribution cells for the
 * same variable set.
 */
std::vector<std::uint64_t> empirical_counts(const SampleSet& samples,
                                            std::span<const int> subset);

}  // namespace bntest
