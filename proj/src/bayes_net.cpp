#include "bntest/bayes_net.hpp"

#include <cmath>
#include <string>

#include "bntest/errors.hpp"
#include "bntest/rng.hpp"

namespace bntest {

BayesNet::BayesNet(Dag dag, std::vector<int> arity,
                   std::vector<std::vector<double>> cpt)
    : dag_(std::move(dag)), arity_(std::move(arity)), cpt_(std::move(cpt)) {
  const int n = dag_.node_count();
  if (arity_.size() != static_cast<std::size_t>(n))
    throw InvalidModel("arity count does not match node count");
  for (int k : arity_)
    if (k < 1) throw InvalidModel("node arity must be at least 1");
  if (cpt_.size() != static_cast<std::size_t>(n))
    throw InvalidModel("table count does not match node count");

  topological_order(dag_);  // rejects cyclic structures up front

  for (int v = 0; v < n; ++v) {
    const std::size_t rows = parent_rows(v);
    const auto k = static_cast<std::size_t>(arity_[static_cast<std::size_t>(v)]);
    const auto& table = cpt_[static_cast<std::size_t>(v)];
    if (table.size() != rows * k)
      throw InvalidModel("table for node " + std::to_string(v) + " has " +
                         std::to_string(table.size()) + " entries, expected " +
                         std::to_string(rows * k));
    for (std::size_t r = 0; r < rows; ++r) {
      double sum = 0.0;
      for (std::size_t j = 0; j < k; ++j) {
        const double p = table[r * k + j];
        if (!(p >= 0.0) || !std::isfinite(p))
          throw InvalidModel("table entries must be finite and nonnegative");
        sum += p;
      }
      if (std::fabs(sum - 1.0) > 1e-12)
        throw InvalidModel("row " + std::to_string(r) + " of node " +
                           std::to_string(v) + " sums to " + std::to_string(sum));
    }
  }
}

std::size_t BayesNet::parent_rows(int v) const {
  std::vector<int> sizes;
  sizes.reserve(dag_.parents(v).size());
  for (int p : dag_.parents(v)) sizes.push_back(arity_[static_cast<std::size_t>(p)]);
  return mixed_radix_size(sizes);
}

std::span<const double> BayesNet::cpt_row(int v, std::size_t row) const {
  const auto k = static_cast<std::size_t>(arity_[static_cast<std::size_t>(v)]);
  const auto& table = cpt_[static_cast<std::size_t>(v)];
  if ((row + 1) * k > table.size()) throw OutOfDomain("table row out of range");
  return std::span<const double>(table.data() + row * k, k);
}

std::size_t BayesNet::parent_config_index(int v,
                                          std::span<const int> assignment) const {
  if (assignment.size() != static_cast<std::size_t>(dag_.node_count()))
    throw ScopeMismatch("assignment must cover all nodes");
  std::size_t idx = 0;
  for (int p : dag_.parents(v)) {
    const auto k = static_cast<std::size_t>(arity_[static_cast<std::size_t>(p)]);
    const int x = assignment[static_cast<std::size_t>(p)];
    if (x < 0 || static_cast<std::size_t>(x) >= k)
      throw OutOfDomain("assignment symbol out of range");
    idx = idx * k + static_cast<std::size_t>(x);
  }
  return idx;
}

double BayesNet::probability(std::span<const int> assignment) const {
  double prod = 1.0;
  for (int v = 0; v < dag_.node_count(); ++v) {
    const auto row = parent_config_index(v, assignment);
    prod *= cpt_row(v, row)[static_cast<std::size_t>(assignment[static_cast<std::size_t>(v)])];
  }
  return prod;
}

DenseDistribution joint_distribution(const BayesNet& net, std::size_t cap) {
  const int n = net.node_count();
  std::vector<int> scope(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) scope[static_cast<std::size_t>(v)] = v;
  const std::size_t cells = mixed_radix_size(net.arity(), cap);

  std::vector<double> probs(cells, 0.0);
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  for (std::size_t idx = 0;; ++idx) {
    probs[idx] = net.probability(digits);
    if (idx + 1 == cells) break;
    for (std::size_t i = static_cast<std::size_t>(n); i-- > 0;) {
      if (++digits[i] < net.arity()[i]) break;
      digits[i] = 0;
    }
  }
  return DenseDistribution(std::move(scope), net.arity(), std::move(probs));
}

SampleSet sample(const BayesNet& net, std::size_t count, std::uint64_t seed) {
  const int n = net.node_count();
  const std::vector<int> order = topological_order(net.dag());
  Rng rng(seed);
  std::vector<std::uint32_t> data(count * static_cast<std::size_t>(n));
  std::vector<int> row(static_cast<std::size_t>(n), 0);
  for (std::size_t r = 0; r < count; ++r) {
    for (int v : order) {
      const auto cfg = net.parent_config_index(v, row);
      row[static_cast<std::size_t>(v)] = rng.categorical(net.cpt_row(v, cfg));
    }
    for (int v = 0; v < n; ++v)
      data[r * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)] =
          static_cast<std::uint32_t>(row[static_cast<std::size_t>(v)]);
  }
  return SampleSet(count, net.arity(), std::move(data));
}

}  // namespace bntest
