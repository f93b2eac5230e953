#include "bntest/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bntest/errors.hpp"

namespace bntest {

namespace {

void require_same_domain(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw DomainMismatch("probability vectors have different lengths");
}

void require_same_scope(const DenseDistribution& p,
                        const DenseDistribution& q) {
  if (p.scope() != q.scope() || p.sizes() != q.sizes())
    throw ScopeMismatch("tables span different variables or sizes");
}

}  // namespace

double hellinger_sq(std::span<const double> p, std::span<const double> q) {
  require_same_domain(p, q);
  double bc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) bc += std::sqrt(p[k] * q[k]);
  return std::clamp(1.0 - bc, 0.0, 1.0);
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  require_same_domain(p, q);
  double l1 = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) l1 += std::fabs(p[k] - q[k]);
  return 0.5 * l1;
}

double kl(std::span<const double> p, std::span<const double> q) {
  require_same_domain(p, q);
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0.0) continue;
    if (q[k] == 0.0) return std::numeric_limits<double>::infinity();
    sum += p[k] * std::log(p[k] / q[k]);
  }
  return sum;
}

double chi_sq(std::span<const double> p, std::span<const double> q) {
  require_same_domain(p, q);
  double sum = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (q[k] == 0.0) {
      if (p[k] > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    const double d = p[k] - q[k];
    sum += d * d / q[k];
  }
  return sum;
}

double hellinger_sq(const DenseDistribution& p, const DenseDistribution& q) {
  require_same_scope(p, q);
  return hellinger_sq(std::span<const double>(p.probs()),
                      std::span<const double>(q.probs()));
}

double total_variation(const DenseDistribution& p,
                       const DenseDistribution& q) {
  require_same_scope(p, q);
  return total_variation(std::span<const double>(p.probs()),
                         std::span<const double>(q.probs()));
}

double kl(const DenseDistribution& p, const DenseDistribution& q) {
  require_same_scope(p, q);
  return kl(std::span<const double>(p.probs()),
            std::span<const double>(q.probs()));
}

double chi_sq(const DenseDistribution& p, const DenseDistribution& q) {
  require_same_scope(p, q);
  return chi_sq(std::span<const double>(p.probs()),
                std::span<const double>(q.probs()));
}

double bernoulli_hellinger_bound(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0)) throw OutOfDomain("p must lie in [0,1]");
  if (!(q > 0.0 && q < 1.0)) throw DegenerateQ("q must lie strictly in (0,1)");
  const double d = p - q;
  return d * d / 2.0 * (1.0 / q + 1.0 / (1.0 - q));
}

bool sqrt_lower_bound_check(double t) {
  if (!(t >= -1.0)) throw OutOfDomain("t must be at least -1");
  return std::sqrt(1.0 + t) >= 1.0 + t / 2.0 - t * t / 2.0;
}

double bernoulli_hellinger_sq(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0))
    throw OutOfDomain("means must lie in [0,1]");
  const double bc = std::sqrt(p * q) + std::sqrt((1.0 - p) * (1.0 - q));
  return std::clamp(1.0 - bc, 0.0, 1.0);
}

}  // namespace bntest
