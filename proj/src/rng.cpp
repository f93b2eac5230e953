#include "bntest/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bntest/errors.hpp"

namespace bntest {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view label,
                          std::uint64_t index) {
  // FNV-1a over the label folded into the root, then two mixing rounds.
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  std::uint64_t s = splitmix64(root ^ h);
  return splitmix64(s ^ (0x9e3779b97f4a7c15ull + index));
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidConfig("Rng::below requires n > 0");
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit && limit != 0);
  return x % n;
}

int Rng::categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0 || !std::isfinite(w))
      throw InvalidConfig("categorical weights must be finite and nonnegative");
    total += w;
  }
  if (total <= 0.0)
    throw InvalidConfig("categorical weights must have positive total");
  const double target = uniform() * total;
  double acc = 0.0;
  int last_positive = -1;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] > 0.0) last_positive = static_cast<int>(k);
    acc += weights[k];
    if (target < acc && weights[k] > 0.0) return static_cast<int>(k);
  }
  return last_positive;
}

std::int64_t Rng::poisson(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw InvalidConfig("poisson mean must be finite and nonnegative");
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(gen_);
}

namespace {

double log_choose(std::int64_t n, std::int64_t k) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

std::int64_t Rng::hypergeometric(std::int64_t population,
                                 std::int64_t successes, std::int64_t draws) {
  if (population < 0 || successes < 0 || draws < 0 || successes > population ||
      draws > population)
    throw InvalidConfig("hypergeometric parameters out of range");
  const std::int64_t lo = std::max<std::int64_t>(0, draws - (population - successes));
  const std::int64_t hi = std::min(successes, draws);
  if (lo == hi) return lo;

  // Inversion from the mode: pmf mass is consumed outward, alternating
  // sides, so the expected number of steps is O(standard deviation).
  std::int64_t mode = static_cast<std::int64_t>(
      (static_cast<double>(draws) + 1.0) * (static_cast<double>(successes) + 1.0) /
      (static_cast<double>(population) + 2.0));
  mode = std::clamp(mode, lo, hi);

  auto pmf_at = [&](std::int64_t k) {
    return std::exp(log_choose(successes, k) +
                    log_choose(population - successes, draws - k) -
                    log_choose(population, draws));
  };
  // Ratio of consecutive pmf values, f(k+1)/f(k).
  auto up_ratio = [&](std::int64_t k) {
    return (static_cast<double>(successes - k) * static_cast<double>(draws - k)) /
           (static_cast<double>(k + 1) *
            static_cast<double>(population - successes - draws + k + 1));
  };

  double u = uniform();
  const double f_mode = pmf_at(mode);
  u -= f_mode;
  if (u < 0.0) return mode;

  std::int64_t up = mode, down = mode;
  double f_up = f_mode, f_down = f_mode;
  while (up < hi || down > lo) {
    if (up < hi) {
      f_up *= up_ratio(up);
      ++up;
      u -= f_up;
      if (u < 0.0) return up;
    }
    if (down > lo) {
      f_down /= up_ratio(down - 1);
      --down;
      u -= f_down;
      if (u < 0.0) return down;
    }
  }
  // Floating-point residue: the remaining mass is numerically zero.
  return mode;
}

}  // namespace bntest
