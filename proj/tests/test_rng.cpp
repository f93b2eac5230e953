#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "bntest/errors.hpp"
#include "bntest/rng.hpp"

using namespace bntest;

TEST_CASE("derive_seed separates labels, indices and roots") {
  const auto a = derive_seed(1, "alpha");
  CHECK(a == derive_seed(1, "alpha"));
  CHECK(a != derive_seed(1, "beta"));
  CHECK(a != derive_seed(2, "alpha"));
  CHECK(a != derive_seed(1, "alpha", 1));
  CHECK(derive_seed(1, "alpha", 7) == derive_seed(1, "alpha", 7));
}

TEST_CASE("uniform stays in [0,1) and reproduces under reseeding") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(x == b.uniform());
  }
}

TEST_CASE("below respects the bound and covers small ranges") {
  Rng rng(7);
  std::vector<int> hits(5, 0);
  for (int i = 0; i < 5000; ++i) {
    const auto x = rng.below(5);
    REQUIRE(x < 5);
    ++hits[static_cast<std::size_t>(x)];
  }
  for (int h : hits) CHECK(h > 800);  // each cell expects 1000
  CHECK(rng.below(1) == 0);
}

TEST_CASE("categorical follows the weights") {
  Rng rng(11);
  const std::vector<double> weights{1.0, 3.0, 0.0, 4.0};
  std::vector<int> hits(4, 0);
  const int trials = 80000;
  for (int i = 0; i < trials; ++i) ++hits[static_cast<std::size_t>(rng.categorical(weights))];
  CHECK(hits[2] == 0);
  // 5 sigma on each count.
  const double probs[] = {1.0 / 8, 3.0 / 8, 0.0, 4.0 / 8};
  for (int k = 0; k < 4; ++k) {
    if (probs[k] == 0.0) continue;
    const double mean = trials * probs[k];
    const double sd = std::sqrt(mean * (1 - probs[k]));
    CHECK(std::fabs(hits[static_cast<std::size_t>(k)] - mean) < 5 * sd);
  }
  const std::vector<double> bad{0.0, 0.0};
  CHECK_THROWS_AS((void)rng.categorical(bad), InvalidConfig);
}

TEST_CASE("hypergeometric matches the exact pmf") {
  // Enumerate the exact law and compare Monte Carlo frequencies.
  const std::int64_t population = 30, successes = 12, draws = 9;
  auto log_choose = [](std::int64_t n, std::int64_t k) {
    return std::lgamma(static_cast<double>(n + 1)) -
           std::lgamma(static_cast<double>(k + 1)) -
           std::lgamma(static_cast<double>(n - k + 1));
  };
  std::map<std::int64_t, double> pmf;
  const std::int64_t lo = std::max<std::int64_t>(0, draws + successes - population);
  const std::int64_t hi = std::min(successes, draws);
  for (std::int64_t k = lo; k <= hi; ++k)
    pmf[k] = std::exp(log_choose(successes, k) +
                      log_choose(population - successes, draws - k) -
                      log_choose(population, draws));

  Rng rng(123);
  const int trials = 200000;
  std::map<std::int64_t, int> hits;
  for (int i = 0; i < trials; ++i) {
    const auto k = rng.hypergeometric(population, successes, draws);
    REQUIRE(k >= lo);
    REQUIRE(k <= hi);
    ++hits[k];
  }
  for (const auto& [k, p] : pmf) {
    const double mean = trials * p;
    const double sd = std::sqrt(mean * (1 - p));
    CHECK(std::fabs(hits[k] - mean) < 5 * sd + 5);
  }
}

TEST_CASE("hypergeometric handles degenerate corners") {
  Rng rng(5);
  CHECK(rng.hypergeometric(10, 0, 4) == 0);
  CHECK(rng.hypergeometric(10, 10, 4) == 4);
  CHECK(rng.hypergeometric(10, 3, 0) == 0);
  CHECK(rng.hypergeometric(10, 3, 10) == 3);
  CHECK(rng.hypergeometric(7, 7, 7) == 7);
}

TEST_CASE("poisson mean tracks the parameter") {
  Rng rng(99);
  const double mean = 40.0;
  const int trials = 20000;
  double sum = 0.0;
  for (int i = 0; i < trials; ++i) sum += static_cast<double>(rng.poisson(mean));
  const double se = std::sqrt(mean / trials);
  CHECK(std::fabs(sum / trials - mean) < 5 * se);
}
