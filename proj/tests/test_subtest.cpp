#include "bntest/subtest.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "bntest/errors.hpp"
#include "bntest/rng.hpp"

using namespace bntest;

TEST_CASE("required_samples matches precomputed values") {
  // Small-eps regime: the D^{3/4}/eps^2 branch is the smaller one.
  CHECK(required_samples(64, 0.01, 1.0 / 3.0) == 256487);
  CHECK(required_samples(16, 0.05, 1.0 / 3.0) == 13263);
  // Large-eps regime: eps > D^{-1/8}, so the D^{2/3}/eps^{8/3} branch wins.
  CHECK(required_samples(16, 0.81, 1.0 / 3.0) == 698);
  CHECK(required_samples(1, 1.0, 1.0 / 3.0) == 22);
}

TEST_CASE("required_samples is monotone in the domain size") {
  std::uint64_t prev = 0;
  for (std::uint64_t d = 1; d <= 200; ++d) {
    const std::uint64_t v = required_samples(d, 0.05, 1.0 / 3.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("required_samples scales the constant linearly before rounding") {
  // Doubling C at most doubles the budget (ceil slack aside).
  const std::uint64_t base = required_samples(32, 0.04, 0.1, 20.0);
  const std::uint64_t doubled = required_samples(32, 0.04, 0.1, 40.0);
  CHECK(doubled >= 2 * base - 1);
  CHECK(doubled <= 2 * base + 1);
}

TEST_CASE("required_samples rejects bad parameters") {
  CHECK_THROWS_AS(required_samples(0, 0.1, 0.3), InvalidConfig);
  CHECK_THROWS_AS(required_samples(4, 0.0, 0.3), InvalidConfig);
  CHECK_THROWS_AS(required_samples(4, 1.5, 0.3), InvalidConfig);
  CHECK_THROWS_AS(required_samples(4, 0.1, 0.0), InvalidConfig);
  CHECK_THROWS_AS(required_samples(4, 0.1, 1.0), InvalidConfig);
  CHECK_THROWS_AS(required_samples(4, 0.1, 0.3, 0.0), InvalidConfig);
}

TEST_CASE("closeness_statistic on pinned tables") {
  SUBCASE("equal tables give minus the number of occupied cells") {
    const std::vector<std::uint64_t> a{5, 5};
    CHECK(closeness_statistic(a, a) == doctest::Approx(-2.0).epsilon(1e-15));
    const std::vector<std::uint64_t> one{7};
    CHECK(closeness_statistic(one, one) == doctest::Approx(-1.0));
  }
  SUBCASE("disjoint supports") {
    const std::vector<std::uint64_t> a{10, 0};
    const std::vector<std::uint64_t> b{0, 10};
    // Each cell contributes (10^2 - 10)/10 = 9.
    CHECK(closeness_statistic(a, b) == doctest::Approx(18.0));
  }
  SUBCASE("cells with empty pool are skipped") {
    const std::vector<std::uint64_t> a{3, 0, 2};
    const std::vector<std::uint64_t> b{1, 0, 4};
    // Cell 0: (4-4)/4 = 0; cell 1 skipped; cell 2: (4-6)/6 = -1/3.
    CHECK(closeness_statistic(a, b) == doctest::Approx(-1.0 / 3.0));
  }
  SUBCASE("length mismatch") {
    const std::vector<std::uint64_t> a{1, 2};
    const std::vector<std::uint64_t> b{1, 2, 3};
    CHECK_THROWS_AS(closeness_statistic(a, b), DomainMismatch);
  }
}

TEST_CASE("closeness_statistic grows with the gap on two-cell tables") {
  // Fixed totals, fixed B = (4, 8): the statistic must be nondecreasing
  // in |a - 4| on both sides.
  const std::vector<std::uint64_t> b{4, 8};
  auto stat = [&](std::uint64_t a0) {
    const std::vector<std::uint64_t> a{a0, 12 - a0};
    return closeness_statistic(a, b);
  };
  for (std::uint64_t a0 = 4; a0 < 12; ++a0) CHECK(stat(a0 + 1) >= stat(a0) - 1e-12);
  for (std::uint64_t a0 = 4; a0 > 0; --a0) CHECK(stat(a0 - 1) >= stat(a0) - 1e-12);
}

TEST_CASE("closeness_statistic has zero mean under Poissonized equality") {
  // A_x, B_x ~ Poisson(lambda_x) independently: each term has exact
  // mean zero, so the Monte Carlo average must sit near 0.
  const std::vector<double> lambdas{3.0, 7.0, 1.5, 0.5};
  const int reps = 20000;
  Rng rng(20260814);
  double sum = 0.0, sum_sq = 0.0;
  std::vector<std::uint64_t> a(lambdas.size()), b(lambdas.size());
  for (int r = 0; r < reps; ++r) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      a[i] = static_cast<std::uint64_t>(rng.poisson(lambdas[i]));
      b[i] = static_cast<std::uint64_t>(rng.poisson(lambdas[i]));
    }
    const double t = closeness_statistic(a, b);
    sum += t;
    sum_sq += t * t;
  }
  const double mean = sum / reps;
  const double var = sum_sq / reps - mean * mean;
  const double se = std::sqrt(var / reps);
  CHECK(std::fabs(mean) <= 3.0 * se + 1e-9);
}

namespace {

SubtestConfig quick_config(double eps_sq, std::uint64_t budget,
                           std::uint64_t seed) {
  SubtestConfig config;
  config.eps_sq = eps_sq;
  config.eta = 1.0 / 3.0;
  config.permutations = 200;
  config.sample_budget = budget;
  config.calibration_seed = seed;
  return config;
}

std::vector<std::uint64_t> draw_counts(std::span<const double> probs,
                                       std::uint64_t n, Rng& rng) {
  std::vector<std::uint64_t> counts(probs.size(), 0);
  for (std::uint64_t i = 0; i < n; ++i) ++counts[rng.categorical(probs)];
  return counts;
}

}  // namespace

TEST_CASE("hellinger_subtest is deterministic given the calibration seed") {
  const std::vector<std::uint64_t> a{30, 18, 52, 40};
  const std::vector<std::uint64_t> b{25, 25, 45, 45};
  const SubtestConfig config = quick_config(0.2, 140, 77);
  const SubtestVerdict v1 = hellinger_subtest(a, b, config);
  const SubtestVerdict v2 = hellinger_subtest(a, b, config);
  CHECK(v1.decision == v2.decision);
  CHECK(v1.statistic == v2.statistic);
  CHECK(v1.threshold == v2.threshold);
  CHECK(v1.pvalue == v2.pvalue);
  CHECK(v1.statistic == doctest::Approx(closeness_statistic(a, b)));
  CHECK(v1.pvalue > 0.0);
  CHECK(v1.pvalue <= 1.0);
}

TEST_CASE("hellinger_subtest flags disjoint supports as Far") {
  const std::vector<std::uint64_t> a{400, 0};
  const std::vector<std::uint64_t> b{0, 400};
  const SubtestVerdict v = hellinger_subtest(a, b, quick_config(0.1, 400, 5));
  CHECK(v.decision == Decision::Far);
  CHECK(v.statistic > v.threshold);
  CHECK(v.pvalue <= 0.02);
  CHECK_FALSE(v.insufficient_samples);
}

TEST_CASE("hellinger_subtest marks short supplies without changing course") {
  // eps_sq = 0.05 over 16 cells calls for 13263 samples per side.
  std::vector<std::uint64_t> a(16, 0), b(16, 0);
  for (int i = 0; i < 16; ++i) a[i] = b[i] = 6;  // 96 per side
  SubtestConfig config = quick_config(0.05, 0, 9);
  const SubtestVerdict low = hellinger_subtest(a, b, config);
  CHECK(low.insufficient_samples);
  config.sample_budget = 96;
  const SubtestVerdict ok = hellinger_subtest(a, b, config);
  CHECK_FALSE(ok.insufficient_samples);
}

TEST_CASE("hellinger_subtest validates its configuration") {
  const std::vector<std::uint64_t> a{5, 5};
  const std::vector<std::uint64_t> b{4, 6};
  SubtestConfig config = quick_config(0.1, 10, 1);
  config.permutations = 0;
  CHECK_THROWS_AS(hellinger_subtest(a, b, config), InvalidConfig);
  config = quick_config(0.1, 10, 1);
  config.eta = 0.0;
  CHECK_THROWS_AS(hellinger_subtest(a, b, config), InvalidConfig);
  config = quick_config(0.1, 10, 1);
  const std::vector<std::uint64_t> wide{4, 6, 0};
  CHECK_THROWS_AS(hellinger_subtest(a, wide, config), DomainMismatch);
}

TEST_CASE("symbol overload reduces to the count overload") {
  const std::vector<std::uint32_t> sa{0, 1, 1, 2, 0, 0};
  const std::vector<std::uint32_t> sb{2, 2, 1, 0, 1, 1};
  const SubtestConfig config = quick_config(0.3, 6, 11);
  const SubtestVerdict from_symbols = hellinger_subtest(sa, sb, 3, config);
  const std::vector<std::uint64_t> ca{3, 2, 1};
  const std::vector<std::uint64_t> cb{1, 3, 2};
  const SubtestVerdict from_counts = hellinger_subtest(ca, cb, config);
  CHECK(from_symbols.statistic == from_counts.statistic);
  CHECK(from_symbols.threshold == from_counts.threshold);
  CHECK(from_symbols.decision == from_counts.decision);

  const std::vector<std::uint32_t> bad{0, 5};
  CHECK_THROWS_AS(hellinger_subtest(bad, sb, 3, config), OutOfDomain);
}

TEST_CASE("hellinger_subtest holds its false-Far rate near eta") {
  const std::vector<double> uniform(8, 1.0 / 8.0);
  const std::uint64_t per_side = 600;
  const int trials = 150;
  Rng rng(4242);
  int far = 0;
  for (int t = 0; t < trials; ++t) {
    const auto a = draw_counts(uniform, per_side, rng);
    const auto b = draw_counts(uniform, per_side, rng);
    const SubtestConfig config =
        quick_config(0.1, per_side, derive_seed(91, "level", t));
    if (hellinger_subtest(a, b, config).decision == Decision::Far) ++far;
  }
  // eta = 1/3; allow generous Monte Carlo slack above it.
  CHECK(far <= 67);
}

TEST_CASE("hellinger_subtest detects a separated pair at full budget") {
  // Uniform over 16 cells vs the +-s perturbation at squared Hellinger
  // distance exactly 0.05.
  const double lo = 0.025420324384509516;
  const double hi = 0.09957967561549048;
  std::vector<double> p(16, 1.0 / 16.0), q(16);
  for (int i = 0; i < 16; ++i) q[i] = (i % 2 == 0) ? hi : lo;
  const std::uint64_t per_side = required_samples(16, 0.05, 1.0 / 3.0);
  CHECK(per_side == 13263);
  const int trials = 60;
  Rng rng(777);
  int far = 0;
  for (int t = 0; t < trials; ++t) {
    const auto a = draw_counts(p, per_side, rng);
    const auto b = draw_counts(q, per_side, rng);
    const SubtestConfig config =
        quick_config(0.05, 0, derive_seed(92, "power", t));
    if (hellinger_subtest(a, b, config).decision == Decision::Far) ++far;
  }
  CHECK(far >= 33);
}
