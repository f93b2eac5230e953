#include <doctest.h>

#include <cmath>
#include <vector>

#include "bntest/bayes_net.hpp"
#include "bntest/decomposition.hpp"
#include "bntest/divergence.hpp"
#include "bntest/errors.hpp"
#include "bntest/rng.hpp"
#include "helpers.hpp"

using namespace bntest;

namespace {

DenseDistribution product_of_bernoullis(double p0, double p1) {
  std::vector<double> probs{(1 - p0) * (1 - p1), (1 - p0) * p1, p0 * (1 - p1),
                            p0 * p1};
  return DenseDistribution({0, 1}, {2, 2}, probs);
}

}  // namespace

TEST_CASE("identical joints decompose to all zeros") {
  Rng rng(12);
  const auto dist = testutil::random_distribution({0, 1, 2}, {2, 2, 2}, rng);
  Factorization fact{{{{0}, {}}, {{1}, {0}}, {{2}, {1}}}};
  const auto report = decompose(dist, dist, fact);
  CHECK(report.total_h_sq <= 1e-12);  // clamped at 0 from below
  for (double t : report.terms) CHECK(std::fabs(t) <= 1e-12);
  CHECK(std::fabs(report.slack) <= 1e-12);
}

TEST_CASE("product pair differing in one coordinate is tight") {
  const auto p = product_of_bernoullis(0.5, 0.5);
  const auto q = product_of_bernoullis(0.5, 0.9);
  Factorization fact{{{{0}, {}}, {{1}, {}}}};
  const auto report = decompose(p, q, fact);
  REQUIRE(report.terms.size() == 2);
  CHECK(report.terms[0] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(report.terms[1] ==
        doctest::Approx(0.10557280900008414).epsilon(1e-12));
  CHECK(report.total_h_sq ==
        doctest::Approx(0.10557280900008414).epsilon(1e-12));
  CHECK(std::fabs(report.slack) < 1e-10);  // equality for products
  CHECK(report.argmax_block == 1);
}

TEST_CASE("random chain pairs have nonnegative slack") {
  Rng rng(55);
  const Dag chain(3, {{}, {0}, {1}});
  const auto fact = neighborhood_factorization(chain);
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<int> arity(3, 2 + static_cast<int>(rng.below(2)));
    const BayesNet p = testutil::random_net(chain, arity, rng);
    const BayesNet q = testutil::random_net(chain, arity, rng);
    const auto report =
        decompose(joint_distribution(p), joint_distribution(q), fact);
    CHECK(report.slack >= -1e-9);
    // argmax really is the largest term
    for (double t : report.terms)
      CHECK(t <= report.terms[static_cast<std::size_t>(report.argmax_block)] +
                     1e-15);
  }
}

TEST_CASE("shared random DAG pairs have nonnegative slack") {
  Rng rng(56);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const Dag dag = testutil::random_dag(n, 2, rng);
    const auto fact = neighborhood_factorization(dag);
    std::vector<int> arity;
    for (int v = 0; v < n; ++v)
      arity.push_back(2 + static_cast<int>(rng.below(2)));
    const BayesNet p = testutil::random_net(dag, arity, rng);
    const BayesNet q = testutil::random_net(dag, arity, rng);
    const auto report =
        decompose(joint_distribution(p), joint_distribution(q), fact);
    CHECK(report.slack >= -1e-9);
  }
}

TEST_CASE("decompose rejects mismatched joints") {
  Rng rng(4);
  const auto a = testutil::random_distribution({0, 1}, {2, 2}, rng);
  const auto b = testutil::random_distribution({0, 1}, {2, 3}, rng);
  Factorization fact{{{{0}, {}}, {{1}, {0}}}};
  CHECK_THROWS_AS((void)decompose(a, b, fact), ScopeMismatch);
}

TEST_CASE("localize flags a failed premise on equal joints") {
  Rng rng(8);
  const auto dist = testutil::random_distribution({0, 1}, {2, 2}, rng);
  Factorization fact{{{{0}, {}}, {{1}, {0}}}};
  const auto result = localize(dist, dist, fact, 0.1);
  CHECK_FALSE(result.premise_met);
  CHECK(result.term == 0.0);
}

TEST_CASE("localize pins the discrepant block in the product example") {
  const auto p = product_of_bernoullis(0.5, 0.5);
  const auto q = product_of_bernoullis(0.5, 0.9);
  Factorization fact{{{{0}, {}}, {{1}, {}}}};
  const auto result = localize(p, q, fact, 0.1);
  CHECK(result.premise_met);
  CHECK(result.block == 1);
  CHECK(result.term >= 0.1 / 2);
  CHECK(result.term == doctest::Approx(0.10557280900008414).epsilon(1e-12));
}

TEST_CASE("localized term always reaches eps over the block count") {
  Rng rng(91);
  const Dag chain(4, {{}, {0}, {1}, {2}});
  const auto fact = neighborhood_factorization(chain);
  int hits = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::vector<int> arity(4, 2);
    const BayesNet p = testutil::random_net(chain, arity, rng, 0.01);
    const BayesNet q = testutil::random_net(chain, arity, rng, 0.01);
    const auto jp = joint_distribution(p);
    const auto jq = joint_distribution(q);
    const double eps = 0.05;
    const auto result = localize(jp, jq, fact, eps);
    if (!result.premise_met) continue;
    ++hits;
    CHECK(result.term >=
          eps / static_cast<double>(fact.blocks.size()) - 1e-12);
  }
  CHECK(hits > 50);  // the sweep actually exercised the premise
}

TEST_CASE("localize validates eps") {
  Rng rng(3);
  const auto dist = testutil::random_distribution({0}, {2}, rng);
  Factorization fact{{{{0}, {}}}};
  CHECK_THROWS_AS((void)localize(dist, dist, fact, 0.0), InvalidConfig);
  CHECK_THROWS_AS((void)localize(dist, dist, fact, 1.5), InvalidConfig);
}
