#include "bntest/gof_product.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bntest/errors.hpp"
#include "bntest/rng.hpp"

namespace bntest {

namespace {

void check_product_model(const ProductModel& model) {
  if (model.means.empty()) throw InvalidModel("product model has no coordinates");
  for (double q : model.means)
    if (!(q >= 0.0 && q <= 1.0))
      throw InvalidModel("product means must lie in [0,1]");
}

void check_binary(const SampleSet& samples, std::size_t n) {
  if (static_cast<std::size_t>(samples.cols()) != n)
    throw ShapeMismatch("sample columns do not match model coordinates");
  for (int k : samples.arity())
    if (k != 2) throw ShapeMismatch("samples must be binary");
}

void check_config(const GofConfig& config) {
  if (!(config.eps > 0.0 && config.eps <= 1.0))
    throw InvalidConfig("eps must lie in (0,1]");
  if (!(config.c > 2.0))
    throw InvalidConfig("c must exceed 2 for a positive slack-adjusted eps");
  if (!(config.c_prime > 0.0)) throw InvalidConfig("c_prime must be positive");
  if (config.null_replicas < 1)
    throw InvalidConfig("null replica count must be at least 1");
}

}  // namespace

std::int64_t GofConfig::poisson_rate(std::size_t n) const {
  const double value =
      std::ceil(c_prime * std::sqrt(static_cast<double>(n)) / (eps * eps));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(value));
}

std::uint64_t GofConfig::required_rows(std::size_t n) const {
  const double m = static_cast<double>(poisson_rate(n));
  return static_cast<std::uint64_t>(std::ceil(2.0 * std::exp(1.0) * m));
}

FlipResult preprocess_flip(const ProductModel& q) {
  check_product_model(q);
  FlipResult out{q, std::vector<std::uint8_t>(q.means.size(), 0)};
  for (std::size_t i = 0; i < q.means.size(); ++i) {
    if (q.means[i] > 0.5) {
      out.model.means[i] = 1.0 - q.means[i];
      out.mask[i] = 1;
    }
  }
  return out;
}

XorNoiseResult preprocess_xor_noise(const ProductModel& q, double eps,
                                    double c) {
  check_product_model(q);
  if (!(eps > 0.0 && c > 0.0)) throw InvalidConfig("eps and c must be positive");
  const double rate = eps / (c * static_cast<double>(q.means.size()));
  if (2.0 * rate > 1.0)
    throw InvalidConfig("noise rate " + std::to_string(rate) +
                        " too large; coordinates would be scrambled");
  XorNoiseResult out{q, std::vector<double>(q.means.size(), 0.0)};
  for (std::size_t i = 0; i < q.means.size(); ++i) {
    if (q.means[i] < rate) {
      out.rates[i] = rate;
      out.model.means[i] = q.means[i] * (1.0 - rate) + (1.0 - q.means[i]) * rate;
    }
  }
  return out;
}

SampleSet apply_flip(const SampleSet& samples,
                     std::span<const std::uint8_t> mask) {
  check_binary(samples, mask.size());
  SampleSet out = samples;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    for (std::size_t r = 0; r < out.rows(); ++r)
      out.set(r, static_cast<int>(i), 1u - out.at(r, static_cast<int>(i)));
  }
  return out;
}

SampleSet apply_xor_noise(const SampleSet& samples,
                          std::span<const double> rates, std::uint64_t seed) {
  check_binary(samples, rates.size());
  SampleSet out = samples;
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (rates[i] == 0.0) continue;
    Rng rng(derive_seed(seed, "xor-noise", i));
    for (std::size_t r = 0; r < out.rows(); ++r)
      if (rng.uniform() < rates[i])
        out.set(r, static_cast<int>(i), 1u - out.at(r, static_cast<int>(i)));
  }
  return out;
}

PoissonizedCounts poissonized_counts(const SampleSet& samples, std::int64_t m,
                                     std::uint64_t seed) {
  if (m < 1) throw InvalidConfig("poisson rate must be at least 1");
  for (int k : samples.arity())
    if (k != 2) throw ShapeMismatch("samples must be binary");
  const double cap = 2.0 * std::exp(1.0) * static_cast<double>(m);
  const auto need = static_cast<std::uint64_t>(std::ceil(cap));
  if (samples.rows() < need)
    throw InsufficientSamples("need " + std::to_string(need) + " rows, have " +
                              std::to_string(samples.rows()));

  const int n = samples.cols();
  PoissonizedCounts out;
  out.ones.resize(static_cast<std::size_t>(n), 0);
  out.draws.resize(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    Rng rng(derive_seed(seed, "poissonize", static_cast<std::uint64_t>(i)));
    const std::int64_t draw = rng.poisson(static_cast<double>(m));
    out.draws[static_cast<std::size_t>(i)] = draw;
    if (static_cast<double>(draw) > cap) out.truncated = true;
    const auto use = std::min<std::int64_t>(
        draw, static_cast<std::int64_t>(samples.rows()));
    std::int64_t ones = 0;
    for (std::int64_t r = 0; r < use; ++r)
      ones += samples.at(static_cast<std::size_t>(r), i);
    out.ones[static_cast<std::size_t>(i)] = ones;
  }
  return out;
}

double z_statistic(std::span<const std::int64_t> ones, std::int64_t m,
                   const ProductModel& q) {
  if (ones.size() != q.means.size())
    throw ShapeMismatch("count vector does not match model coordinates");
  if (m < 1) throw InvalidConfig("poisson rate must be at least 1");
  double z = 0.0;
  for (std::size_t i = 0; i < ones.size(); ++i) {
    if (q.means[i] <= 0.0) throw ZeroQ("model mean is zero at coordinate " +
                                       std::to_string(i));
    const double mu = static_cast<double>(m) * q.means[i];
    const auto ni = static_cast<double>(ones[i]);
    const double d = ni - mu;
    z += (d * d - ni) / mu;
  }
  return z;
}

Verdict gof_product(const SampleSet& samples_p, const ProductModel& q,
                    const GofConfig& config) {
  check_product_model(q);
  check_config(config);
  const std::size_t n = q.means.size();
  check_binary(samples_p, n);

  const FlipResult flip = preprocess_flip(q);
  const XorNoiseResult noise =
      preprocess_xor_noise(flip.model, config.eps, config.c);
  SampleSet working = apply_flip(samples_p, flip.mask);
  working = apply_xor_noise(working, noise.rates,
                            derive_seed(config.seed, "gof-noise"));

  const std::int64_t m = config.poisson_rate(n);
  const PoissonizedCounts counts =
      poissonized_counts(working, m, derive_seed(config.seed, "gof-poisson"));

  Verdict verdict;
  verdict.samples_used = 0;
  for (std::int64_t d : counts.draws)
    verdict.samples_used = std::max<std::uint64_t>(
        verdict.samples_used, static_cast<std::uint64_t>(d));
  verdict.samples_used =
      std::min<std::uint64_t>(verdict.samples_used, config.required_rows(n));

  const double z = z_statistic(counts.ones, m, noise.model);
  const double eps_adj = (1.0 - 2.0 / config.c) * config.eps;
  const double mean_floor = static_cast<double>(m) * eps_adj * eps_adj / 2.0;

  double threshold = 0.0;
  if (config.mode == GofThresholdMode::Chebyshev) {
    threshold = mean_floor / 2.0;
  } else {
    // Null law of the counts is coordinatewise Poisson(m q_i); replay it
    // to place the threshold between null quantile and alternative floor.
    std::vector<double> replicas(static_cast<std::size_t>(config.null_replicas));
    std::vector<std::int64_t> sim(n);
    for (int r = 0; r < config.null_replicas; ++r) {
      Rng rng(derive_seed(config.seed, "gof-null-replica",
                          static_cast<std::uint64_t>(r)));
      for (std::size_t i = 0; i < n; ++i)
        sim[i] = rng.poisson(static_cast<double>(m) * noise.model.means[i]);
      replicas[static_cast<std::size_t>(r)] = z_statistic(sim, m, noise.model);
    }
    std::sort(replicas.begin(), replicas.end());
    const auto k = std::min<std::size_t>(
        replicas.size(),
        static_cast<std::size_t>(std::ceil(
            (2.0 / 3.0) * static_cast<double>(config.null_replicas))));
    const double quantile = replicas[k - 1];
    threshold = 0.5 * (quantile + mean_floor);
  }

  SubtestLogEntry entry;
  entry.statistic = z;
  entry.threshold = threshold;
  if (counts.truncated) {
    Rng rng(derive_seed(config.seed, "gof-truncated-verdict"));
    verdict.decision = rng.uniform() < 0.5 ? Decision::Far : Decision::Equal;
    verdict.truncated = true;
  } else {
    verdict.decision = z > threshold ? Decision::Far : Decision::Equal;
  }
  entry.decision = verdict.decision;
  verdict.subtest_log.push_back(std::move(entry));
  return verdict;
}

double product_hellinger_sq(const ProductModel& p, const ProductModel& q) {
  check_product_model(p);
  check_product_model(q);
  if (p.means.size() != q.means.size())
    throw DomainMismatch("product models have different dimension");
  double bc = 1.0;
  for (std::size_t i = 0; i < p.means.size(); ++i)
    bc *= std::sqrt(p.means[i] * q.means[i]) +
          std::sqrt((1.0 - p.means[i]) * (1.0 - q.means[i]));
  return std::clamp(1.0 - bc, 0.0, 1.0);
}

double product_total_variation(const ProductModel& p, const ProductModel& q,
                               std::size_t state_cap) {
  check_product_model(p);
  check_product_model(q);
  if (p.means.size() != q.means.size())
    throw DomainMismatch("product models have different dimension");

  // A state stands for the set of partial assignments sharing one
  // (P-weight, Q-weight) pair: `ka`/`kb` is that representative pair and
  // `wa`/`wb` the accumulated mass. Assignments with equal pairs are
  // interchangeable for the final L1 sum, so states whose pairs agree
  // within rounding are merged after every coordinate; the merge error
  // is bounded by the key tolerance times the total mass.
  struct State {
    double ka, kb, wa, wb;
  };
  std::vector<State> states{{1.0, 1.0, 1.0, 1.0}};
  std::vector<State> next;
  for (std::size_t i = 0; i < p.means.size(); ++i) {
    if (p.means[i] == q.means[i]) continue;  // identical coordinates cancel
    next.clear();
    next.reserve(states.size() * 2);
    for (const auto& s : states) {
      next.push_back({s.ka * p.means[i], s.kb * q.means[i], s.wa * p.means[i],
                      s.wb * q.means[i]});
      next.push_back({s.ka * (1.0 - p.means[i]), s.kb * (1.0 - q.means[i]),
                      s.wa * (1.0 - p.means[i]), s.wb * (1.0 - q.means[i])});
    }
    std::sort(next.begin(), next.end(), [](const State& x, const State& y) {
      return x.ka != y.ka ? x.ka < y.ka : x.kb < y.kb;
    });
    states.clear();
    for (const auto& s : next) {
      if (!states.empty()) {
        auto& last = states.back();
        if (std::fabs(s.ka - last.ka) <= 1e-14 * std::max(s.ka, last.ka) &&
            std::fabs(s.kb - last.kb) <= 1e-14 * std::max(s.kb, last.kb)) {
          last.wa += s.wa;
          last.wb += s.wb;
          continue;
        }
      }
      states.push_back(s);
    }
    if (states.size() > state_cap)
      throw DomainTooLarge("state list exceeded cap of " +
                           std::to_string(state_cap));
  }
  double l1 = 0.0;
  for (const auto& s : states) l1 += std::fabs(s.wa - s.wb);
  return 0.5 * l1;
}

SampleSet sample_product(const ProductModel& model, std::size_t count,
                         std::uint64_t seed) {
  check_product_model(model);
  const auto n = model.means.size();
  Rng rng(seed);
  std::vector<std::uint32_t> data(count * n);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t i = 0; i < n; ++i)
      data[r * n + i] = rng.uniform() < model.means[i] ? 1u : 0u;
  return SampleSet(count, std::vector<int>(n, 2), std::move(data));
}

}  // namespace bntest
