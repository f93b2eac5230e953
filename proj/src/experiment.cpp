#include "bntest/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "bntest/divergence.hpp"
#include "bntest/errors.hpp"
#include "bntest/gof_product.hpp"
#include "bntest/rng.hpp"
#include "bntest/testers.hpp"

namespace bntest {

namespace {

using nlohmann::json;

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void hash_bytes(std::uint64_t& h, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= kFnvPrime;
  }
}

void hash_u64(std::uint64_t& h, std::uint64_t value) {
  hash_bytes(h, &value, sizeof value);
}

void hash_double(std::uint64_t& h, double value) {
  std::uint64_t bits;
  std::memcpy(&bits, &value, sizeof bits);
  hash_u64(h, bits);
}

std::uint64_t hash_net(const BayesNet& net) {
  std::uint64_t h = kFnvOffset;
  hash_u64(h, static_cast<std::uint64_t>(net.node_count()));
  for (int v = 0; v < net.node_count(); ++v) {
    hash_u64(h, static_cast<std::uint64_t>(net.arity()[static_cast<std::size_t>(v)]));
    for (int p : net.dag().parents(v)) hash_u64(h, static_cast<std::uint64_t>(p));
    for (double x : net.cpt()[static_cast<std::size_t>(v)]) hash_double(h, x);
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::string csv_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string join_vars(const std::vector<int>& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(vars[i]);
  }
  return out;
}

Dag random_dag(const GeneratorSpec& gen, Rng& rng) {
  const int n = gen.n;
  std::vector<std::vector<int>> parents(static_cast<std::size_t>(n));
  if (gen.family == "chain") {
    for (int i = 1; i < n; ++i) parents[static_cast<std::size_t>(i)] = {i - 1};
  } else if (gen.family == "star") {
    for (int i = 1; i < n; ++i) parents[static_cast<std::size_t>(i)] = {0};
  } else if (gen.family == "tree") {
    for (int i = 1; i < n; ++i)
      parents[static_cast<std::size_t>(i)] = {
          static_cast<int>(rng.below(static_cast<std::uint64_t>(i)))};
  } else if (gen.family == "dag" || gen.family == "random-dag") {
    for (int i = 1; i < n; ++i) {
      std::vector<int> pool(static_cast<std::size_t>(i));
      for (int j = 0; j < i; ++j) pool[static_cast<std::size_t>(j)] = j;
      const int take = std::min(gen.d, i);
      for (int j = 0; j < take; ++j) {
        const auto pick = j + static_cast<int>(rng.below(
                                  static_cast<std::uint64_t>(i - j)));
        std::swap(pool[static_cast<std::size_t>(j)],
                  pool[static_cast<std::size_t>(pick)]);
      }
      parents[static_cast<std::size_t>(i)].assign(pool.begin(),
                                                  pool.begin() + take);
    }
  } else if (gen.family == "product") {
    // no edges
  } else {
    throw InvalidConfig("unknown generator family: " + gen.family);
  }
  return Dag(n, std::move(parents));
}

BayesNet random_net(const GeneratorSpec& gen, Rng& rng) {
  if (gen.n < 1) throw InvalidConfig("generator needs n >= 1");
  const int k = gen.family == "product" ? 2 : gen.k;
  if (k < 2) throw InvalidConfig("generator needs arity >= 2");
  Dag dag = random_dag(gen, rng);
  std::vector<int> arity(static_cast<std::size_t>(gen.n), k);
  std::vector<std::vector<double>> cpt(static_cast<std::size_t>(gen.n));
  for (int v = 0; v < gen.n; ++v) {
    std::size_t rows = 1;
    for (int p : dag.parents(v))
      rows *= static_cast<std::size_t>(arity[static_cast<std::size_t>(p)]);
    auto& table = cpt[static_cast<std::size_t>(v)];
    table.resize(rows * static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < rows; ++r) {
      double total = 0.0;
      for (int s = 0; s < k; ++s) {
        // Floor keeps every conditional bounded away from zero.
        const double w = 0.05 + rng.uniform();
        table[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(s)] = w;
        total += w;
      }
      for (int s = 0; s < k; ++s)
        table[r * static_cast<std::size_t>(k) + static_cast<std::size_t>(s)] /=
            total;
    }
  }
  return BayesNet(std::move(dag), std::move(arity), std::move(cpt));
}

/** Moves `amount` of mass between two symbols of one random CPT row. */
BayesNet perturb_net(const BayesNet& base, double amount, Rng& rng) {
  const int n = base.node_count();
  const int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
  const std::size_t rows = base.parent_rows(v);
  const std::size_t row = rng.below(rows);
  const int k = base.arity()[static_cast<std::size_t>(v)];
  const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
  const int b = (a + 1 +
                 static_cast<int>(rng.below(static_cast<std::uint64_t>(k - 1)))) %
                k;
  auto cpt = base.cpt();
  auto& table = cpt[static_cast<std::size_t>(v)];
  double& from = table[row * static_cast<std::size_t>(k) + static_cast<std::size_t>(a)];
  double& to = table[row * static_cast<std::size_t>(k) + static_cast<std::size_t>(b)];
  const double delta = std::min(amount, from);
  from -= delta;
  to += delta;
  return BayesNet(base.dag(), base.arity(), std::move(cpt));
}

ProductModel product_from_net(const BayesNet& net) {
  ProductModel model;
  model.means.reserve(static_cast<std::size_t>(net.node_count()));
  for (int v = 0; v < net.node_count(); ++v) {
    if (net.arity()[static_cast<std::size_t>(v)] != 2 ||
        !net.dag().parents(v).empty())
      throw InvalidModel("product tester needs an edgeless binary model");
    model.means.push_back(net.cpt_row(v, 0)[1]);
  }
  return model;
}

std::size_t joint_domain(const BayesNet& net, std::size_t cap) {
  std::size_t total = 1;
  for (int a : net.arity()) {
    if (total > cap / static_cast<std::size_t>(a)) return cap + 1;
    total *= static_cast<std::size_t>(a);
  }
  return total;
}

/** Product of the `take` largest arities: an upper bound on any
    size-`take` subset's projected domain. */
std::uint64_t max_subset_domain(const BayesNet& net, int take) {
  std::vector<int> arity = net.arity();
  std::sort(arity.begin(), arity.end(), std::greater<int>());
  std::uint64_t d = 1;
  for (int i = 0; i < take && i < static_cast<int>(arity.size()); ++i)
    d *= static_cast<std::uint64_t>(arity[static_cast<std::size_t>(i)]);
  return d;
}

std::uint64_t subset_total(int n, int max_size) {
  long double total = 0.0L;
  for (int k = 1; k <= max_size; ++k) {
    long double c = 1.0L;
    for (int i = 1; i <= k; ++i)
      c = c * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    total += c;
  }
  return static_cast<std::uint64_t>(total + 0.5L);
}

/** Per-source rows matching what the tester's subtests will demand. */
std::uint64_t derive_rows(const ExperimentSpec& spec, const BayesNet& net) {
  if (spec.sample_override > 0) return spec.sample_override;
  const auto n = net.node_count();
  const double eps = spec.tester.eps;
  const double eps_sq = eps * eps / (2.0 * static_cast<double>(n));
  if (spec.tester.id == "known") {
    const double eta = 1.0 / (3.0 * static_cast<double>(n));
    std::uint64_t rows = 1;
    for (int v = 0; v < n; ++v) {
      std::uint64_t domain =
          static_cast<std::uint64_t>(net.arity()[static_cast<std::size_t>(v)]);
      for (int p : net.dag().parents(v))
        domain *= static_cast<std::uint64_t>(
            net.arity()[static_cast<std::size_t>(p)]);
      rows = std::max(rows, required_samples(domain, eps_sq, eta));
    }
    return rows;
  }
  if (spec.tester.id == "unknown") {
    const int k = spec.tester.max_in_degree + 1;
    const double eta =
        1.0 / (3.0 * static_cast<double>(subset_total(n, k) -
                                         subset_total(n, k - 1)));
    return required_samples(max_subset_domain(net, k), eps_sq, eta);
  }
  if (spec.tester.id == "trees") {
    const int max_size = std::min(6, n);
    const double eta =
        1.0 / (3.0 * static_cast<double>(subset_total(n, max_size)));
    return required_samples(max_subset_domain(net, max_size), eps_sq, eta);
  }
  if (spec.tester.id == "gof") {
    GofConfig config;
    config.eps = eps;
    config.c = spec.tester.c;
    config.c_prime = spec.tester.c_prime;
    return config.required_rows(static_cast<std::size_t>(n));
  }
  throw InvalidConfig("unknown tester id: " + spec.tester.id);
}

Verdict run_tester(const ExperimentSpec& spec, const Instance& inst,
                   std::uint64_t rows, int trial) {
  const TesterSpec& tester = spec.tester;
  if (tester.id == "gof") {
    const SampleSet samples =
        sample(inst.p, rows, derive_seed(spec.seed, "samples-p", trial));
    GofConfig config;
    config.eps = tester.eps;
    config.c = tester.c;
    config.c_prime = tester.c_prime;
    config.seed = derive_seed(spec.seed, "gof", trial);
    config.null_replicas = tester.null_replicas;
    if (tester.gof_mode == "chebyshev")
      config.mode = GofThresholdMode::Chebyshev;
    else if (tester.gof_mode == "monte-carlo-null")
      config.mode = GofThresholdMode::MonteCarloNull;
    else
      throw InvalidConfig("unknown gof mode: " + tester.gof_mode);
    return gof_product(samples, product_from_net(inst.q), config);
  }
  const SampleSet samples_p =
      sample(inst.p, rows, derive_seed(spec.seed, "samples-p", trial));
  const SampleSet samples_q =
      sample(inst.q, rows, derive_seed(spec.seed, "samples-q", trial));
  TesterOptions options;
  options.seed = derive_seed(spec.seed, "tester", trial);
  options.permutations = tester.permutations;
  if (tester.id == "known")
    return test_known_structure(samples_p, samples_q, inst.p.dag(), tester.eps,
                                options);
  if (tester.id == "unknown")
    return test_unknown_structure(samples_p, samples_q, tester.max_in_degree,
                                  tester.eps, options);
  if (tester.id == "trees")
    return test_two_trees(samples_p, samples_q, tester.eps, options);
  throw InvalidConfig("unknown tester id: " + tester.id);
}

struct WilsonInterval {
  double low = 0.0;
  double high = 0.0;
};

WilsonInterval wilson95(int successes, int n) {
  if (n == 0) return {};
  const double z = 1.959963984540054;  // 97.5% normal quantile
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half =
      z / denom * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace

ExperimentSpec load_experiment_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path + ": cannot open");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  try {
    ExperimentSpec spec;
    const std::string scenario = doc.value("scenario", "size");
    if (scenario == "size")
      spec.scenario = Scenario::Size;
    else if (scenario == "power")
      spec.scenario = Scenario::Power;
    else
      throw InvalidConfig("scenario must be size or power");
    if (doc.contains("generator")) {
      const json& g = doc.at("generator");
      spec.generator.family = g.value("family", spec.generator.family);
      spec.generator.n = g.value("n", spec.generator.n);
      spec.generator.k = g.value("k", spec.generator.k);
      spec.generator.d = g.value("d", spec.generator.d);
      spec.generator.perturbation =
          g.value("perturbation", spec.generator.perturbation);
    }
    if (doc.contains("tester")) {
      const json& t = doc.at("tester");
      spec.tester.id = t.value("id", spec.tester.id);
      spec.tester.eps = t.value("eps", spec.tester.eps);
      spec.tester.permutations = t.value("permutations", spec.tester.permutations);
      spec.tester.max_in_degree =
          t.value("max_in_degree", spec.tester.max_in_degree);
      spec.tester.gof_mode = t.value("gof_mode", spec.tester.gof_mode);
      spec.tester.c = t.value("c", spec.tester.c);
      spec.tester.c_prime = t.value("c_prime", spec.tester.c_prime);
      spec.tester.null_replicas =
          t.value("null_replicas", spec.tester.null_replicas);
      if (spec.tester.id != "known" && spec.tester.id != "unknown" &&
          spec.tester.id != "trees" && spec.tester.id != "gof")
        throw InvalidConfig("unknown tester id: " + spec.tester.id);
    }
    spec.trials = doc.value("trials", spec.trials);
    spec.seed = doc.value("seed", spec.seed);
    spec.sample_override = doc.value("sample_override", spec.sample_override);
    spec.oracle_cap = doc.value("oracle_cap", spec.oracle_cap);
    spec.out = doc.value("out", spec.out);
    if (spec.trials < 1) throw InvalidConfig("trials must be >= 1");
    return spec;
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

Instance generate_instance(const ExperimentSpec& spec, int trial) {
  Rng rng(derive_seed(spec.seed, "instance", trial));
  BayesNet q = random_net(spec.generator, rng);
  BayesNet p = spec.scenario == Scenario::Power &&
                       spec.generator.perturbation > 0.0
                   ? perturb_net(q, spec.generator.perturbation, rng)
                   : q;
  Instance inst{std::move(p), std::move(q), std::nullopt};
  if (joint_domain(inst.p, spec.oracle_cap) <= spec.oracle_cap) {
    const DenseDistribution jp = joint_distribution(inst.p, spec.oracle_cap);
    const DenseDistribution jq = joint_distribution(inst.q, spec.oracle_cap);
    inst.exact_tv = total_variation(jp.probs(), jq.probs());
  } else if (spec.generator.family == "product") {
    try {
      inst.exact_tv = product_total_variation(product_from_net(inst.p),
                                              product_from_net(inst.q));
    } catch (const DomainTooLarge&) {
    }
  }
  return inst;
}

ExperimentSummary run_experiment(const ExperimentSpec& spec,
                                 std::ostream& out) {
  ExperimentSummary summary;
  summary.trials = spec.trials;
  summary.determinism_hash = kFnvOffset;
  out << "trial,instance,exact_tv,decision,witness,statistic,threshold,"
         "samples_used,wall_ms\n";
  for (int trial = 0; trial < spec.trials; ++trial) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = generate_instance(spec, trial);
    const std::uint64_t rows = derive_rows(spec, inst.p);
    const Verdict verdict = run_tester(spec, inst, rows, trial);
    const auto wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::steady_clock::now() - start)
                             .count();

    // Headline statistic: the witness subtest when Far, otherwise the
    // largest statistic seen.
    double statistic = 0.0;
    double threshold = 0.0;
    double best_key = -std::numeric_limits<double>::infinity();
    for (const auto& entry : verdict.subtest_log) {
      const bool want = verdict.decision == Decision::Far
                            ? entry.decision == Decision::Far
                            : true;
      const double key = verdict.decision == Decision::Far
                             ? entry.statistic - entry.threshold
                             : entry.statistic;
      if (want && key > best_key) {
        best_key = key;
        statistic = entry.statistic;
        threshold = entry.threshold;
      }
    }

    const bool far = verdict.decision == Decision::Far;
    const bool gated = spec.scenario == Scenario::Power &&
                       inst.exact_tv.has_value() &&
                       *inst.exact_tv < spec.tester.eps;
    if (gated) {
      ++summary.excluded;
    } else {
      ++summary.included;
      if (far) ++summary.far_count;
    }

    std::string row = std::to_string(trial);
    row += ',';
    row += hex64(hash_net(inst.p) ^ splitmix64(hash_net(inst.q)));
    row += ',';
    if (inst.exact_tv) row += csv_double(*inst.exact_tv);
    row += ',';
    row += far ? "Far" : "Equal";
    row += ',';
    row += join_vars(verdict.witness);
    row += ',';
    row += csv_double(statistic);
    row += ',';
    row += csv_double(threshold);
    row += ',';
    row += std::to_string(verdict.samples_used);
    hash_bytes(summary.determinism_hash, row.data(), row.size());
    out << row << ',' << wall_ms << '\n';
  }
  if (summary.included > 0) {
    summary.far_rate = static_cast<double>(summary.far_count) /
                       static_cast<double>(summary.included);
    const WilsonInterval ci = wilson95(summary.far_count, summary.included);
    summary.wilson_low = ci.low;
    summary.wilson_high = ci.high;
  }
  out << "\nscenario,trials,included,excluded,far_count,far_rate,wilson_low,"
         "wilson_high,determinism_hash\n";
  out << (spec.scenario == Scenario::Size ? "size" : "power") << ','
      << summary.trials << ',' << summary.included << ',' << summary.excluded
      << ',' << summary.far_count << ',' << csv_double(summary.far_rate) << ','
      << csv_double(summary.wilson_low) << ',' << csv_double(summary.wilson_high)
      << ',' << hex64(summary.determinism_hash) << '\n';
  return summary;
}

}  // namespace bntest
