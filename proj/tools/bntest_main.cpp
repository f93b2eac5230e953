// Command line front end. Every subcommand emits deterministic CSV:
// rerunning with the same inputs and seed reproduces the bytes exactly.
// Exit codes: 0 verdict produced, 1 usage error, 2 data error.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bntest/bayes_net.hpp"
#include "bntest/decomposition.hpp"
#include "bntest/divergence.hpp"
#include "bntest/errors.hpp"
#include "bntest/experiment.hpp"
#include "bntest/gof_product.hpp"
#include "bntest/model_io.hpp"
#include "bntest/subtest.hpp"
#include "bntest/testers.hpp"
#include "bntest/tree_order.hpp"

namespace {

using namespace bntest;

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string join(const std::vector<int>& values, char sep = '-') {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

const char* name(Decision decision) {
  return decision == Decision::Far ? "Far" : "Equal";
}

/** Routes output to --out when set, stdout otherwise. */
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError(path + ": cannot open for writing");
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

/** Loads two sample files and widens both to shared column arities. */
std::pair<SampleSet, SampleSet> load_sample_pair(const std::string& path_p,
                                                 const std::string& path_q,
                                                 int forced_arity) {
  SampleSet p = load_samples(path_p);
  SampleSet q = load_samples(path_q);
  if (p.cols() != q.cols())
    throw ShapeMismatch("sample files disagree on column count");
  std::vector<int> arity(static_cast<std::size_t>(p.cols()));
  for (int j = 0; j < p.cols(); ++j) {
    const auto idx = static_cast<std::size_t>(j);
    arity[idx] = std::max(p.arity()[idx], q.arity()[idx]);
    if (forced_arity > 0) arity[idx] = std::max(arity[idx], forced_arity);
  }
  return {SampleSet(p.rows(), arity, p.data()),
          SampleSet(q.rows(), arity, q.data())};
}

void write_verdict(std::ostream& out, const Verdict& verdict) {
  out << "vars,statistic,threshold,pvalue,decision,insufficient_samples\n";
  for (const auto& entry : verdict.subtest_log)
    out << join(entry.vars) << ',' << fmt(entry.statistic) << ','
        << fmt(entry.threshold) << ',' << fmt(entry.pvalue) << ','
        << name(entry.decision) << ',' << (entry.insufficient_samples ? 1 : 0)
        << '\n';
  out << "\ndecision,witness,samples_used,truncated\n";
  out << name(verdict.decision) << ',' << join(verdict.witness) << ','
      << verdict.samples_used << ',' << (verdict.truncated ? 1 : 0) << '\n';
}

struct Common {
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--seed", common.seed, "Root seed");
  cmd->add_option("--out", common.out_path, "Output file (default stdout)");
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv"}));
}

int run(int argc, char** argv) {
  CLI::App app{"Bayes-net identity testing toolkit"};
  app.require_subcommand(1);

  Common common;

  // sample
  std::string model_path;
  std::size_t count = 0;
  auto* cmd_sample = app.add_subcommand("sample", "Draw rows from a model");
  cmd_sample->add_option("--model", model_path, "Model JSON")->required();
  cmd_sample->add_option("--count", count, "Number of rows")->required();
  add_common(cmd_sample, common);

  // divergence
  std::string path_p, path_q;
  auto* cmd_div = app.add_subcommand(
      "divergence", "Exact divergences between two small models");
  cmd_div->add_option("--p", path_p, "Model JSON for P")->required();
  cmd_div->add_option("--q", path_q, "Model JSON for Q")->required();
  add_common(cmd_div, common);

  // verify-subadditivity
  std::string partition_path;
  auto* cmd_sub = app.add_subcommand(
      "verify-subadditivity",
      "Per-block squared Hellinger terms versus the joint");
  cmd_sub->add_option("--model-p", path_p, "Model JSON for P")->required();
  cmd_sub->add_option("--model-q", path_q, "Model JSON for Q")->required();
  cmd_sub->add_option("--partition", partition_path,
                      "Factorization file (default: P's node neighborhoods)");
  add_common(cmd_sub, common);

  // order-trees
  auto* cmd_order =
      app.add_subcommand("order-trees", "Variable order for two trees");
  cmd_order->add_option("--tree-p", path_p, "Edge list for tree P")->required();
  cmd_order->add_option("--tree-q", path_q, "Edge list for tree Q")->required();
  add_common(cmd_order, common);

  // subtest
  double eps_sq = 0.0;
  double eta = 1.0 / 3.0;
  int permutations = 200;
  std::uint64_t budget = 0;
  int forced_arity = 0;
  auto* cmd_subtest = app.add_subcommand(
      "subtest", "Two-sample closeness subtest over whole rows");
  cmd_subtest->add_option("--a", path_p, "Sample CSV for side A")->required();
  cmd_subtest->add_option("--b", path_q, "Sample CSV for side B")->required();
  cmd_subtest
      ->add_option("--eps", eps_sq,
                   "Squared Hellinger separation the subtest must detect")
      ->required();
  cmd_subtest->add_option("--eta", eta, "Error budget");
  cmd_subtest->add_option("--permutations", permutations, "Calibration splits");
  cmd_subtest->add_option("--budget", budget, "Required-sample override");
  cmd_subtest->add_option("--arity", forced_arity, "Force symbol count");
  add_common(cmd_subtest, common);

  // test-known / test-unknown / test-trees
  double eps = 0.0;
  int max_in_degree = 1;
  auto* cmd_known = app.add_subcommand(
      "test-known", "Identity test with a known shared structure");
  cmd_known->add_option("--p-samples", path_p, "Sample CSV for P")->required();
  cmd_known->add_option("--q-samples", path_q, "Sample CSV for Q")->required();
  cmd_known->add_option("--dag", model_path, "Model JSON carrying the DAG")
      ->required();
  cmd_known->add_option("--eps", eps, "Total variation separation")->required();
  cmd_known->add_option("--permutations", permutations, "Calibration splits");
  cmd_known->add_option("--budget", budget, "Required-sample override");
  cmd_known->add_option("--arity", forced_arity, "Force symbol count");
  add_common(cmd_known, common);

  auto* cmd_unknown = app.add_subcommand(
      "test-unknown", "Identity test with only an in-degree bound");
  cmd_unknown->add_option("--p-samples", path_p, "Sample CSV for P")
      ->required();
  cmd_unknown->add_option("--q-samples", path_q, "Sample CSV for Q")
      ->required();
  cmd_unknown->add_option("--max-indegree", max_in_degree, "In-degree bound")
      ->required();
  cmd_unknown->add_option("--eps", eps, "Total variation separation")
      ->required();
  cmd_unknown->add_option("--permutations", permutations, "Calibration splits");
  cmd_unknown->add_option("--budget", budget, "Required-sample override");
  cmd_unknown->add_option("--arity", forced_arity, "Force symbol count");
  add_common(cmd_unknown, common);

  auto* cmd_trees = app.add_subcommand(
      "test-trees", "Identity test for two unknown tree-Markov sources");
  cmd_trees->add_option("--p-samples", path_p, "Sample CSV for P")->required();
  cmd_trees->add_option("--q-samples", path_q, "Sample CSV for Q")->required();
  cmd_trees->add_option("--eps", eps, "Total variation separation")->required();
  cmd_trees->add_option("--permutations", permutations, "Calibration splits");
  cmd_trees->add_option("--budget", budget, "Required-sample override");
  cmd_trees->add_option("--arity", forced_arity, "Force symbol count");
  add_common(cmd_trees, common);

  // gof-product
  std::string mode = "monte-carlo-null";
  double c = 10.0, c_prime = 15.0;
  int replicas = 500;
  auto* cmd_gof = app.add_subcommand(
      "gof-product", "Goodness of fit against a known product model");
  cmd_gof->add_option("--p-samples", path_p, "Binary sample CSV")->required();
  cmd_gof->add_option("--q", path_q, "Product model file, one mean per line")
      ->required();
  cmd_gof->add_option("--eps", eps, "Total variation separation")->required();
  cmd_gof->add_option("--mode", mode, "Threshold mode")
      ->check(CLI::IsMember({"chebyshev", "mc", "monte-carlo-null"}));
  cmd_gof->add_option("--replicas", replicas, "Null replicas");
  cmd_gof->add_option("--c", c, "Noise constant");
  cmd_gof->add_option("--c-prime", c_prime, "Poisson rate constant");
  add_common(cmd_gof, common);

  // experiment
  std::string spec_path;
  auto* cmd_exp =
      app.add_subcommand("experiment", "Run a size/power experiment spec");
  cmd_exp->add_option("--spec", spec_path, "Experiment spec JSON")->required();
  add_common(cmd_exp, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    OutStream sink(common.out_path);
    std::ostream& out = sink.get();

    if (cmd_sample->parsed()) {
      const BayesNet net = load_model(model_path);
      const SampleSet rows = sample(net, count, common.seed);
      std::vector<std::string> names;
      names.reserve(static_cast<std::size_t>(net.node_count()));
      for (int v = 0; v < net.node_count(); ++v)
        names.push_back(net.dag().label(v));
      out << names[0];
      for (std::size_t j = 1; j < names.size(); ++j) out << ',' << names[j];
      out << '\n';
      for (std::size_t r = 0; r < rows.rows(); ++r) {
        out << rows.at(r, 0);
        for (int j = 1; j < rows.cols(); ++j) out << ',' << rows.at(r, j);
        out << '\n';
      }
      return 0;
    }

    if (cmd_div->parsed()) {
      const DenseDistribution jp = joint_distribution(load_model(path_p));
      const DenseDistribution jq = joint_distribution(load_model(path_q));
      if (jp.probs().size() != jq.probs().size())
        throw DomainMismatch("models span different joint domains");
      out << "hellinger_sq,total_variation,kl,chi_sq\n";
      out << fmt(hellinger_sq(jp.probs(), jq.probs())) << ','
          << fmt(total_variation(jp.probs(), jq.probs())) << ','
          << fmt(kl(jp.probs(), jq.probs())) << ','
          << fmt(chi_sq(jp.probs(), jq.probs())) << '\n';
      return 0;
    }

    if (cmd_sub->parsed()) {
      const BayesNet net_p = load_model(path_p);
      const BayesNet net_q = load_model(path_q);
      const DenseDistribution jp = joint_distribution(net_p);
      const DenseDistribution jq = joint_distribution(net_q);
      const Factorization fact =
          partition_path.empty() ? neighborhood_factorization(net_p.dag())
                                 : load_factorization(partition_path);
      const DecompositionReport report = decompose(jp, jq, fact);
      out << "block,members,given,term\n";
      for (std::size_t l = 0; l < fact.blocks.size(); ++l)
        out << l << ',' << join(fact.blocks[l].members) << ','
            << join(fact.blocks[l].given) << ',' << fmt(report.terms[l])
            << '\n';
      out << "\ntotal_h_sq,term_sum,slack,argmax_block\n";
      out << fmt(report.total_h_sq) << ','
          << fmt(report.total_h_sq + report.slack) << ',' << fmt(report.slack)
          << ',' << report.argmax_block << '\n';
      return 0;
    }

    if (cmd_order->parsed()) {
      const Tree tree_p = load_tree(path_p);
      const Tree tree_q = load_tree(path_q);
      const OrderingResult result = order_two_trees(tree_p, tree_q);
      out << "position,node,dep_p,dep_q,pi\n";
      for (std::size_t i = 0; i < result.order.size(); ++i)
        out << i << ',' << result.order[i] << ',' << join(result.dep_p[i])
            << ',' << join(result.dep_q[i]) << ',' << join(result.pi[i])
            << '\n';
      return 0;
    }

    if (cmd_subtest->parsed()) {
      const auto [sp, sq] = load_sample_pair(path_p, path_q, forced_arity);
      std::vector<int> all(static_cast<std::size_t>(sp.cols()));
      for (int j = 0; j < sp.cols(); ++j) all[static_cast<std::size_t>(j)] = j;
      SubtestConfig config;
      config.eps_sq = eps_sq;
      config.eta = eta;
      config.permutations = permutations;
      config.sample_budget = budget;
      config.calibration_seed = common.seed;
      const SubtestVerdict verdict = hellinger_subtest(
          empirical_counts(sp, all), empirical_counts(sq, all), config);
      out << "decision,statistic,threshold,pvalue,insufficient_samples\n";
      out << name(verdict.decision) << ',' << fmt(verdict.statistic) << ','
          << fmt(verdict.threshold) << ',' << fmt(verdict.pvalue) << ','
          << (verdict.insufficient_samples ? 1 : 0) << '\n';
      return 0;
    }

    if (cmd_known->parsed() || cmd_unknown->parsed() || cmd_trees->parsed()) {
      const auto [sp, sq] = load_sample_pair(path_p, path_q, forced_arity);
      TesterOptions options;
      options.seed = common.seed;
      options.permutations = permutations;
      options.sample_budget = budget;
      Verdict verdict;
      if (cmd_known->parsed())
        verdict = test_known_structure(sp, sq, load_dag(model_path), eps,
                                       options);
      else if (cmd_unknown->parsed())
        verdict = test_unknown_structure(sp, sq, max_in_degree, eps, options);
      else
        verdict = test_two_trees(sp, sq, eps, options);
      write_verdict(out, verdict);
      return 0;
    }

    if (cmd_gof->parsed()) {
      const SampleSet samples = load_samples(path_p);
      const ProductModel q = load_product_model(path_q);
      GofConfig config;
      config.eps = eps;
      config.c = c;
      config.c_prime = c_prime;
      config.seed = common.seed;
      config.mode = mode == "chebyshev" ? GofThresholdMode::Chebyshev
                                        : GofThresholdMode::MonteCarloNull;
      config.null_replicas = replicas;
      const Verdict verdict = gof_product(samples, q, config);
      const SubtestLogEntry& entry = verdict.subtest_log.front();
      out << "decision,z,threshold,samples_used,truncated\n";
      out << name(verdict.decision) << ',' << fmt(entry.statistic) << ','
          << fmt(entry.threshold) << ',' << verdict.samples_used << ','
          << (verdict.truncated ? 1 : 0) << '\n';
      return 0;
    }

    if (cmd_exp->parsed()) {
      ExperimentSpec spec = load_experiment_spec(spec_path);
      if (common.seed != 0) spec.seed = common.seed;
      const std::string target =
          !common.out_path.empty() ? "" : spec.out;  // --out already bound
      if (!target.empty()) {
        std::ofstream file(target);
        if (!file) throw IoError(target + ": cannot open for writing");
        run_experiment(spec, file);
      } else {
        run_experiment(spec, out);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
