#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "bntest/bayes_net.hpp"

namespace bntest {

enum class Scenario { Size, Power };

/**
 * Random instance family: "chain", "star", "tree" (random attachment),
 * "dag" (random parents, in-degree at most d), or "product" (binary,
 * no edges). `perturbation` is the probability mass moved inside one
 * CPT row of the sampled source to build a far pair; 0 keeps the pair
 * identical.
 */
struct GeneratorSpec {
  std::string family = "chain";
  int n = 3;
  int k = 2;
  int d = 1;
  double perturbation = 0.0;
};

/** Tester under experiment: "known", "unknown", "trees" or "gof". */
struct TesterSpec {
  std::string id = "known";
  double eps = 0.3;
  int permutations = 200;
  int max_in_degree = 1;              // unknown-structure tester
  std::string gof_mode = "monte-carlo-null";  // or "chebyshev"
  double c = 10.0;
  double c_prime = 15.0;
  int null_replicas = 500;
};

struct ExperimentSpec {
  Scenario scenario = Scenario::Size;
  GeneratorSpec generator;
  TesterSpec tester;
  int trials = 20;
  std::uint64_t seed = 0;
  /** Rows per source; 0 derives the budget from the tester's needs. */
  std::uint64_t sample_override = 0;
  /** Exact-TV oracle cap; larger joint domains leave the column empty. */
  std::size_t oracle_cap = std::size_t{1} << 20;
  /** Report destination; empty means the caller picks the stream. */
  std::string out;
};

ExperimentSpec load_experiment_spec(const std::string& path);

/**
 * Instance for one trial: the sampled source P (perturbed under the
 * power scenario), the reference Q, and exact total variation when the
 * joint domain fits the oracle cap. Deterministic in (spec.seed, trial).
 */
struct Instance {
  BayesNet p;
  BayesNet q;
  std::optional<double> exact_tv;
};

Instance generate_instance(const ExperimentSpec& spec, int trial);

struct ExperimentSummary {
  int trials = 0;
  int included = 0;   // trials counted in the rate (power gates on the oracle)
  int excluded = 0;
  int far_count = 0;
  double far_rate = 0.0;
  double wilson_low = 0.0;
  double wilson_high = 0.0;
  std::uint64_t determinism_hash = 0;  // over all trial rows, wall time excluded
};

/**
 * Runs all trials and streams a CSV report: one row per trial, a blank
 * line, then a one-row summary with the far rate, its Wilson 95%
 * interval and the determinism hash. Wall time is the only
 * nondeterministic column and is excluded from the hash.
 */
ExperimentSummary run_experiment(const ExperimentSpec& spec, std::ostream& out);

}  // namespace bntest
