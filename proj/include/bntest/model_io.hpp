#pragma once

#include <span>
#include <string>

#include "bntest/bayes_net.hpp"
#include "bntest/factorization.hpp"
#include "bntest/gof_product.hpp"
#include "bntest/sample_set.hpp"
#include "bntest/tree.hpp"

namespace bntest {

/**
 * Model file: JSON object {"nodes": [...]}, one entry per node with
 * "arity" (int), "parents" (array of node indices), optional "name",
 * and "cpt" (array of rows; rows keyed by the mixed-radix encoding over
 * ascending parent ids, each row one distribution over the node's
 * symbols). load_dag accepts the same format with "cpt" omitted.
 */
BayesNet load_model(const std::string& path);
Dag load_dag(const std::string& path);
void save_model(const BayesNet& net, const std::string& path);

/**
 * Sample file: CSV with a header row of column names and one sample of
 * nonnegative integer symbols per row. Column arities are taken from
 * `arity` when given, otherwise inferred as max symbol + 1.
 */
SampleSet load_samples(const std::string& path, std::span<const int> arity = {});
void save_samples(const SampleSet& samples,
                  std::span<const std::string> names, const std::string& path);

/** Tree file: one edge "u v" per line; nodes 0..n-1 with n inferred. */
Tree load_tree(const std::string& path);

/** Product model file: one mean per line. */
ProductModel load_product_model(const std::string& path);

/**
 * Factorization file: one block per line, "members | given" with
 * space-separated variable ids and an optional empty given part.
 */
Factorization load_factorization(const std::string& path);

}  // namespace bntest
