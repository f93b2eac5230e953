#include "bntest/model_io.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "bntest/errors.hpp"
#include "bntest/rng.hpp"
#include "helpers.hpp"

using namespace bntest;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "bntest-io";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_text(const std::string& name, const std::string& content) {
  const auto path = scratch_dir() / name;
  std::ofstream out(path);
  out << content;
  return path.string();
}

}  // namespace

TEST_CASE("model files round-trip") {
  Rng rng(31);
  const Dag dag(3, {{}, {0}, {0, 1}}, {"rain", "sprinkler", "wet"});
  const BayesNet net = testutil::random_net(dag, {2, 3, 2}, rng);
  const auto path = (scratch_dir() / "model.json").string();
  save_model(net, path);

  const BayesNet back = load_model(path);
  CHECK(back.node_count() == 3);
  CHECK(back.arity() == net.arity());
  CHECK(back.dag().label(0) == "rain");
  CHECK(back.dag().parents(2) == std::vector<int>{0, 1});
  for (int v = 0; v < 3; ++v) {
    REQUIRE(back.cpt()[v].size() == net.cpt()[v].size());
    for (std::size_t i = 0; i < net.cpt()[v].size(); ++i)
      CHECK(back.cpt()[v][i] == doctest::Approx(net.cpt()[v][i]).epsilon(1e-12));
  }

  // The same file also loads as a bare graph.
  const Dag graph = load_dag(path);
  CHECK(graph.parents(1) == std::vector<int>{0});
}

TEST_CASE("model loading rejects malformed input") {
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), IoError);
  CHECK_THROWS_AS(load_model(write_text("garbage.json", "not json")), IoError);
  CHECK_THROWS_AS(
      load_model(write_text("nonodes.json", R"({"edges": []})")), IoError);

  // Tables are all-or-none.
  const std::string partial = R"({"nodes": [
    {"arity": 2, "parents": [], "cpt": [[0.5, 0.5]]},
    {"arity": 2, "parents": [0]}
  ]})";
  CHECK_THROWS_AS(load_model(write_text("partial.json", partial)), IoError);

  // Structure-only files load as graphs but not as models.
  const std::string bare = R"({"nodes": [
    {"arity": 2, "parents": []},
    {"arity": 2, "parents": [0]}
  ]})";
  const auto bare_path = write_text("bare.json", bare);
  CHECK(load_dag(bare_path).node_count() == 2);
  CHECK_THROWS_AS(load_model(bare_path), IoError);

  // Graph errors surface as IoError with the path attached.
  const std::string cyclic = R"({"nodes": [
    {"arity": 2, "parents": [1]},
    {"arity": 2, "parents": [0]}
  ]})";
  CHECK_THROWS_AS(load_dag(write_text("cyclic.json", cyclic)), IoError);
}

TEST_CASE("sample files round-trip") {
  const SampleSet samples(3, {2, 4}, {0, 3, 1, 0, 0, 2});
  const std::vector<std::string> names{"a", "b"};
  const auto path = (scratch_dir() / "samples.csv").string();
  save_samples(samples, names, path);

  SUBCASE("inferred arity is max symbol plus one") {
    const SampleSet back = load_samples(path);
    CHECK(back.rows() == 3);
    CHECK(back.arity() == std::vector<int>{2, 4});
    CHECK(back.data() == samples.data());
  }
  SUBCASE("explicit arity widens the columns") {
    const std::vector<int> arity{3, 5};
    const SampleSet back = load_samples(path, arity);
    CHECK(back.arity() == arity);
  }
  SUBCASE("explicit arity must fit the data") {
    const std::vector<int> arity{2, 3};  // column b holds a 3
    CHECK_THROWS_AS(load_samples(path, arity), IoError);
  }
  SUBCASE("arity list must match the column count") {
    const std::vector<int> arity{2};
    CHECK_THROWS_AS(load_samples(path, arity), IoError);
  }
  SUBCASE("name list must match the column count") {
    const std::vector<std::string> narrow{"a"};
    CHECK_THROWS_AS(save_samples(samples, narrow, path), ShapeMismatch);
  }
}

TEST_CASE("sample loading rejects malformed input") {
  CHECK_THROWS_AS(load_samples("/nonexistent/samples.csv"), IoError);
  CHECK_THROWS_AS(load_samples(write_text("empty.csv", "")), IoError);
  CHECK_THROWS_AS(load_samples(write_text("badsym.csv", "a,b\n0,x\n")),
                  IoError);
  CHECK_THROWS_AS(load_samples(write_text("ragged.csv", "a,b\n0,1\n0\n")),
                  IoError);
  CHECK_THROWS_AS(load_samples(write_text("negative.csv", "a\n-1\n")), IoError);
}

TEST_CASE("tree files") {
  const Tree tree = load_tree(write_text("tree.txt", "0 1\n1 2\n\n2 3\n"));
  CHECK(tree.node_count() == 4);
  CHECK(tree.parent(3) == 2);
  CHECK_THROWS_AS(load_tree("/nonexistent/tree.txt"), IoError);
  CHECK_THROWS_AS(load_tree(write_text("halfedge.txt", "0\n")), IoError);
  // Structural violations surface as IoError.
  CHECK_THROWS_AS(load_tree(write_text("cycle.txt", "0 1\n1 2\n2 0\n")),
                  IoError);
}

TEST_CASE("product model files") {
  const ProductModel model =
      load_product_model(write_text("prod.txt", "0.5\n0.25\n\n0.75\n"));
  CHECK(model.means == std::vector<double>{0.5, 0.25, 0.75});
  CHECK_THROWS_AS(load_product_model(write_text("prodempty.txt", "")), IoError);
  CHECK_THROWS_AS(load_product_model(write_text("prodbad.txt", "zz\n")),
                  IoError);
}

TEST_CASE("factorization files") {
  const Factorization fact =
      load_factorization(write_text("fact.txt", "0 1 |\n2 | 0\n3\n"));
  REQUIRE(fact.blocks.size() == 3);
  CHECK(fact.blocks[0].members == std::vector<int>{0, 1});
  CHECK(fact.blocks[0].given.empty());
  CHECK(fact.blocks[1].members == std::vector<int>{2});
  CHECK(fact.blocks[1].given == std::vector<int>{0});
  CHECK(fact.blocks[2].members == std::vector<int>{3});
  CHECK(fact.blocks[2].given.empty());
  CHECK_THROWS_AS(load_factorization("/nonexistent/fact.txt"), IoError);
}
