#include <doctest.h>

#include <vector>

#include "bntest/dag.hpp"
#include "bntest/errors.hpp"

using namespace bntest;

TEST_CASE("construction validates parent lists") {
  CHECK_NOTHROW(Dag(3, {{}, {0}, {1}}));
  CHECK_THROWS_AS(Dag(2, {{}, {1}}), InvalidModel);      // self-loop
  CHECK_THROWS_AS(Dag(2, {{}, {0, 0}}), InvalidModel);   // duplicate
  CHECK_THROWS_AS(Dag(2, {{}, {2}}), UnknownVariable);   // out of range
  CHECK_THROWS_AS(Dag(2, {{}, {-1}}), UnknownVariable);
  CHECK_THROWS_AS(Dag(2, {{}}), InvalidModel);           // wrong list count
  CHECK_THROWS_AS(Dag(-1, {}), InvalidModel);
}

TEST_CASE("parents are normalized ascending and labels default") {
  Dag dag(3, {{}, {}, {1, 0}});
  CHECK(dag.parents(2) == std::vector<int>{0, 1});
  CHECK(dag.label(0) == "X0");
  CHECK(dag.max_in_degree() == 2);
  Dag named(1, {{}}, {"alpha"});
  CHECK(named.label(0) == "alpha");
}

TEST_CASE("topological order of a chain is the chain") {
  Dag dag(3, {{}, {0}, {1}});
  CHECK(topological_order(dag) == std::vector<int>{0, 1, 2});
}

TEST_CASE("topological order of a reversed chain") {
  // parents[0]={1}, parents[1]={2}: edges 2->1->0
  Dag dag(3, {{1}, {2}, {}});
  CHECK(topological_order(dag) == std::vector<int>{2, 1, 0});
}

TEST_CASE("topological order breaks ties by ascending index") {
  // 1 and 2 both depend only on 3; 0 is free.
  Dag dag(4, {{}, {3}, {3}, {}});
  CHECK(topological_order(dag) == std::vector<int>{0, 3, 1, 2});
}

TEST_CASE("cycles are rejected") {
  Dag dag(3, {{2}, {0}, {1}});
  CHECK_THROWS_AS((void)topological_order(dag), CycleDetected);
}
