#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

#include "gsdbench/digraph.hpp"

using gsdbench::transitive_reduction;
using Adjacency = std::vector<std::vector<int>>;

namespace {

Adjacency closure(const Adjacency& succ) {
  const std::size_t n = succ.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t v = 0; v < n; ++v)
    for (int w : succ[v]) reach[v][w] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = 1;
  Adjacency out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (reach[i][j]) out[i].push_back(static_cast<int>(j));
  return out;
}

}  // namespace

TEST_CASE("chain shortcut is removed") {
  Adjacency g = {{1, 2}, {2}, {}};
  const Adjacency r = transitive_reduction(g);
  CHECK(r[0] == std::vector<int>{1});
  CHECK(r[1] == std::vector<int>{2});
  CHECK(r[2].empty());
}

TEST_CASE("diamond keeps its four covering edges") {
  Adjacency g = {{1, 2, 3}, {3}, {3}, {}};
  const Adjacency r = transitive_reduction(g);
  CHECK(r[0] == std::vector<int>{1, 2});
  CHECK(r[1] == std::vector<int>{3});
  CHECK(r[2] == std::vector<int>{3});
}

TEST_CASE("empty and single-vertex graphs pass through") {
  CHECK(transitive_reduction({}).empty());
  const Adjacency r = transitive_reduction({{}});
  REQUIRE(r.size() == 1);
  CHECK(r[0].empty());
}

TEST_CASE("cycles are rejected") {
  CHECK_THROWS_AS(transitive_reduction({{1}, {0}}), std::invalid_argument);
  CHECK_THROWS_AS(transitive_reduction({{1}, {2}, {0}}), std::invalid_argument);
}

TEST_CASE("reduction preserves reachability and is minimal") {
  std::mt19937_64 eng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + eng() % 9;
    Adjacency g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (eng() % 3 == 0) g[i].push_back(static_cast<int>(j));

    const Adjacency r = transitive_reduction(g);
    CHECK(closure(r) == closure(g));

    // Dropping any kept edge must lose reachability.
    for (std::size_t v = 0; v < n; ++v) {
      for (int w : r[v]) {
        Adjacency pruned = r;
        auto& out = pruned[v];
        out.erase(std::find(out.begin(), out.end(), w));
        CHECK(closure(pruned) != closure(g));
      }
    }
  }
}
