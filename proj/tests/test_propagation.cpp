#include <doctest.h>

#include "lpds/generators.hpp"
#include "lpds/propagation.hpp"
#include "support.hpp"

using namespace lpds;

TEST_SUITE("propagation") {
  TEST_CASE("spider: center then path by path") {
    const Graph g = spider(3, 2);  // paths 1-2, 3-4, 5-6
    NodeSet s(7, std::vector<Node>{0});
    auto tr = propagate(g, s, 2);
    CHECK(tr.times == std::vector<int>{0, 1, 2, 1, 2, 1, 2});
    CHECK(tr.reached_by(1).members() == std::vector<Node>{0, 1, 3, 5});
    CHECK(tr.reached_by(2).size() == 7);
  }

  TEST_CASE("empty source set reaches nothing") {
    auto tr = propagate(oracle::cycle(5), NodeSet(5), 4);
    for (int t : tr.times) CHECK(t == kInf);
  }

  TEST_CASE("four-cycle from one node") {
    auto tr = propagate(oracle::cycle(4), NodeSet(4, std::vector<Node>{0}), 3);
    CHECK(tr.times == std::vector<int>{0, 1, 2, 1});
  }

  TEST_CASE("feasibility on spiders") {
    for (int ell = 1; ell <= 4; ++ell) {
      const Graph g = spider(3, ell + 1);
      NodeSet center(static_cast<std::size_t>(g.num_nodes()), std::vector<Node>{0});
      const NodeSet all = NodeSet::all(static_cast<std::size_t>(g.num_nodes()));
      CHECK(is_feasible(g, center, all, ell + 1));
      CHECK_FALSE(is_feasible(g, center, all, ell));
      CHECK(is_feasible(g, NodeSet(static_cast<std::size_t>(g.num_nodes())), NodeSet(static_cast<std::size_t>(g.num_nodes())), ell));
    }
  }

  TEST_CASE("argument checks") {
    CHECK_THROWS_AS(propagate(oracle::path(3), NodeSet(3), 0), std::invalid_argument);
    CHECK(format_time(kInf) == "inf");
    CHECK(format_time(3) == "3");
    CHECK(full_rounds(Graph(1)) == 1);
    CHECK(full_rounds(oracle::path(6)) == 5);
  }

  TEST_CASE("matches the naive set recursion") {
    std::mt19937_64 rng(5);
    for (int it = 0; it < 300; ++it) {
      const int n = 1 + static_cast<int>(rng() % 12);
      const Graph g = oracle::random_graph(rng, n, 0.1 + 0.1 * static_cast<double>(rng() % 5));
      const NodeSet s = oracle::random_subset(rng, n, 0.2);
      const int k = 1 + static_cast<int>(rng() % n);
      auto tr = propagate(g, s, k);
      auto ref = oracle::naive_times(g, oracle::as_set(s), k);
      for (Node v = 0; v < n; ++v) {
        const int a = tr.times[static_cast<std::size_t>(v)];
        const int b = ref[static_cast<std::size_t>(v)];
        CHECK(((a == kInf) ? oracle::kUnreached : a) == b);
      }
    }
  }

  TEST_CASE("monotone in rounds and in the source set; fixed point") {
    std::mt19937_64 rng(6);
    for (int it = 0; it < 200; ++it) {
      const int n = 2 + static_cast<int>(rng() % 11);
      const Graph g = oracle::random_graph(rng, n, 0.3);
      NodeSet s = oracle::random_subset(rng, n, 0.2);
      NodeSet bigger = s;
      bigger |= oracle::random_subset(rng, n, 0.2);
      for (int k = 1; k < n; ++k) {
        auto a = propagate(g, s, k).reached_by(k);
        auto b = propagate(g, s, k + 1).reached_by(k + 1);
        CHECK(a.is_subset_of(b));
        CHECK(a.is_subset_of(propagate(g, bigger, k).reached_by(k)));
        if (a == propagate(g, s, k + 1).reached_by(k + 1))
          CHECK(a == propagate(g, s, n + 3).reached_by(n + 3));
      }
      // origins carry time 0 exactly
      auto tr = propagate(g, s, n);
      for (Node v = 0; v < n; ++v) CHECK((tr.times[static_cast<std::size_t>(v)] == 0) == s.contains(v));
    }
  }
}
