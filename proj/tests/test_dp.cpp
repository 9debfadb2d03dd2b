#include <doctest.h>

#include "lpds/brute_force.hpp"
#include "lpds/dp_solver.hpp"
#include "lpds/generators.hpp"
#include "support.hpp"

using namespace lpds;

namespace {

BagState blank(const BagContext& bc) {
  BagState s;
  s.label.assign(bc.bag.size(), kInf);
  s.edges.assign(bc.edges.size(), EdgeDir::None);
  return s;
}

void check_against_bf(const Graph& g, const NodeSet& targets, int ell) {
  auto dp = solve_dp(g, targets, ell);
  auto bf = solve_bf(g, targets, ell);
  CHECK(dp.opt == bf.opt);
  CHECK(static_cast<int>(dp.witness.size()) == dp.opt);
  CHECK(is_feasible(g, dp.witness, targets, ell));
}

}  // namespace

TEST_SUITE("dp-solver") {
  TEST_CASE("invalid-state clauses") {
    const Graph single(1);
    auto leaf = BagContext::make(single, {0}, NodeSet::all(1), 2);
    auto s = blank(leaf);
    CHECK(is_invalid_state(leaf, s));  // target left unreached
    s.label = {0};
    CHECK_FALSE(is_invalid_state(leaf, s));
    s.label = {2};
    CHECK(is_invalid_state(leaf, s));  // plain label nothing justifies
    s.label = {-2};
    CHECK_FALSE(is_invalid_state(leaf, s));  // hatted: justification still pending
    s.in_below = {1};
    CHECK(is_invalid_state(leaf, s));
    s.label = {2};
    CHECK_FALSE(is_invalid_state(leaf, s));
    s.label = {3};
    CHECK(is_invalid_state(leaf, s));  // beyond ell

    const Graph edge(2, std::vector<Edge>{{0, 1}});
    auto bc = BagContext::make(edge, {0, 1}, NodeSet(2), 2);
    auto e = blank(bc);
    e.label = {0, 1};
    e.edges = {EdgeDir::Forward};
    CHECK_FALSE(is_invalid_state(bc, e));
    e.label = {1, 0};
    CHECK(is_invalid_state(bc, e));  // origin with an incoming edge
    e.label = {kInf, 1};
    CHECK(is_invalid_state(bc, e));  // unreached endpoint of a directed edge
    e.label = {0, 2};
    CHECK(is_invalid_state(bc, e));  // time 2 needs max around the tail = 1
  }

  TEST_CASE("state space sizes") {
    CHECK(state_space_size(1, 0, 1) == 60);
    CHECK(state_space_size(0, 0, 7) == 1);
    CHECK(state_space_size(2, 1, 2) == 43200);
    CHECK(state_space_size(3, 3, 3) == 27ull * 512 * 125 * 125);
    CHECK(state_space_size(200, 200, 100) == UINT64_MAX);
  }

  TEST_CASE("P3 in one round") {
    const Graph g = oracle::path(3);
    TreeDecomposition td;
    td.n = 3;
    td.bags = {{0, 1}, {1, 2}};
    td.tree = {{0, 1}};
    auto r = solve_dp(g, NodeSet::all(3), 1, to_nice(g, td));
    CHECK(r.opt == 1);
    CHECK(r.witness.members() == std::vector<Node>{1});
    CHECK(r.stats.width == 1);
  }

  TEST_CASE("spider rounds") {
    const Graph g = spider(3, 3);
    const NodeSet all = NodeSet::all(static_cast<std::size_t>(g.num_nodes()));
    auto three = solve_dp(g, all, 3);
    CHECK(three.opt == 1);
    CHECK(three.witness.members() == std::vector<Node>{0});
    CHECK(solve_dp(g, all, 2).opt == 3);
  }

  TEST_CASE("one round equals domination") {
    std::mt19937_64 rng(21);
    for (int it = 0; it < 60; ++it) {
      const int n = 1 + static_cast<int>(rng() % 10);
      const Graph g = oracle::random_graph(rng, n, 0.3);
      CHECK(solve_dp(g, NodeSet::all(static_cast<std::size_t>(n)), 1).opt == solve_domset_bf(g).opt);
    }
  }

  TEST_CASE("rounds beyond n-1 are clamped") {
    const Graph g = oracle::path(5);
    const NodeSet all = NodeSet::all(5);
    CHECK(solve_dp(g, all, 4).opt == solve_dp(g, all, 40).opt);
    CHECK(solve_dp(g, all, 40).opt == 1);
  }

  TEST_CASE("agrees with brute force on random small graphs") {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 120; ++it) {
      const int n = 1 + static_cast<int>(rng() % 8);
      const Graph g = oracle::random_graph(rng, n, 0.2 + 0.1 * static_cast<double>(rng() % 4));
      const int ell = 1 + static_cast<int>(rng() % n);
      check_against_bf(g, NodeSet::all(static_cast<std::size_t>(n)), ell);
      check_against_bf(g, oracle::random_subset(rng, n, 0.5), ell);
    }
  }

  TEST_CASE("stored states satisfy the subtree invariant") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 40; ++it) {
      const int n = 2 + static_cast<int>(rng() % 6);
      const Graph g = oracle::random_graph(rng, n, 0.35);
      const int ell = 1 + static_cast<int>(rng() % 3);
      auto ntd = to_nice(g, heuristic_td(g));
      auto bad = audit_dp_invariant(g, oracle::random_subset(rng, n, 0.6), ell, ntd);
      CHECK_MESSAGE(!bad.has_value(), (bad ? *bad : std::string()));
    }
  }

  TEST_CASE("budget and bad decompositions") {
    const Graph g = oracle::complete(5);
    DpOptions tiny;
    tiny.max_states = 2;
    CHECK_THROWS_AS(solve_dp(g, NodeSet::all(5), 2, tiny), BudgetExceeded);
    TreeDecomposition td;
    td.n = 3;
    td.bags = {{0, 1}, {2}};
    td.tree = {{0, 1}};
    CHECK_THROWS_AS(solve_dp(oracle::path(3), NodeSet::all(3), 1, to_nice(Graph(3), td)), std::invalid_argument);
  }
}
