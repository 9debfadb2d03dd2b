#include <doctest.h>

#include <functional>
#include <sstream>

#include "lpds/brute_force.hpp"
#include "lpds/generators.hpp"
#include "lpds/propagation.hpp"
#include "support.hpp"

using namespace lpds;

namespace {

MinRepInstance instance(int qa, int ma, int qb, int mb, std::vector<std::pair<int, int>> edges) {
  MinRepInstance m;
  m.q_a = qa;
  m.m_a = ma;
  m.q_b = qb;
  m.m_b = mb;
  m.edges = std::move(edges);
  return m;
}

NodeSet nodes_of(int n, std::vector<Node> v) { return NodeSet(static_cast<std::size_t>(n), v); }

// Every size-k subset of [0, n) that avoids `banned`, tested for feasibility.
bool some_feasible_without(const Graph& g, int k, Node banned, int ell) {
  const int n = g.num_nodes();
  const NodeSet all = NodeSet::all(static_cast<std::size_t>(n));
  std::vector<Node> pick;
  std::function<bool(Node)> rec = [&](Node from) {
    if (static_cast<int>(pick.size()) == k) return is_feasible(g, nodes_of(n, pick), all, ell);
    for (Node v = from; v < n; ++v) {
      if (v == banned) continue;
      pick.push_back(v);
      if (rec(v + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

}  // namespace

TEST_SUITE("generators") {
  TEST_CASE("spiders") {
    const Graph g = spider(3, 2);
    CHECK(g.num_nodes() == 7);
    CHECK(g.num_edges() == 6);
    CHECK(g.degree(0) == 3);
    CHECK(spider(1, 1) == oracle::path(2));
    CHECK(spider(2, 1).num_edges() == 2);
    CHECK(spider(2, 1).degree(0) == 2);
    CHECK_THROWS_AS(spider(0, 2), std::invalid_argument);
  }

  TEST_CASE("spider optimum jumps by one round") {
    for (int m = 1; m <= 4; ++m)
      for (int ell = 1; ell <= 3; ++ell) {
        const Graph g = spider(m, ell + 1);
        const NodeSet all = NodeSet::all(static_cast<std::size_t>(g.num_nodes()));
        CHECK(solve_bf(g, all, ell + 1).opt == 1);
        CHECK(solve_bf(g, all, ell).opt == m);
      }
  }

  TEST_CASE("pendant cycles") {
    const Graph g9 = pendant_cycle(9);
    CHECK(g9.num_nodes() == 18);
    CHECK(g9.num_edges() == 18);
    CHECK(g9.has_edge(0, 9));
    CHECK(g9.has_edge(8, 0));
    CHECK(solve_bf(pendant_cycle(3), NodeSet::all(6), 5).opt == 1);
    CHECK(solve_bf(g9, NodeSet::all(18), 17).opt == 3);
    CHECK(solve_bf(g9, NodeSet::all(18), 2).opt == 3);
    CHECK_THROWS_AS(pendant_cycle(2), std::invalid_argument);
  }

  TEST_CASE("attached paths turn domination into rounds") {
    CHECK(attach_paths(oracle::cycle(5), 1) == oracle::cycle(5));
    const Graph p = attach_paths(oracle::path(2), 3);
    CHECK(p.num_nodes() == 6);
    CHECK(p.num_edges() == 5);
    std::mt19937_64 rng(61);
    for (int it = 0; it < 25; ++it) {
      const int n = 1 + static_cast<int>(rng() % 6);
      const Graph g = oracle::random_graph(rng, n, 0.4);
      const int dom = solve_domset_bf(g).opt;
      for (int ell = 2; ell <= 3; ++ell) {
        const Graph h = attach_paths(g, ell);
        CHECK(h.num_nodes() == n * ell);
        CHECK(solve_bf(h, NodeSet::all(static_cast<std::size_t>(h.num_nodes())), ell).opt == dom);
      }
    }
  }

  TEST_CASE("grid and random graphs") {
    const Graph g = grid_graph(3, 4);
    CHECK(g.num_nodes() == 12);
    CHECK(g.num_edges() == 17);
    CHECK(random_graph(20, 0.3, 7) == random_graph(20, 0.3, 7));
    CHECK(random_graph(10, 1.0, 1) == oracle::complete(10));
    CHECK(random_graph(10, 0.0, 1).num_edges() == 0);
  }

  TEST_CASE("minrep files and cover checks") {
    auto inst = instance(2, 2, 2, 1, {{0, 0}, {3, 1}, {1, 1}});
    CHECK(inst.super_edges() == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}});
    std::ostringstream out;
    emit_minrep(out, inst);
    std::istringstream in(out.str());
    auto back = parse_minrep(in);
    CHECK(back.edges == inst.edges);
    CHECK(back.q_a == 2);
    CHECK(back.m_b == 1);
    const int u = inst.num_a() + inst.num_b();
    CHECK(minrep_cover_check(inst, NodeSet::all(static_cast<std::size_t>(u))));
    CHECK_FALSE(minrep_cover_check(inst, NodeSet(static_cast<std::size_t>(u))));
    auto [c, pick] = minrep_optimum(inst);
    CHECK(minrep_cover_check(inst, pick));
    CHECK(static_cast<int>(pick.size()) == c);
    // A_1-B_1 needs a1,b1; A_1-B_2 needs a2,b2; A_2-B_2 needs a4,b2
    CHECK(c == 5);
    for (Node drop : pick.members()) {
      NodeSet less = pick;
      less.erase(drop);
      CHECK_FALSE(minrep_cover_check(inst, less));
    }
    CHECK_THROWS_AS(instance(1, 2, 1, 2, {{0, 2}}).validate(), std::invalid_argument);
    CHECK_THROWS_AS(instance(1, 2, 1, 2, {{0, 1}, {0, 1}}).validate(), std::invalid_argument);
    std::istringstream bad("p minrep 1 1 1 1 1\ne 1 2\n");
    CHECK_THROWS_AS(parse_minrep(bad), ParseError);
  }

  TEST_CASE("reduction shape") {
    auto none = minrep_to_pds(instance(1, 2, 1, 2, {}));
    CHECK(none.graph.num_nodes() == 8);
    CHECK(none.copies.empty());
    CHECK(none.graph.degree(none.master) == 7);
    for (Node w : none.leaves) {
      CHECK(none.graph.degree(w) == 1);
      CHECK(none.graph.has_edge(w, none.master));
    }

    auto one = minrep_to_pds(instance(1, 1, 1, 1, {{0, 0}}));
    CHECK(one.copies.size() == 4);
    CHECK(one.graph.num_nodes() <= 4 + 2 + 10 * 4);
    CHECK_FALSE(one.graph.has_edge(0, 1));
    for (const auto& cp : one.copies) {
      CHECK(cp.a == std::vector<Node>{0});
      CHECK(cp.b == std::vector<Node>{1});
      CHECK(cp.arms.size() == 2);
      CHECK(cp.nodes().size() == 1 + 3 + 6);
    }
    CHECK(one.roles.size() == static_cast<std::size_t>(one.graph.num_nodes()));
    CHECK(one.roles[static_cast<std::size_t>(one.master)] == "w*");
  }

  TEST_CASE("arms carry domination from the center outwards only") {
    auto red = minrep_to_pds(instance(1, 2, 1, 1, {{0, 0}, {1, 0}}));
    for (const auto& cp : red.copies)
      for (const auto& arm : cp.arms) {
        auto sub = induced_subgraph(red.graph, nodes_of(red.graph.num_nodes(), {cp.center, arm.alpha, arm.beta, arm.gamma, arm.target, red.master}));
        auto local = [&](Node v) { return sub.to_local[static_cast<std::size_t>(v)]; };
        const int m = sub.graph.num_nodes();
        auto fwd = propagate(sub.graph, nodes_of(m, {local(cp.center), local(red.master)}), m);
        CHECK(fwd.times[static_cast<std::size_t>(local(arm.beta))] == 2);
        CHECK(fwd.times[static_cast<std::size_t>(local(arm.target))] == 3);
        auto back = propagate(sub.graph, nodes_of(m, {local(arm.target), local(red.master)}), m);
        CHECK(back.times[static_cast<std::size_t>(local(cp.center))] == kInf);
        CHECK(back.times[static_cast<std::size_t>(local(arm.beta))] == kInf);
      }
    // a whole copy is covered within four rounds from its center and w*
    const auto& cp = red.copies.front();
    std::vector<Node> keep = cp.nodes();
    keep.push_back(red.master);
    for (Node a : cp.a) keep.push_back(a);
    for (Node b : cp.b) keep.push_back(b);
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    auto sub = induced_subgraph(red.graph, nodes_of(red.graph.num_nodes(), keep));
    const int m = sub.graph.num_nodes();
    auto tr = propagate(sub.graph, nodes_of(m, {sub.to_local[static_cast<std::size_t>(cp.center)], sub.to_local[static_cast<std::size_t>(red.master)]}), 4);
    CHECK(tr.reached_by(4).size() == static_cast<std::size_t>(m));
  }

  TEST_CASE("optimum is the cover plus the master node") {
    auto inst = instance(1, 1, 1, 1, {{0, 0}});
    auto red = minrep_to_pds(inst);
    const Graph& g = red.graph;
    const NodeSet all = NodeSet::all(static_cast<std::size_t>(g.num_nodes()));
    BfOptions big;
    big.allow_large = true;
    big.size_cap = 4;
    auto bf = solve_bf(g, all, 4, big);
    REQUIRE_FALSE(bf.exceeded);
    CHECK(bf.opt == minrep_optimum(inst).first + 1);
    CHECK(bf.witness.contains(red.master));
    CHECK_FALSE(some_feasible_without(g, bf.opt, red.master, 4));
    CHECK(is_feasible(g, nodes_of(g.num_nodes(), {0, 1, red.master}), all, 4));
  }
}
