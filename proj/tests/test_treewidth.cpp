#include <doctest.h>

#include <functional>

#include "lpds/tree_decomposition.hpp"
#include "support.hpp"

using namespace lpds;

namespace {

TreeDecomposition p4_path_td() {
  TreeDecomposition td;
  td.n = 4;
  td.bags = {{0, 1}, {1, 2}, {2, 3}};
  td.tree = {{0, 1}, {1, 2}};
  return td;
}

// Y_i = union of subtree bags minus X_i; checks Y_i is disjoint from X_i and Y_child within Y_i plus X_i.
void check_below_sets(const NiceTreeDecomposition& ntd) {
  std::vector<std::set<Node>> below(ntd.nodes.size());
  std::function<std::set<Node>(int)> subtree = [&](int i) {
    std::set<Node> all(ntd.nodes[static_cast<std::size_t>(i)].bag.begin(), ntd.nodes[static_cast<std::size_t>(i)].bag.end());
    for (int c : ntd.nodes[static_cast<std::size_t>(i)].children) {
      auto s = subtree(c);
      all.insert(s.begin(), s.end());
    }
    std::set<Node> y;
    for (Node v : all)
      if (!std::binary_search(ntd.nodes[static_cast<std::size_t>(i)].bag.begin(), ntd.nodes[static_cast<std::size_t>(i)].bag.end(), v))
        y.insert(v);
    below[static_cast<std::size_t>(i)] = y;
    return all;
  };
  subtree(ntd.root);
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const auto& bag = ntd.nodes[i].bag;
    for (Node v : below[i]) CHECK_FALSE(std::binary_search(bag.begin(), bag.end(), v));
    for (int c : ntd.nodes[i].children)
      for (Node v : below[static_cast<std::size_t>(c)])
        CHECK((below[i].count(v) || std::binary_search(bag.begin(), bag.end(), v)));
  }
}

void check_nice(const Graph& g, const TreeDecomposition& td) {
  auto ntd = to_nice(g, td);
  CHECK_FALSE(validate_nice(g, ntd).has_value());
  CHECK_FALSE(validate_td(g, ntd.as_td()).has_value());
  CHECK(ntd.width() == td.width());
  CHECK(ntd.nodes.size() <= 8 * (static_cast<std::size_t>(g.num_nodes()) + td.bags.size()));
  std::set<std::vector<Node>> nice_bags;
  for (const auto& nd : ntd.nodes) nice_bags.insert(nd.bag);
  for (const auto& b : td.bags) CHECK(nice_bags.count(b));
  check_below_sets(ntd);
}

}  // namespace

TEST_SUITE("treewidth") {
  TEST_CASE("path decomposition of P4") {
    const Graph g = oracle::path(4);
    auto td = p4_path_td();
    CHECK_FALSE(validate_td(g, td).has_value());
    CHECK(td.width() == 1);
    CHECK(td.max_bag_edges(g) == 1);
  }

  TEST_CASE("rewired tree breaks connectivity") {
    auto td = p4_path_td();
    td.tree = {{0, 2}, {0, 1}};
    auto bad = validate_td(oracle::path(4), td);
    REQUIRE(bad.has_value());
    CHECK(bad->property == 3);
    CHECK(bad->node == 2);
  }

  TEST_CASE("dropping a bag uncovers an edge") {
    TreeDecomposition td;
    td.n = 4;
    td.bags = {{0, 1}, {2, 3}};
    td.tree = {{0, 1}};
    auto bad = validate_td(oracle::path(4), td);
    REQUIRE(bad.has_value());
    CHECK(bad->property == 2);
    CHECK(bad->edge == Edge{1, 2});
  }

  TEST_CASE("missing node breaks coverage") {
    TreeDecomposition td;
    td.n = 3;
    td.bags = {{0, 1}};
    auto bad = validate_td(Graph(3, std::vector<Edge>{{0, 1}}), td);
    REQUIRE(bad.has_value());
    CHECK(bad->property == 1);
    CHECK(bad->node == 2);
  }

  TEST_CASE("nice form of a single bag") {
    const Graph g = oracle::complete(3);
    TreeDecomposition td;
    td.n = 3;
    td.bags = {{0, 1, 2}};
    auto ntd = to_nice(g, td);
    CHECK(ntd.width() == 2);
    int leaves = 0, inserts = 0;
    for (const auto& nd : ntd.nodes) {
      leaves += nd.kind == NiceKind::Leaf;
      inserts += nd.kind == NiceKind::Insert;
      CHECK(nd.kind != NiceKind::Join);
    }
    CHECK(leaves == 1);
    CHECK(inserts == 2);
    check_nice(g, td);
  }

  TEST_CASE("nice form of P4 and of a star") {
    const Graph p4 = oracle::path(4);
    auto ntd = to_nice(p4, p4_path_td());
    CHECK(ntd.width() == 1);
    CHECK(ntd.nodes.size() <= 32);
    check_nice(p4, p4_path_td());

    const Graph s = oracle::star(3);
    TreeDecomposition td;
    td.n = 4;
    td.bags = {{0, 1}, {0, 2}, {0, 3}};
    td.tree = {{0, 1}, {0, 2}};
    auto sn = to_nice(s, td);
    CHECK(sn.width() == 1);
    check_nice(s, td);
  }

  TEST_CASE("invalid input to the nice conversion") {
    auto td = p4_path_td();
    td.tree = {{0, 2}, {0, 1}};
    CHECK_THROWS_AS(to_nice(oracle::path(4), td), std::invalid_argument);
  }

  TEST_CASE("heuristic widths") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 30; ++it) {
      const Graph t = oracle::random_tree(rng, 2 + static_cast<int>(rng() % 30));
      auto td = heuristic_td(t);
      CHECK_FALSE(validate_td(t, td).has_value());
      CHECK(td.width() == 1);
    }
    for (int n = 3; n <= 12; ++n) CHECK(heuristic_td(oracle::cycle(n)).width() == 2);
    CHECK(heuristic_td(oracle::complete(4)).width() == 3);
  }

  TEST_CASE("heuristic decompositions are valid and convert to nice form") {
    std::mt19937_64 rng(4);
    for (int it = 0; it < 150; ++it) {
      const int n = 1 + static_cast<int>(rng() % 50);
      const double p = n > 25 ? 0.08 : 0.25;
      const Graph g = oracle::random_graph(rng, n, p);
      auto td = heuristic_td(g);
      CHECK_FALSE(validate_td(g, td).has_value());
      if (n <= 25) check_nice(g, td);
    }
  }

  TEST_CASE("td files") {
    auto td = parse_td("s td 2 2 4\nb 1 1 2\nb 2 2 3\n1 2\n");
    CHECK(td.bags.size() == 2);
    CHECK(td.width() == 1);
    CHECK(td.n == 4);
    CHECK(td.bags[1] == std::vector<Node>{1, 2});
    const std::string text = "c comment\ns td 3 2 4\nb 2 2 3\nb 1 1 2\nb 3 3 4\n3 2\n1 2\n";
    CHECK(emit_td(parse_td(text)) == emit_td(canonical(parse_td(text))));
    CHECK(parse_td(emit_td(parse_td(text))).bags == canonical(parse_td(text)).bags);
    CHECK_THROWS_AS(parse_td("s td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n3 1\n"), ParseError);
    CHECK_THROWS_AS(parse_td("s td 2 2 4\nb 3 1 2\nb 2 2 3\n1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_td("s tw 2 2 4\n"), ParseError);
    CHECK_THROWS_AS(parse_td("s td 2 2 4\nb 1 1 2\nb 2 2 3\n"), ParseError);
  }
}
