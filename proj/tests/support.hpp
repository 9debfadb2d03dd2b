#pragma once

// Independent reference code used as oracles by the unit and acceptance suites.

#include <algorithm>
#include <climits>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpds/graph.hpp"

namespace oracle {

using lpds::Edge;
using lpds::Graph;
using lpds::Node;
using lpds::NodeSet;

inline constexpr int kUnreached = INT_MAX;

// Round times straight from the set recursion, using std::set and no incremental bookkeeping.
inline std::vector<int> naive_times(const Graph& g, const std::set<Node>& s, int k) {
  const int n = g.num_nodes();
  std::vector<int> t(static_cast<std::size_t>(n), kUnreached);
  for (Node v : s) t[static_cast<std::size_t>(v)] = 0;
  std::set<Node> cur;
  for (Node v : s) {
    cur.insert(v);
    for (Node u : g.neighbors(v)) cur.insert(u);
  }
  for (Node v : cur)
    if (t[static_cast<std::size_t>(v)] == kUnreached) t[static_cast<std::size_t>(v)] = 1;
  for (int r = 2; r <= k; ++r) {
    std::set<Node> next = cur;
    for (Node v = 0; v < n; ++v) {
      if (cur.count(v)) continue;
      for (Node u : g.neighbors(v)) {
        bool all = cur.count(u) > 0;
        for (Node w : g.neighbors(u))
          if (w != v && !cur.count(w)) all = false;
        if (all) next.insert(v);
      }
    }
    for (Node v : next)
      if (!cur.count(v)) t[static_cast<std::size_t>(v)] = r;
    cur = std::move(next);
  }
  return t;
}

inline bool naive_feasible(const Graph& g, const std::set<Node>& s, const std::vector<Node>& targets, int k) {
  auto t = naive_times(g, s, k);
  return std::all_of(targets.begin(), targets.end(), [&](Node v) { return t[static_cast<std::size_t>(v)] <= k; });
}

// Minimum over all 2^n subsets (n <= 16) with the naive propagation.
inline int naive_optimum(const Graph& g, const std::vector<Node>& targets, int k) {
  const int n = g.num_nodes();
  if (n > 16) throw std::invalid_argument("naive optimum limited to 16 nodes");
  int best = n + 1;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const int size = __builtin_popcount(mask);
    if (size >= best) continue;
    std::set<Node> s;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1u) s.insert(v);
    if (naive_feasible(g, s, targets, k)) best = size;
  }
  return best;
}

inline std::vector<Node> all_nodes(int n) {
  std::vector<Node> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  return v;
}

inline Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph(n, e);
}

inline bool connected(const Graph& g) {
  const int n = g.num_nodes();
  if (n == 0) return true;
  std::vector<bool> seen(static_cast<std::size_t>(n));
  std::vector<Node> st{0};
  seen[0] = true;
  int c = 1;
  while (!st.empty()) {
    Node v = st.back();
    st.pop_back();
    for (Node u : g.neighbors(v))
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        ++c;
        st.push_back(u);
      }
  }
  return c == n;
}

inline Graph random_connected(std::mt19937_64& rng, int n, double p) {
  for (;;) {
    Graph g = random_graph(rng, n, p);
    if (connected(g)) return g;
  }
}

inline Graph random_tree(std::mt19937_64& rng, int n) {
  std::vector<Edge> e;
  for (Node v = 1; v < n; ++v) e.emplace_back(std::uniform_int_distribution<Node>(0, v - 1)(rng), v);
  return Graph(n, e);
}

inline NodeSet random_subset(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  NodeSet s(static_cast<std::size_t>(n));
  for (Node v = 0; v < n; ++v)
    if (coin(rng)) s.insert(v);
  return s;
}

inline std::set<Node> as_set(const NodeSet& s) {
  auto m = s.members();
  return {m.begin(), m.end()};
}

inline Graph cycle(int n) {
  std::vector<Edge> e;
  for (Node v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
  return Graph(n, e);
}

inline Graph path(int n) {
  std::vector<Edge> e;
  for (Node v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph(n, e);
}

inline Graph complete(int n) {
  std::vector<Edge> e;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph(n, e);
}

inline Graph star(int leaves) {
  std::vector<Edge> e;
  for (Node v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph(leaves + 1, e);
}

// Concatenated graph files, one per `p` header.
inline std::vector<Graph> load_corpus(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::vector<Graph> out;
  std::string line, block;
  auto flush = [&]() {
    if (!block.empty()) out.push_back(lpds::parse_graph(block));
    block.clear();
  };
  while (std::getline(f, line)) {
    if (line.rfind("p ", 0) == 0) flush();
    if (line.rfind("c", 0) == 0) continue;
    block += line + "\n";
  }
  flush();
  return out;
}

}  // namespace oracle
