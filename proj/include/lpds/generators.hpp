#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "lpds/graph.hpp"

namespace lpds {

/// m paths of k nodes hanging off center 0; path p, position j (1..k) is 1 + p*k + (j-1).
Graph spider(int m, int k);

/// Cycle 0..m-1 with pendant m+i attached to i.
Graph pendant_cycle(int m);

/// Every node v gains a tail of ell-1 fresh nodes (n + v*(ell-1) onward, nearest first).
Graph attach_paths(const Graph& g, int ell);

/// Erdos-Renyi G(n, p) from a fixed seed.
Graph random_graph(int n, double p, std::uint64_t seed);

/// r x c grid, node y*c + x; positions are (x, y).
Graph grid_graph(int rows, int cols);

/// Bipartite MinRep instance. A has q_a groups of m_a nodes, group i = [i*m_a, (i+1)*m_a);
/// B likewise. Edges are (a, b) with a in 0..|A|-1 and b in 0..|B|-1.
struct MinRepInstance {
  int q_a = 0, m_a = 0, q_b = 0, m_b = 0;
  std::vector<std::pair<int, int>> edges;

  int num_a() const { return q_a * m_a; }
  int num_b() const { return q_b * m_b; }
  int group_a(int a) const { return a / m_a; }
  int group_b(int b) const { return b / m_b; }
  /// Super-edges (i, j), sorted.
  std::vector<std::pair<int, int>> super_edges() const;
  /// Throws std::invalid_argument on bad sizes, out-of-range or repeated edges.
  void validate() const;
};

/// Format: `p minrep <q_A> <m_A> <q_B> <m_B> <edges>`, then `e <a> <b>` lines, 1-based within each side.
MinRepInstance parse_minrep(std::istream& in);
void emit_minrep(std::ostream& out, const MinRepInstance& inst);

/// pick is over A then B (universe |A| + |B|).
bool minrep_cover_check(const MinRepInstance& inst, const NodeSet& pick);
/// Smallest cover by exhaustive search, first in (size, lexicographic) order.
std::pair<int, NodeSet> minrep_optimum(const MinRepInstance& inst);

/// One-way arm between a copy's center and one of its u/v nodes.
struct GadgetArm {
  Node alpha = -1, beta = -1, gamma = -1, target = -1;
};

struct GadgetCopy {
  int i = 0, j = 0, copy = 0;  // super-edge (A_i, B_j), copy 0..lambda-1
  Node center = -1;
  std::vector<Node> u, v, d;   // per edge of E_ij
  std::vector<Node> a, b;      // shared endpoints of those edges
  std::vector<GadgetArm> arms; // u-arm then v-arm per edge
  std::vector<Node> nodes() const;  // every node owned by this copy
};

struct MinRepReduction {
  Graph graph;
  int lambda = 4;
  Node master = -1;
  std::array<Node, 3> leaves{};
  std::vector<std::string> roles;  // per node
  std::vector<GadgetCopy> copies;
};

/// A occupies 0..|A|-1 and B follows; then w*, w*_1..3, then the gadget copies.
MinRepReduction minrep_to_pds(const MinRepInstance& inst);

}  // namespace lpds
