#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpds/graph.hpp"

namespace lpds {

struct TreeDecomposition {
  int n = 0;                             // nodes of the decomposed graph
  std::vector<std::vector<Node>> bags;   // each sorted
  std::vector<Edge> tree;                // bag index pairs (i < j)

  int width() const;
  int max_bag_edges(const Graph& g) const;
};

struct TdViolation {
  int property = 0;  // 0 = malformed tree or bag, 1..3 = decomposition property
  Node node = -1;
  Edge edge{-1, -1};
  std::string message;
};

std::optional<TdViolation> validate_td(const Graph& g, const TreeDecomposition& td);

/// Min-fill elimination (ties to the smallest id), forests chained, subset bags contracted.
TreeDecomposition heuristic_td(const Graph& g);

enum class NiceKind { Leaf, Insert, Forget, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  std::vector<Node> bag;  // sorted
  Node vertex = -1;       // inserted or forgotten node
  std::vector<int> children;
};

/// Nodes are stored in post-order: every child index is smaller than its parent's.
struct NiceTreeDecomposition {
  int n = 0;
  std::vector<NiceNode> nodes;
  int root = -1;

  int width() const;
  TreeDecomposition as_td() const;
};

/// Throws std::invalid_argument if td is not a valid decomposition of g.
NiceTreeDecomposition to_nice(const Graph& g, const TreeDecomposition& td);

/// Structural check of the Leaf/Insert/Forget/Join rules plus the decomposition properties.
std::optional<std::string> validate_nice(const Graph& g, const NiceTreeDecomposition& ntd);

TreeDecomposition parse_td(std::istream& in);
TreeDecomposition parse_td(const std::string& text);
void emit_td(std::ostream& out, const TreeDecomposition& td);
std::string emit_td(const TreeDecomposition& td);

/// Sorted bags and sorted tree edges.
TreeDecomposition canonical(TreeDecomposition td);

}  // namespace lpds
