#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace lpds {

using Node = int;
using Edge = std::pair<Node, Node>;

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Membership set over the node ids 0..n-1 of one graph.
class NodeSet {
 public:
  NodeSet() = default;
  explicit NodeSet(std::size_t universe) : bits_(universe) {}
  NodeSet(std::size_t universe, std::span<const Node> members);

  static NodeSet all(std::size_t universe);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  bool contains(Node v) const { return bits_.test(static_cast<std::size_t>(v)); }
  void insert(Node v) { bits_.set(static_cast<std::size_t>(v)); }
  void erase(Node v) { bits_.reset(static_cast<std::size_t>(v)); }

  bool is_subset_of(const NodeSet& other) const { return bits_.is_subset_of(other.bits_); }
  std::vector<Node> members() const;

  NodeSet& operator|=(const NodeSet& o) {
    bits_ |= o.bits_;
    return *this;
  }
  NodeSet& operator&=(const NodeSet& o) {
    bits_ &= o.bits_;
    return *this;
  }
  friend bool operator==(const NodeSet& a, const NodeSet& b) { return a.bits_ == b.bits_; }
  friend bool operator<(const NodeSet& a, const NodeSet& b) { return a.bits_ < b.bits_; }

  const boost::dynamic_bitset<>& bits() const { return bits_; }

 private:
  boost::dynamic_bitset<> bits_;
};

/// Simple undirected graph over dense ids 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  /// Throws std::invalid_argument on self-loops, duplicates or out-of-range ids.
  Graph(int n, std::span<const Edge> edges);

  int num_nodes() const { return static_cast<int>(adj_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  /// Edges as (u, v) with u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Node> neighbors(Node v) const { return adj_.at(static_cast<std::size_t>(v)); }
  int degree(Node v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(Node u, Node v) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<std::vector<Node>> adj_;
  std::vector<Edge> edges_;
};

/// Extension lines (`l <v> <level>`) that may follow the edge list.
struct GraphFile {
  Graph graph;
  std::vector<int> levels;  // empty unless the file carried level lines
};

GraphFile parse_graph_file(std::istream& in);
GraphFile parse_graph_file(const std::string& text);
Graph parse_graph(const std::string& text);
void emit_graph(std::ostream& out, const Graph& g, std::span<const std::string> comments = {});
std::string emit_graph(const Graph& g);
void emit_levels(std::ostream& out, std::span<const int> levels);

NodeSet closed_neighborhood(const Graph& g, Node v);

struct InducedSubgraph {
  Graph graph;
  std::vector<Node> to_original;  // new id -> old id
  std::vector<Node> to_local;     // old id -> new id, -1 when dropped
};

InducedSubgraph induced_subgraph(const Graph& g, const NodeSet& keep);

int min_degree(const Graph& g);

/// Parses whitespace separated 1-based node ids (with `c` comment lines) into a set.
NodeSet parse_node_list(const std::string& text, int n);

}  // namespace lpds
