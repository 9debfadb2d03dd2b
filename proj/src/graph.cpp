#include "lpds/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace lpds {

NodeSet::NodeSet(std::size_t universe, std::span<const Node> members) : bits_(universe) {
  for (Node v : members) {
    if (v < 0 || static_cast<std::size_t>(v) >= universe)
      throw std::out_of_range("node " + std::to_string(v) + " outside universe");
    bits_.set(static_cast<std::size_t>(v));
  }
}

NodeSet NodeSet::all(std::size_t universe) {
  NodeSet s(universe);
  s.bits_.set();
  return s;
}

std::vector<Node> NodeSet::members() const {
  std::vector<Node> out;
  out.reserve(bits_.count());
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i))
    out.push_back(static_cast<Node>(i));
  return out;
}

Graph::Graph(int n) : adj_(static_cast<std::size_t>(std::max(n, 0))) {
  if (n < 0) throw std::invalid_argument("negative node count");
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n) {
  std::set<Edge> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("edge {" + std::to_string(a) + "," + std::to_string(b) +
                                  "} out of range");
    if (a == b) throw std::invalid_argument("self-loop at node " + std::to_string(a));
    Edge e = std::minmax(a, b);
    if (!seen.insert(e).second)
      throw std::invalid_argument("duplicate edge {" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + "}");
  }
  edges_.assign(seen.begin(), seen.end());
  for (auto [a, b] : edges_) {
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(Node u, Node v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

GraphFile parse_graph_file(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  long declared_m = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  std::vector<std::pair<int, int>> level_lines;
  int last_line = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    last_line = lineno;
    if (tag == "p") {
      std::string kind;
      long nn = -1;
      if (n >= 0) throw ParseError(lineno, "second header line");
      if (!(ls >> kind >> nn >> declared_m) || kind != "edge" || nn < 0 || declared_m < 0)
        throw ParseError(lineno, "malformed header, expected 'p edge <n> <m>'");
      n = static_cast<int>(nn);
    } else if (tag == "e") {
      if (n < 0) throw ParseError(lineno, "edge before header");
      long a = 0, b = 0;
      if (!(ls >> a >> b)) throw ParseError(lineno, "malformed edge line");
      if (a < 1 || b < 1 || a > n || b > n)
        throw ParseError(lineno, "node id out of range 1.." + std::to_string(n));
      if (a == b) throw ParseError(lineno, "self-loop at node " + std::to_string(a));
      Edge e = std::minmax(static_cast<Node>(a - 1), static_cast<Node>(b - 1));
      if (!seen.insert(e).second)
        throw ParseError(lineno, "duplicate edge {" + std::to_string(a) + "," +
                                     std::to_string(b) + "}");
      edges.push_back(e);
    } else if (tag == "l") {
      if (n < 0) throw ParseError(lineno, "level before header");
      long v = 0, lvl = 0;
      if (!(ls >> v >> lvl)) throw ParseError(lineno, "malformed level line");
      if (v < 1 || v > n) throw ParseError(lineno, "node id out of range 1.." + std::to_string(n));
      if (lvl < 1) throw ParseError(lineno, "level must be positive");
      level_lines.emplace_back(static_cast<int>(v - 1), static_cast<int>(lvl));
    } else {
      throw ParseError(lineno, "unknown line type '" + tag + "'");
    }
  }
  if (n < 0) throw ParseError(lineno, "missing header");
  if (static_cast<long>(edges.size()) != declared_m)
    throw ParseError(last_line, "header declares " + std::to_string(declared_m) + " edges, found " +
                                    std::to_string(edges.size()));

  GraphFile out{Graph(n, edges), {}};
  if (!level_lines.empty()) {
    out.levels.assign(static_cast<std::size_t>(n), 0);
    for (auto [v, lvl] : level_lines) out.levels[static_cast<std::size_t>(v)] = lvl;
    for (int v = 0; v < n; ++v)
      if (out.levels[static_cast<std::size_t>(v)] == 0)
        throw ParseError(last_line, "node " + std::to_string(v + 1) + " has no level");
  }
  return out;
}

GraphFile parse_graph_file(const std::string& text) {
  std::istringstream in(text);
  return parse_graph_file(in);
}

Graph parse_graph(const std::string& text) { return parse_graph_file(text).graph; }

void emit_graph(std::ostream& out, const Graph& g, std::span<const std::string> comments) {
  for (const auto& c : comments) out << "c " << c << '\n';
  out << "p edge " << g.num_nodes() << ' ' << g.num_edges() << '\n';
  for (auto [a, b] : g.edges()) out << "e " << a + 1 << ' ' << b + 1 << '\n';
}

std::string emit_graph(const Graph& g) {
  std::ostringstream out;
  emit_graph(out, g);
  return out.str();
}

void emit_levels(std::ostream& out, std::span<const int> levels) {
  for (std::size_t v = 0; v < levels.size(); ++v) out << "l " << v + 1 << ' ' << levels[v] << '\n';
}

NodeSet closed_neighborhood(const Graph& g, Node v) {
  if (v < 0 || v >= g.num_nodes()) throw std::out_of_range("node " + std::to_string(v));
  NodeSet s(static_cast<std::size_t>(g.num_nodes()));
  s.insert(v);
  for (Node u : g.neighbors(v)) s.insert(u);
  return s;
}

InducedSubgraph induced_subgraph(const Graph& g, const NodeSet& keep) {
  if (keep.universe() != static_cast<std::size_t>(g.num_nodes()))
    throw std::invalid_argument("node set universe does not match graph");
  InducedSubgraph sub;
  sub.to_local.assign(static_cast<std::size_t>(g.num_nodes()), -1);
  sub.to_original = keep.members();
  for (std::size_t i = 0; i < sub.to_original.size(); ++i)
    sub.to_local[static_cast<std::size_t>(sub.to_original[i])] = static_cast<Node>(i);
  std::vector<Edge> edges;
  for (auto [a, b] : g.edges())
    if (keep.contains(a) && keep.contains(b))
      edges.emplace_back(sub.to_local[static_cast<std::size_t>(a)],
                         sub.to_local[static_cast<std::size_t>(b)]);
  sub.graph = Graph(static_cast<int>(sub.to_original.size()), edges);
  return sub;
}

int min_degree(const Graph& g) {
  if (g.num_nodes() == 0) throw std::invalid_argument("min_degree of empty graph");
  int best = g.degree(0);
  for (Node v = 1; v < g.num_nodes(); ++v) best = std::min(best, g.degree(v));
  return best;
}

NodeSet parse_node_list(const std::string& text, int n) {
  NodeSet s(static_cast<std::size_t>(n));
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    do {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(lineno, "not a node id: '" + tok + "'");
      if (v < 1 || v > n) throw ParseError(lineno, "node id out of range 1.." + std::to_string(n));
      s.insert(static_cast<Node>(v - 1));
    } while (ls >> tok);
  }
  return s;
}

}  // namespace lpds
