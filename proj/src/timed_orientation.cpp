#include "lpds/timed_orientation.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace lpds {

std::vector<int> TimedOrientation::in_degree(int n) const {
  std::vector<int> d(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : directed) ++d.at(static_cast<std::size_t>(v));
  return d;
}

std::vector<int> TimedOrientation::out_degree(int n) const {
  std::vector<int> d(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : directed) ++d.at(static_cast<std::size_t>(u));
  return d;
}

namespace {

// max of t_w over N[u]\{v}; kInf absorbs
int neighborhood_max(const Graph& g, const std::vector<int>& t, Node u, Node v) {
  int m = t[static_cast<std::size_t>(u)];
  for (Node w : g.neighbors(u))
    if (w != v) m = std::max(m, t[static_cast<std::size_t>(w)]);
  return m;
}

}  // namespace

TimedOrientation orientation_from_trace(const Graph& g, const PropagationTrace& trace) {
  const int n = g.num_nodes();
  if (trace.times.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("trace size does not match graph");
  const auto& t = trace.times;
  TimedOrientation to;
  to.ell = trace.rounds_run;
  to.times = t;

  std::set<Edge> used;
  for (Node v = 0; v < n; ++v) {
    const int tv = t[static_cast<std::size_t>(v)];
    if (tv == 0 || tv == kInf) continue;
    Node witness = -1;
    for (Node u : g.neighbors(v)) {
      const int tu = t[static_cast<std::size_t>(u)];
      if (tv == 1 ? tu == 0 : (tu >= 1 && tu != kInf && neighborhood_max(g, t, u, v) + 1 == tv)) {
        witness = u;
        break;
      }
    }
    if (witness < 0)
      throw std::invalid_argument("trace inconsistent with graph at node " + std::to_string(v));
    to.directed.emplace_back(witness, v);
    used.insert(std::minmax(witness, v));
  }
  for (const auto& e : g.edges())
    if (!used.count(e)) to.undirected.push_back(e);
  std::sort(to.directed.begin(), to.directed.end());
  return to;
}

std::optional<OrientationViolation> validate(const Graph& g, const TimedOrientation& to,
                                             const NodeSet& targets) {
  const int n = g.num_nodes();
  if (to.times.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("time vector size does not match graph");
  std::set<Edge> seen;
  auto claim = [&](Node a, Node b) {
    if (a < 0 || b < 0 || a >= n || b >= n || !g.has_edge(a, b))
      throw std::invalid_argument("pair {" + std::to_string(a) + "," + std::to_string(b) +
                                  "} is not a graph edge");
    if (!seen.insert(std::minmax(a, b)).second)
      throw std::invalid_argument("edge {" + std::to_string(a) + "," + std::to_string(b) +
                                  "} listed twice");
  };
  for (auto [a, b] : to.directed) claim(a, b);
  for (auto [a, b] : to.undirected) claim(a, b);
  if (seen.size() != g.edges().size())
    throw std::invalid_argument("orientation does not cover every graph edge");

  const auto& t = to.times;
  const int ell = to.ell;
  auto label_ok = [&](int x) { return x == kInf || (x >= 0 && x <= ell); };
  for (Node v = 0; v < n; ++v)
    if (!label_ok(t[static_cast<std::size_t>(v)]))
      return OrientationViolation{1, v, {-1, -1}, "time label out of range at node " + std::to_string(v)};

  for (Node v : targets.members()) {
    const int tv = t[static_cast<std::size_t>(v)];
    if (tv == kInf) return OrientationViolation{1, v, {-1, -1}, "target not dominated"};
  }
  auto din = to.in_degree(n);
  auto dout = to.out_degree(n);
  for (Node v = 0; v < n; ++v) {
    const int tv = t[static_cast<std::size_t>(v)];
    const int i = din[static_cast<std::size_t>(v)];
    const int o = dout[static_cast<std::size_t>(v)];
    if (tv >= 1 && tv <= ell && i != 1)
      return OrientationViolation{2, v, {-1, -1}, "in-degree " + std::to_string(i) + " != 1"};
    if (tv == kInf && (i != 0 || o != 0))
      return OrientationViolation{3, v, {-1, -1}, "undominated node has directed edges"};
    if (tv == 0 && i != 0)
      return OrientationViolation{4, v, {-1, -1}, "origin has incoming edge"};
  }
  for (auto [u, v] : to.directed) {
    const int tu = t[static_cast<std::size_t>(u)];
    const int tv = t[static_cast<std::size_t>(v)];
    bool ok;
    if (tu == 0) {
      ok = tv == 1;
    } else {
      const int m = neighborhood_max(g, t, u, v);
      ok = m != kInf && tv == m + 1;
    }
    if (!ok) return OrientationViolation{5, -1, {u, v}, "timing equation fails"};
  }
  return std::nullopt;
}

NodeSet origin(const TimedOrientation& to) {
  NodeSet s(to.times.size());
  for (std::size_t v = 0; v < to.times.size(); ++v)
    if (to.times[v] == 0) s.insert(static_cast<Node>(v));
  return s;
}

TimedOrientation parse_orientation(std::istream& in, int n, int ell) {
  TimedOrientation to;
  to.ell = ell;
  to.times.assign(static_cast<std::size_t>(n), kInf);
  std::vector<bool> has_time(static_cast<std::size_t>(n), false);
  std::string line;
  int lineno = 0;
  auto node = [&](long x) {
    if (x < 1 || x > n) throw ParseError(lineno, "node id out of range 1.." + std::to_string(n));
    return static_cast<Node>(x - 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "d" || tag == "u") {
      long a = 0, b = 0;
      if (!(ls >> a >> b)) throw ParseError(lineno, "malformed edge line");
      Node x = node(a), y = node(b);
      if (tag == "d")
        to.directed.emplace_back(x, y);
      else
        to.undirected.push_back(std::minmax(x, y));
    } else if (tag == "t") {
      long a = 0;
      std::string lab;
      if (!(ls >> a >> lab)) throw ParseError(lineno, "malformed time line");
      Node v = node(a);
      if (lab == "inf") {
        to.times[static_cast<std::size_t>(v)] = kInf;
      } else {
        std::size_t used = 0;
        int x = -1;
        try {
          x = std::stoi(lab, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != lab.size() || x < 0) throw ParseError(lineno, "bad time label '" + lab + "'");
        to.times[static_cast<std::size_t>(v)] = x;
      }
      has_time[static_cast<std::size_t>(v)] = true;
    } else {
      throw ParseError(lineno, "unknown line type '" + tag + "'");
    }
  }
  for (int v = 0; v < n; ++v)
    if (!has_time[static_cast<std::size_t>(v)])
      throw ParseError(lineno, "no time label for node " + std::to_string(v + 1));
  return to;
}

void emit_orientation(std::ostream& out, const TimedOrientation& to) {
  for (auto [u, v] : to.directed) out << "d " << u + 1 << ' ' << v + 1 << '\n';
  for (auto [u, v] : to.undirected) out << "u " << u + 1 << ' ' << v + 1 << '\n';
  for (std::size_t v = 0; v < to.times.size(); ++v)
    out << "t " << v + 1 << ' ' << format_time(to.times[v]) << '\n';
}

}  // namespace lpds
