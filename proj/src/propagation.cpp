#include "lpds/propagation.hpp"

#include <algorithm>

namespace lpds {

NodeSet PropagationTrace::reached_by(int r) const {
  NodeSet out(times.size());
  for (std::size_t v = 0; v < times.size(); ++v)
    if (times[v] <= r) out.insert(static_cast<Node>(v));
  return out;
}

PropagationTrace propagate(const Graph& g, const NodeSet& s, int k) {
  if (k < 1) throw std::invalid_argument("round count must be at least 1");
  const int n = g.num_nodes();
  if (s.universe() != static_cast<std::size_t>(n))
    throw std::invalid_argument("source set universe does not match graph");

  PropagationTrace tr;
  tr.rounds_run = k;
  tr.source_set = s;
  tr.times.assign(static_cast<std::size_t>(n), kInf);
  for (Node v : s.members()) tr.times[static_cast<std::size_t>(v)] = 0;

  // round 1: closed neighborhoods of the sources
  for (Node v : s.members())
    for (Node u : g.neighbors(v))
      if (tr.times[static_cast<std::size_t>(u)] == kInf) tr.times[static_cast<std::size_t>(u)] = 1;

  // undominated-neighbor counts against the previous round's set
  std::vector<int> missing(static_cast<std::size_t>(n), 0);
  for (Node u = 0; u < n; ++u)
    for (Node w : g.neighbors(u))
      if (tr.times[static_cast<std::size_t>(w)] == kInf) ++missing[static_cast<std::size_t>(u)];

  std::vector<Node> fresh;
  for (int r = 2; r <= k; ++r) {
    fresh.clear();
    for (Node u = 0; u < n; ++u) {
      // N[u]\{v} dominated means u itself dominated and v its only missing neighbor
      if (tr.times[static_cast<std::size_t>(u)] == kInf || missing[static_cast<std::size_t>(u)] != 1)
        continue;
      for (Node v : g.neighbors(u))
        if (tr.times[static_cast<std::size_t>(v)] == kInf) {
          fresh.push_back(v);
          break;
        }
    }
    if (fresh.empty()) break;
    for (Node v : fresh) {
      auto& t = tr.times[static_cast<std::size_t>(v)];
      if (t != kInf) continue;
      t = r;
      for (Node w : g.neighbors(v)) --missing[static_cast<std::size_t>(w)];
    }
  }
  return tr;
}

bool is_feasible(const Graph& g, const NodeSet& s, const NodeSet& targets, int ell) {
  auto tr = propagate(g, s, ell);
  for (Node v : targets.members())
    if (tr.times[static_cast<std::size_t>(v)] > ell) return false;
  return true;
}

int full_rounds(const Graph& g) { return std::max(1, g.num_nodes() - 1); }

std::string format_time(int t) { return t == kInf ? "inf" : std::to_string(t); }

}  // namespace lpds
