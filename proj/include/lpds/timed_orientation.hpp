#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpds/graph.hpp"
#include "lpds/propagation.hpp"

namespace lpds {

struct TimedOrientation {
  std::vector<Edge> directed;    // ordered (tail, head)
  std::vector<Edge> undirected;  // (u, v) with u < v
  std::vector<int> times;        // 0..ell or kInf
  int ell = 1;

  std::vector<int> in_degree(int n) const;
  std::vector<int> out_degree(int n) const;
};

struct OrientationViolation {
  int property = 0;  // 1..5
  Node node = -1;    // offending node for P1-P4
  Edge edge{-1, -1}; // offending directed edge for P5
  std::string message;
};

/// Builds the orientation of the equivalence construction; ell = trace.rounds_run.
TimedOrientation orientation_from_trace(const Graph& g, const PropagationTrace& trace);

/// First violated property, or nullopt.  Throws std::invalid_argument on an edge set mismatch.
std::optional<OrientationViolation> validate(const Graph& g, const TimedOrientation& to,
                                             const NodeSet& targets);

NodeSet origin(const TimedOrientation& to);

/// Lines `d u v`, `u u v`, `t v <label|inf>` with 1-based ids; `c` comments.
TimedOrientation parse_orientation(std::istream& in, int n, int ell);
void emit_orientation(std::ostream& out, const TimedOrientation& to);

}  // namespace lpds
