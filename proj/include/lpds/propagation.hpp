#pragma once

#include <climits>
#include <vector>

#include "lpds/graph.hpp"

namespace lpds {

/// Sentinel time for nodes that are never dominated; compares above every round.
inline constexpr int kInf = INT_MAX;

struct PropagationTrace {
  std::vector<int> times;  // 0 for sources, r for round r, kInf if unreached
  int rounds_run = 0;      // requested round count
  NodeSet source_set;

  /// Nodes with time <= r.
  NodeSet reached_by(int r) const;
};

/// Parallel-round closure of `s` for k rounds.  Throws std::invalid_argument if k < 1.
PropagationTrace propagate(const Graph& g, const NodeSet& s, int k);

bool is_feasible(const Graph& g, const NodeSet& s, const NodeSet& targets, int ell);

/// n-1 for n >= 2, 1 otherwise; the round count beyond which nothing changes.
int full_rounds(const Graph& g);

std::string format_time(int t);

}  // namespace lpds
