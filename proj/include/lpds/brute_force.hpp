#pragma once

#include <optional>

#include "lpds/graph.hpp"

namespace lpds {

struct BfOptions {
  std::optional<int> size_cap;  // give up after this cardinality
  bool allow_large = false;     // lift the n <= 24 guard
};

struct BfResult {
  bool exceeded = false;  // size_cap reached without a feasible set
  int opt = 0;
  NodeSet witness;
};

inline constexpr int kBfGuard = 24;

/// Smallest feasible set, first in (cardinality, lexicographic) order.
BfResult solve_bf(const Graph& g, const NodeSet& targets, int ell, const BfOptions& opt = {});

/// Same result as solve_bf; each cardinality is split into rank chunks checked by OpenMP threads.
BfResult solve_bf_parallel(const Graph& g, const NodeSet& targets, int ell, const BfOptions& opt = {});

/// Minimum dominating set by direct closed-neighborhood covering.
BfResult solve_domset_bf(const Graph& g, const BfOptions& opt = {});

}  // namespace lpds
