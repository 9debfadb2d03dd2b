#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lpds/dp_solver.hpp"
#include "lpds/graph.hpp"
#include "lpds/tree_decomposition.hpp"

namespace lpds {

struct LevelAssignment {
  std::vector<int> level;  // per node, 1-based
  int max_level() const;
  /// Nodes whose level lies in [lo, hi] (clamping is implicit).
  NodeSet range(int lo, int hi) const;
};

/// min level 1 and adjacent nodes at most one level apart.
std::optional<std::string> validate_levels(const Graph& g, const LevelAssignment& levels);

/// Cyclic neighbor order per node plus one dart (u, v) on the exterior face.  Faces are
/// traced by (u, v) -> (v, w) where w follows u in v's order.
struct RotationSystem {
  std::vector<std::vector<Node>> order;
  Edge outer{-1, -1};
};

/// Lines `r <v> <u1> <u2> ...` and `o <u> <v>`, 1-based; `c` comments.
RotationSystem parse_rotation(std::istream& in, int n);
void emit_rotation(std::ostream& out, const RotationSystem& rs);

/// Straight-line drawing to rotation system: neighbors counter-clockwise, outer dart on
/// the face of largest signed area (inner faces trace clockwise).
RotationSystem rotation_from_positions(const Graph& g, const std::vector<std::pair<double, double>>& pos);

/// Number of faces; throws std::invalid_argument if `rs` is not a rotation system of g.
int count_faces(const Graph& g, const RotationSystem& rs);

/// Peeling levels.  Requires a connected graph whose rotation system passes the Euler check.
LevelAssignment compute_levels(const Graph& g, const RotationSystem& rs);

/// Approximation parameter as an exact fraction in (0, 1].
struct Ratio {
  long long num = 1, den = 1;
};
Ratio parse_ratio(const std::string& text);
int ptas_k(int ell, Ratio eps);

struct Block {
  int i = 0, j = 0;
  int b_lo = 0, b_hi = 0;  // clamped level range of B
  int c_lo = 0, c_hi = 0;  // clamped level range of C
  NodeSet B, C;
};

/// Every j (possibly negative) whose clamped C-range is non-empty, in increasing j.
std::vector<Block> build_blocks(const LevelAssignment& levels, int i, int k, int ell);

struct BlockReport {
  int i = 0, j = 0;
  int b_size = 0, c_size = 0;
  int solution = 0;
  int width = -1;
};

struct PtasResult {
  NodeSet solution;
  int shift = 0;  // chosen i
  int k = 0;
  std::vector<int> shift_sizes;      // |Pi_i| for i = 1..k
  std::vector<BlockReport> blocks;   // blocks of the chosen shift
  std::vector<std::string> warnings;
};

struct PtasOptions {
  bool parallel = true;
  DpOptions dp;
  /// Optional decomposition for a block graph (local ids); heuristic_td when empty.
  std::function<std::optional<TreeDecomposition>(int i, int j, const Graph& block)> block_td;
};

/// Throws std::invalid_argument on bad levels or eps, BudgetExceeded from the block DP,
/// std::logic_error if the union fails the feasibility check.
PtasResult ptas(const Graph& g, const LevelAssignment& levels, int ell, Ratio eps, const PtasOptions& opt = {});

}  // namespace lpds
