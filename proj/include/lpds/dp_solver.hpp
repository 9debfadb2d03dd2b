#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpds/graph.hpp"
#include "lpds/propagation.hpp"
#include "lpds/tree_decomposition.hpp"

namespace lpds {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Node labels: 0 origin, a > 0 plain (justified), -a hatted (justification pending), kInf.
inline bool is_hat(int label) { return label < 0; }
inline int unhat(int label) { return label < 0 ? -label : label; }

/// Orientation of a bag edge (a, b) with a < b in bag order.
enum class EdgeDir : std::uint8_t { None = 0, Forward = 1, Backward = 2 };

inline constexpr int kNoOut = -1;

struct BagState {
  std::vector<int> label;        // per bag node
  std::vector<int> in_below;     // s_-: in-edges from forgotten nodes, 0..1
  std::vector<int> out_below;    // s_+: out-edges to forgotten nodes, saturates at 2
  std::vector<int> below_max;    // s_y: max label over forgotten neighbors other than the out-target
  std::vector<int> out_time;     // label of the forgotten out-target of a non-origin node, or kNoOut
  std::vector<EdgeDir> edges;    // per bag edge, in BagContext::edges order
};

struct BagContext {
  std::vector<Node> bag;                    // sorted graph ids
  std::vector<std::pair<int, int>> edges;   // local index pairs (a < b), sorted
  std::vector<bool> is_target;              // per bag node
  int ell = 1;

  static BagContext make(const Graph& g, const std::vector<Node>& bag, const NodeSet& targets, int ell);
};

bool is_invalid_state(const BagContext& ctx, const BagState& s);

struct DpOptions {
  std::size_t max_states = 0;  // per table; 0 means unlimited
};

struct DpStats {
  std::size_t nice_nodes = 0;
  std::size_t max_table = 0;
  std::size_t total_states = 0;
  int width = -1;
};

struct DpResult {
  int opt = 0;
  NodeSet witness;
  DpStats stats;
};

/// ell is clamped to full_rounds(g).  Throws std::invalid_argument for a decomposition that
/// does not fit g, BudgetExceeded when a table outgrows options.max_states.
DpResult solve_dp(const Graph& g, const NodeSet& targets, int ell, const NiceTreeDecomposition& ntd,
                  const DpOptions& options = {});
DpResult solve_dp(const Graph& g, const NodeSet& targets, int ell, const DpOptions& options = {});

/// Saturating count of the nominal state space of one bag.
std::uint64_t state_space_size(std::uint64_t n_i, std::uint64_t m_i, std::uint64_t ell);

/// Replays every stored state's partial solution and checks the subtree invariant
/// (forgotten targets and plain-labelled bag nodes are dominated on time when unseen
/// nodes are taken as sources).  Returns a description of the first failure.
std::optional<std::string> audit_dp_invariant(const Graph& g, const NodeSet& targets, int ell,
                                              const NiceTreeDecomposition& ntd);

}  // namespace lpds
