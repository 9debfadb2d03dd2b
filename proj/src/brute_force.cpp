#include "lpds/brute_force.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

#include "lpds/propagation.hpp"

namespace lpds {

namespace {

using Mask = std::uint64_t;

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

// k-subset of {0..n-1} with lexicographic rank `rank`
void unrank(int n, int k, std::uint64_t rank, std::vector<int>& c) {
  c.resize(static_cast<std::size_t>(k));
  int x = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      const std::uint64_t below = binom(n - x - 1, k - i - 1);
      if (rank < below) break;
      rank -= below;
      ++x;
    }
    c[static_cast<std::size_t>(i)] = x++;
  }
}

bool next_combination(int n, std::vector<int>& c) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

// Feasibility test specialised per graph; bitmask rounds when n <= 64.
class Checker {
 public:
  Checker(const Graph& g, const NodeSet& targets, int ell) : g_(g), targets_(targets), ell_(ell) {
    n_ = g.num_nodes();
    small_ = n_ <= 64;
    if (small_) {
      closed_.assign(static_cast<std::size_t>(n_), 0);
      open_.assign(static_cast<std::size_t>(n_), 0);
      for (Node v = 0; v < n_; ++v) {
        for (Node u : g.neighbors(v)) open_[static_cast<std::size_t>(v)] |= Mask{1} << u;
        closed_[static_cast<std::size_t>(v)] = open_[static_cast<std::size_t>(v)] | Mask{1} << v;
      }
      for (Node v : targets.members()) tmask_ |= Mask{1} << v;
    }
  }

  bool operator()(const std::vector<int>& c) const {
    if (!small_) {
      NodeSet s(static_cast<std::size_t>(n_));
      for (int v : c) s.insert(v);
      return is_feasible(g_, s, targets_, ell_);
    }
    Mask dom = 0;
    for (int v : c) dom |= closed_[static_cast<std::size_t>(v)];
    for (int r = 2; r <= ell_ && (dom & tmask_) != tmask_; ++r) {
      Mask fresh = 0;
      for (Mask rest = dom; rest; rest &= rest - 1) {
        const int u = std::countr_zero(rest);
        const Mask miss = open_[static_cast<std::size_t>(u)] & ~dom;
        if (miss && !(miss & (miss - 1))) fresh |= miss;
      }
      if (!fresh) break;
      dom |= fresh;
    }
    return (dom & tmask_) == tmask_;
  }

 private:
  const Graph& g_;
  const NodeSet& targets_;
  int ell_, n_;
  bool small_;
  std::vector<Mask> closed_, open_;
  Mask tmask_ = 0;
};

void guard(const Graph& g, const NodeSet& targets, int ell, const BfOptions& opt) {
  if (ell < 1) throw std::invalid_argument("round count must be at least 1");
  if (targets.universe() != static_cast<std::size_t>(g.num_nodes()))
    throw std::invalid_argument("target set universe does not match graph");
  if (g.num_nodes() > kBfGuard && !opt.allow_large)
    throw std::invalid_argument("brute force limited to " + std::to_string(kBfGuard) + " nodes, graph has " +
                                std::to_string(g.num_nodes()));
}

BfResult found(int n, const std::vector<int>& c) {
  BfResult r;
  r.opt = static_cast<int>(c.size());
  r.witness = NodeSet(static_cast<std::size_t>(n), c);
  return r;
}

template <class Pred>
BfResult serial_search(int n, const BfOptions& opt, const Pred& ok) {
  const int top = opt.size_cap ? std::min(n, *opt.size_cap) : n;
  std::vector<int> c;
  for (int k = 0; k <= top; ++k) {
    unrank(n, k, 0, c);
    do {
      if (ok(c)) return found(n, c);
    } while (next_combination(n, c));
  }
  BfResult r;
  r.exceeded = true;
  return r;
}

}  // namespace

BfResult solve_bf(const Graph& g, const NodeSet& targets, int ell, const BfOptions& opt) {
  guard(g, targets, ell, opt);
  Checker ok(g, targets, ell);
  return serial_search(g.num_nodes(), opt, ok);
}

BfResult solve_bf_parallel(const Graph& g, const NodeSet& targets, int ell, const BfOptions& opt) {
  guard(g, targets, ell, opt);
  Checker ok(g, targets, ell);
  const int n = g.num_nodes();
  const int top = opt.size_cap ? std::min(n, *opt.size_cap) : n;
  constexpr std::uint64_t kChunk = 4096;
  for (int k = 0; k <= top; ++k) {
    const std::uint64_t total = binom(n, k);
    const auto chunks = static_cast<long long>((total + kChunk - 1) / kChunk);
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
#pragma omp parallel for schedule(dynamic)
    for (long long ch = 0; ch < chunks; ++ch) {
      const std::uint64_t start = static_cast<std::uint64_t>(ch) * kChunk;
      std::uint64_t seen;
#pragma omp atomic read
      seen = best;
      if (start >= seen) continue;
      const std::uint64_t stop = std::min(total, start + kChunk);
      std::vector<int> c;
      unrank(n, k, start, c);
      for (std::uint64_t rank = start; rank < stop; ++rank) {
        if (ok(c)) {
#pragma omp critical(lpds_bf_best)
          best = std::min(best, rank);
          break;
        }
        next_combination(n, c);
      }
    }
    if (best != std::numeric_limits<std::uint64_t>::max()) {
      std::vector<int> c;
      unrank(n, k, best, c);
      return found(n, c);
    }
  }
  BfResult r;
  r.exceeded = true;
  return r;
}

BfResult solve_domset_bf(const Graph& g, const BfOptions& opt) {
  const int n = g.num_nodes();
  if (n > kBfGuard && !opt.allow_large)
    throw std::invalid_argument("brute force limited to " + std::to_string(kBfGuard) + " nodes");
  std::vector<NodeSet> closed;
  for (Node v = 0; v < n; ++v) closed.push_back(closed_neighborhood(g, v));
  const NodeSet everything = NodeSet::all(static_cast<std::size_t>(n));
  auto covers = [&](const std::vector<int>& c) {
    NodeSet cov(static_cast<std::size_t>(n));
    for (int v : c) cov |= closed[static_cast<std::size_t>(v)];
    return cov == everything;
  };
  return serial_search(n, opt, covers);
}

}  // namespace lpds
