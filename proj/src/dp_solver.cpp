#include "lpds/dp_solver.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

namespace lpds {

// Internal encoding differs from BagState in one respect: edges out of origins are never
// stored.  A label-1 node is plain once some origin neighbor has been seen and hatted
// before that; every other plain label has exactly one stored in-edge (bag or below).

namespace {

constexpr int kFields = 5;
enum Field { kLabel = 0, kIn = 1, kOut = 2, kY = 3, kO = 4 };
constexpr int kFwd = static_cast<int>(EdgeDir::Forward);
constexpr int kBwd = static_cast<int>(EdgeDir::Backward);

struct Ctx {
  BagContext base;
  std::vector<std::vector<int>> adj;  // local neighbor indices
  std::vector<bool> has_future;       // some neighbor lies outside the subtree graph
  // per bag node: one mask per outside neighbor, holding that neighbor's other bag neighbors
  std::vector<std::vector<std::uint64_t>> future_masks;
  int stride = 0;

  int nb() const { return static_cast<int>(base.bag.size()); }
  int edge_index(int a, int b) const {
    auto it = std::lower_bound(base.edges.begin(), base.edges.end(),
                               std::make_pair(std::min(a, b), std::max(a, b)));
    return static_cast<int>(it - base.edges.begin());
  }
};

Ctx make_ctx(const BagContext& bc) {
  Ctx c;
  c.base = bc;
  c.adj.assign(bc.bag.size(), {});
  for (auto [a, b] : bc.edges) {
    c.adj[static_cast<std::size_t>(a)].push_back(b);
    c.adj[static_cast<std::size_t>(b)].push_back(a);
  }
  c.has_future.assign(bc.bag.size(), true);
  c.future_masks.assign(bc.bag.size(), {});
  c.stride = kFields * static_cast<int>(bc.bag.size()) + static_cast<int>(bc.edges.size());
  return c;
}

bool finite_non_origin(int L) { return L != 0 && L != kInf; }

// max over s_y(u) and the unhatted labels of N_i[u] minus `skip`
int closed_max(const Ctx& c, const int* r, int u, int skip) {
  int m = std::max(r[kFields * u + kY], unhat(r[kFields * u + kLabel]));
  for (int w : c.adj[static_cast<std::size_t>(u)])
    if (w != skip) m = std::max(m, unhat(r[kFields * w + kLabel]));
  return m;
}

// Timing check for an out-edge of non-origin u reaching label tv.  Once every neighbor of u
// is known the equation must hold exactly; before that only the lower bound can be tested.
bool timing_ok(const Ctx& c, const int* r, int u, int skip, int tv) {
  const int m = closed_max(c, r, u, skip);
  if (m == kInf || tv == kInf || tv < m + 1) return false;
  return c.has_future[static_cast<std::size_t>(u)] || tv == m + 1;
}

bool row_valid(const Ctx& c, const int* r) {
  const int nb = c.nb();
  const int ell = c.base.ell;
  int din[64], dout[64];
  std::fill(din, din + nb, 0);
  std::fill(dout, dout + nb, 0);
  const int* er = r + kFields * nb;
  for (std::size_t e = 0; e < c.base.edges.size(); ++e) {
    auto [a, b] = c.base.edges[e];
    if (er[e] == kFwd) {
      ++dout[a];
      ++din[b];
    } else if (er[e] == kBwd) {
      ++dout[b];
      ++din[a];
    }
  }
  for (int v = 0; v < nb; ++v) {
    const int* f = r + kFields * v;
    const int L = f[kLabel];
    const int in = din[v] + f[kIn];
    const int out = dout[v] + f[kOut];
    if (L == kInf) {
      if (c.base.is_target[static_cast<std::size_t>(v)] || in + out > 0) return false;
      continue;
    }
    if (L == 0) {
      if (in + out > 0) return false;
      continue;
    }
    const int a = unhat(L);
    if (a > ell) return false;
    const int need = (L >= 2) ? 1 : 0;  // label 1 is justified through an origin neighbor
    if (in != need || out > 1) return false;
    if (f[kO] != kNoOut && !timing_ok(c, r, v, -1, f[kO])) return false;
  }
  for (std::size_t e = 0; e < c.base.edges.size(); ++e) {
    if (er[e] == 0) continue;
    auto [a, b] = c.base.edges[e];
    const int u = er[e] == kFwd ? a : b;
    const int v = u == a ? b : a;
    const int Lu = r[kFields * u + kLabel];
    const int tv = unhat(r[kFields * v + kLabel]);
    if (!finite_non_origin(Lu) || tv < 2 || !timing_ok(c, r, u, v, tv)) return false;
  }
  return true;
}

void canonicalize(const Ctx& c, int* r) {
  for (int v = 0; v < c.nb(); ++v) {
    int* f = r + kFields * v;
    if (f[kLabel] == 0 || f[kLabel] == kInf) f[kY] = 0;
  }
}

// A hatted node needs an unseen in-neighbor u.  For labels above 1, u is not an origin and
// every bag neighbor of u other than the hatted node must carry a smaller label.
bool hats_resolvable(const Ctx& c, const int* r) {
  for (int v = 0; v < c.nb(); ++v) {
    const int L = r[kFields * v + kLabel];
    if (!is_hat(L)) continue;
    if (!c.has_future[static_cast<std::size_t>(v)]) return false;
    if (L == -1) continue;
    bool any = false;
    for (std::uint64_t m : c.future_masks[static_cast<std::size_t>(v)]) {
      bool fits = true;
      for (; m && fits; m &= m - 1)
        if (unhat(r[kFields * std::countr_zero(m) + kLabel]) >= -L) fits = false;
      if (fits) {
        any = true;
        break;
      }
    }
    if (!any) return false;
  }
  return true;
}

struct Table {
  int stride = 0;
  std::vector<int> pool;
  std::vector<int> cost;
  std::vector<std::pair<int, int>> back;

  struct Hash {
    const Table* t;
    std::size_t operator()(int i) const {
      const int* p = t->pool.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(t->stride);
      return boost::hash_range(p, p + t->stride);
    }
  };
  struct Eq {
    const Table* t;
    bool operator()(int a, int b) const {
      const int* p = t->pool.data() + static_cast<std::size_t>(a) * static_cast<std::size_t>(t->stride);
      const int* q = t->pool.data() + static_cast<std::size_t>(b) * static_cast<std::size_t>(t->stride);
      return std::equal(p, p + t->stride, q);
    }
  };
  std::unordered_map<int, int, Hash, Eq> index{16, Hash{this}, Eq{this}};

  Table() = default;
  Table(const Table&) = delete;
  Table& operator=(const Table&) = delete;

  std::size_t size() const { return cost.size(); }
  const int* row(std::size_t i) const { return pool.data() + i * static_cast<std::size_t>(stride); }

  // candidate row at the end of the pool; offer() adopts or discards it
  int* scratch() {
    pool.resize((cost.size() + 1) * static_cast<std::size_t>(stride));
    return pool.data() + cost.size() * static_cast<std::size_t>(stride);
  }
  void offer(int c, std::pair<int, int> from) {
    const int id = static_cast<int>(cost.size());
    auto it = index.find(id);
    if (it != index.end()) {
      auto& old = cost[static_cast<std::size_t>(it->second)];
      if (c < old) {
        old = c;
        back[static_cast<std::size_t>(it->second)] = from;
      }
      return;
    }
    cost.push_back(c);
    back.push_back(from);
    index.emplace(id, id);
  }
  void freeze() {
    pool.resize(cost.size() * static_cast<std::size_t>(stride));
    pool.shrink_to_fit();
    index = std::unordered_map<int, int, Hash, Eq>(16, Hash{this}, Eq{this});
  }
};

class Dp {
 public:
  Dp(const Graph& g, const NodeSet& targets, int ell, const NiceTreeDecomposition& ntd, const DpOptions& opt)
      : g_(g), ell_(ell), ntd_(ntd), opt_(opt) {
    const std::size_t N = ntd.nodes.size();
    subtree_.assign(N, NodeSet(static_cast<std::size_t>(g.num_nodes())));
    for (std::size_t i = 0; i < N; ++i) {
      const auto& nd = ntd.nodes[i];
      for (int ch : nd.children) subtree_[i] |= subtree_[static_cast<std::size_t>(ch)];
      for (Node v : nd.bag) subtree_[i].insert(v);
      ctx_.push_back(make_ctx(BagContext::make(g, nd.bag, targets, ell)));
      auto& c = ctx_.back();
      for (std::size_t a = 0; a < nd.bag.size(); ++a) {
        bool fut = false;
        for (Node w : g.neighbors(nd.bag[a])) {
          if (subtree_[i].contains(w)) continue;
          fut = true;
          std::uint64_t m = 0;
          for (std::size_t b = 0; b < nd.bag.size(); ++b)
            if (b != a && g.has_edge(w, nd.bag[b])) m |= std::uint64_t{1} << b;
          c.future_masks[a].push_back(m);
        }
        c.has_future[a] = fut;
      }
      tables_.emplace_back(std::make_unique<Table>());
      tables_.back()->stride = c.stride;
    }
  }

  void run() {
    for (std::size_t i = 0; i < ntd_.nodes.size(); ++i) {
      switch (ntd_.nodes[i].kind) {
        case NiceKind::Leaf: leaf(i); break;
        case NiceKind::Insert: insert(i); break;
        case NiceKind::Forget: forget(i); break;
        case NiceKind::Join: join(i); break;
      }
      auto& t = *tables_[i];
      t.freeze();
      stats_.max_table = std::max(stats_.max_table, t.size());
      stats_.total_states += t.size();
    }
    stats_.nice_nodes = ntd_.nodes.size();
    stats_.width = ntd_.width();
  }

  const Table& table(std::size_t i) const { return *tables_[i]; }
  const Ctx& ctx(std::size_t i) const { return ctx_[i]; }
  const DpStats& stats() const { return stats_; }
  const NodeSet& subtree(std::size_t i) const { return subtree_[i]; }

  // origins of the partial solution behind (node, state)
  NodeSet replay(int node, int idx) const {
    NodeSet s(static_cast<std::size_t>(g_.num_nodes()));
    std::vector<std::pair<int, int>> stack{{node, idx}};
    while (!stack.empty()) {
      auto [i, k] = stack.back();
      stack.pop_back();
      const auto& nd = ntd_.nodes[static_cast<std::size_t>(i)];
      const auto& t = *tables_[static_cast<std::size_t>(i)];
      const int* r = t.row(static_cast<std::size_t>(k));
      auto from = t.back[static_cast<std::size_t>(k)];
      switch (nd.kind) {
        case NiceKind::Leaf:
          if (!nd.bag.empty() && r[kLabel] == 0) s.insert(nd.bag[0]);
          break;
        case NiceKind::Insert:
          if (r[kFields * position(nd.bag, nd.vertex) + kLabel] == 0) s.insert(nd.vertex);
          stack.emplace_back(nd.children[0], from.first);
          break;
        case NiceKind::Forget:
          stack.emplace_back(nd.children[0], from.first);
          break;
        case NiceKind::Join:
          stack.emplace_back(nd.children[0], from.first);
          stack.emplace_back(nd.children[1], from.second);
          break;
      }
    }
    return s;
  }

  static int position(const std::vector<Node>& bag, Node x) {
    return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), x) - bag.begin());
  }

 private:
  void emit(std::size_t i, int* r, int c, std::pair<int, int> from) {
    const auto& cx = ctx_[i];
    auto& t = *tables_[i];
    canonicalize(cx, r);
    if (!hats_resolvable(cx, r) || !row_valid(cx, r)) return;
    t.offer(c, from);
    if (opt_.max_states && t.size() > opt_.max_states)
      throw BudgetExceeded("state table exceeded " + std::to_string(opt_.max_states) + " entries");
  }

  void leaf(std::size_t i) {
    const auto& nd = ntd_.nodes[i];
    auto& t = *tables_[i];
    if (nd.bag.empty()) {
      t.scratch();
      t.offer(0, {-1, -1});
      return;
    }
    auto put = [&](int label, int c) {
      int* r = t.scratch();
      r[kLabel] = label;
      r[kIn] = r[kOut] = r[kY] = 0;
      r[kO] = kNoOut;
      emit(i, r, c, {-1, -1});
    };
    put(0, 1);
    for (int a = 1; a <= ell_; ++a) put(-a, 0);
    put(kInf, 0);
  }

  void insert(std::size_t i) {
    const auto& nd = ntd_.nodes[i];
    const int ch = nd.children[0];
    const auto& child = *tables_[static_cast<std::size_t>(ch)];
    const auto& cc = ctx_[static_cast<std::size_t>(ch)];
    const auto& pc = ctx_[i];
    auto& t = *tables_[i];
    const int p = position(nd.bag, nd.vertex);
    const int cnb = cc.nb();
    const int nf = kFields * pc.nb();
    auto up = [&](int v) { return v < p ? v : v + 1; };
    std::vector<int> edge_map(cc.base.edges.size());
    for (std::size_t e = 0; e < cc.base.edges.size(); ++e)
      edge_map[e] = pc.edge_index(up(cc.base.edges[e].first), up(cc.base.edges[e].second));
    struct XEdge {
      int edge, nbr;  // parent indices
      bool x_first;   // Forward means x -> nbr
    };
    std::vector<XEdge> xe;
    for (int w : pc.adj[static_cast<std::size_t>(p)]) xe.push_back({pc.edge_index(p, w), w, p < w});
    const bool x_target = pc.base.is_target[static_cast<std::size_t>(p)];

    std::vector<int> buf(static_cast<std::size_t>(pc.stride));
    auto lab = [&](int v) { return buf[static_cast<std::size_t>(kFields * v + kLabel)]; };
    auto fresh = [&]() {
      int* r = t.scratch();
      std::copy(buf.begin(), buf.end(), r);
      return r;
    };
    auto direct = [&](int* r, const XEdge& x, bool from_x) {
      r[nf + x.edge] = from_x == x.x_first ? kFwd : kBwd;
      if (from_x) r[kFields * x.nbr + kLabel] = -r[kFields * x.nbr + kLabel];  // hat -> plain
    };

    for (std::size_t k = 0; k < child.size(); ++k) {
      const int* cr = child.row(k);
      const int base = child.cost[k];
      const std::pair<int, int> from{static_cast<int>(k), -1};
      for (int v = 0; v < cnb; ++v) std::copy(cr + kFields * v, cr + kFields * (v + 1), buf.data() + kFields * up(v));
      int* xf = buf.data() + kFields * p;
      xf[kIn] = xf[kOut] = xf[kY] = 0;
      xf[kO] = kNoOut;
      std::fill(buf.begin() + nf, buf.end(), 0);
      for (std::size_t e = 0; e < edge_map.size(); ++e)
        buf[static_cast<std::size_t>(nf + edge_map[e])] = cr[kFields * cnb + static_cast<int>(e)];

      bool origin_nbr = false;
      for (const auto& x : xe) origin_nbr = origin_nbr || lab(x.nbr) == 0;

      // x as origin: hatted 1-labels around it become justified
      xf[kLabel] = 0;
      {
        int* r = fresh();
        for (const auto& x : xe)
          if (r[kFields * x.nbr + kLabel] == -1) r[kFields * x.nbr + kLabel] = 1;
        emit(i, r, base + 1, from);
      }
      if (!x_target) {
        xf[kLabel] = kInf;
        emit(i, fresh(), base, from);
      }
      for (int a = 1; a <= ell_; ++a) {
        for (int Lx : {a, -a}) {
          if (a == 1 && (Lx > 0) != origin_nbr) continue;
          xf[kLabel] = Lx;
          std::vector<int> ins{-1};
          if (Lx >= 2) {
            ins.clear();
            for (std::size_t q = 0; q < xe.size(); ++q)
              if (finite_non_origin(lab(xe[q].nbr))) ins.push_back(static_cast<int>(q));
          }
          for (int in : ins)
            for (int out = -1; out < static_cast<int>(xe.size()); ++out) {
              if (out >= 0) {
                const int Lw = lab(xe[static_cast<std::size_t>(out)].nbr);
                if (out == in || !is_hat(Lw) || Lw == -1) continue;
              }
              int* r = fresh();
              if (in >= 0) direct(r, xe[static_cast<std::size_t>(in)], false);
              if (out >= 0) direct(r, xe[static_cast<std::size_t>(out)], true);
              emit(i, r, base, from);
            }
        }
      }
    }
  }

  void forget(std::size_t i) {
    const auto& nd = ntd_.nodes[i];
    const int ch = nd.children[0];
    const auto& child = *tables_[static_cast<std::size_t>(ch)];
    const auto& cc = ctx_[static_cast<std::size_t>(ch)];
    const auto& pc = ctx_[i];
    auto& t = *tables_[i];
    const int p = position(cc.base.bag, nd.vertex);
    const int cnb = cc.nb();
    const int pf = kFields * pc.nb();
    auto down = [&](int v) { return v < p ? v : v - 1; };
    std::vector<int> edge_map(cc.base.edges.size(), -1);
    struct XEdge {
      int edge, nbr;  // child edge index, parent index of the neighbor
      bool x_first;
    };
    std::vector<XEdge> xe;
    for (std::size_t e = 0; e < cc.base.edges.size(); ++e) {
      auto [a, b] = cc.base.edges[e];
      if (a == p || b == p)
        xe.push_back({static_cast<int>(e), down(a == p ? b : a), a == p});
      else
        edge_map[e] = pc.edge_index(down(a), down(b));
    }
    for (std::size_t k = 0; k < child.size(); ++k) {
      const int* cr = child.row(k);
      const int Lx = cr[kFields * p + kLabel];
      if (is_hat(Lx)) continue;
      int* r = t.scratch();
      for (int v = 0; v < cnb; ++v)
        if (v != p) std::copy(cr + kFields * v, cr + kFields * (v + 1), r + kFields * down(v));
      for (std::size_t e = 0; e < edge_map.size(); ++e)
        if (edge_map[e] >= 0) r[pf + edge_map[e]] = cr[kFields * cnb + static_cast<int>(e)];
      bool ok = true;
      for (const auto& x : xe) {
        const int d = cr[kFields * cnb + x.edge];
        int* f = r + kFields * x.nbr;
        const bool x_to_v = d != 0 && (d == kFwd) == x.x_first;
        const bool v_to_x = d != 0 && !x_to_v;
        if (x_to_v && ++f[kIn] > 1) ok = false;
        if (v_to_x) {
          f[kOut] = std::min(2, f[kOut] + 1);
          if (f[kO] != kNoOut) ok = false;
          f[kO] = Lx;
        } else if (finite_non_origin(f[kLabel])) {
          f[kY] = std::max(f[kY], Lx);
        }
      }
      if (ok) emit(i, r, child.cost[k], {static_cast<int>(k), -1});
    }
  }

  void join(std::size_t i) {
    const auto& nd = ntd_.nodes[i];
    const auto& A = *tables_[static_cast<std::size_t>(nd.children[0])];
    const auto& B = *tables_[static_cast<std::size_t>(nd.children[1])];
    const auto& pc = ctx_[i];
    auto& t = *tables_[i];
    const int nb = pc.nb();
    const int nf = kFields * nb;
    // children must agree on unhatted labels and on every bag edge
    auto key_of = [&](const int* r) {
      std::vector<int> key;
      key.reserve(static_cast<std::size_t>(pc.stride - 4 * nb));
      for (int v = 0; v < nb; ++v) key.push_back(unhat(r[kFields * v + kLabel]));
      key.insert(key.end(), r + nf, r + pc.stride);
      return key;
    };
    std::map<std::vector<int>, std::vector<int>> buckets;
    for (std::size_t k = 0; k < B.size(); ++k) buckets[key_of(B.row(k))].push_back(static_cast<int>(k));
    for (std::size_t a = 0; a < A.size(); ++a) {
      const int* ra = A.row(a);
      auto it = buckets.find(key_of(ra));
      if (it == buckets.end()) continue;
      int origins = 0;
      for (int v = 0; v < nb; ++v) origins += ra[kFields * v + kLabel] == 0;
      for (int b : it->second) {
        const int* rb = B.row(static_cast<std::size_t>(b));
        int* r = t.scratch();
        bool ok = true;
        for (int v = 0; v < nb && ok; ++v) {
          const int* fa = ra + kFields * v;
          const int* fb = rb + kFields * v;
          int* f = r + kFields * v;
          f[kLabel] = (is_hat(fa[kLabel]) && is_hat(fb[kLabel])) ? fa[kLabel] : unhat(fa[kLabel]);
          f[kIn] = fa[kIn] + fb[kIn];
          f[kOut] = std::min(2, fa[kOut] + fb[kOut]);
          f[kY] = std::max(fa[kY], fb[kY]);
          if (fa[kO] != kNoOut && fb[kO] != kNoOut) ok = false;
          f[kO] = fa[kO] != kNoOut ? fa[kO] : fb[kO];
          if (f[kIn] > 1) ok = false;
        }
        if (!ok) continue;
        std::copy(ra + nf, ra + pc.stride, r + nf);
        emit(i, r, A.cost[a] + B.cost[static_cast<std::size_t>(b)] - origins, {static_cast<int>(a), b});
      }
    }
  }

  const Graph& g_;
  int ell_;
  const NiceTreeDecomposition& ntd_;
  DpOptions opt_;
  std::vector<Ctx> ctx_;
  std::vector<NodeSet> subtree_;
  std::vector<std::unique_ptr<Table>> tables_;
  DpStats stats_;
};

void check_inputs(const Graph& g, const NodeSet& targets, int ell, const NiceTreeDecomposition& ntd) {
  if (ell < 1) throw std::invalid_argument("round count must be at least 1");
  if (targets.universe() != static_cast<std::size_t>(g.num_nodes()))
    throw std::invalid_argument("target set universe does not match graph");
  if (auto msg = validate_nice(g, ntd)) throw std::invalid_argument("invalid nice decomposition: " + *msg);
  for (const auto& nd : ntd.nodes)
    if (nd.bag.size() > 64) throw BudgetExceeded("bag of size " + std::to_string(nd.bag.size()) + " exceeds 64");
}

// Internal row as a BagState, with each justified 1-label given an explicit witness edge
// from a bag origin when one is adjacent and counted as coming from below otherwise.
BagState materialize(const Ctx& c, const int* r) {
  const int nb = c.nb();
  BagState s;
  for (int v = 0; v < nb; ++v) {
    const int* f = r + kFields * v;
    s.label.push_back(f[kLabel]);
    s.in_below.push_back(f[kIn]);
    s.out_below.push_back(f[kOut]);
    s.below_max.push_back(f[kY]);
    s.out_time.push_back(f[kO]);
  }
  for (std::size_t e = 0; e < c.base.edges.size(); ++e) s.edges.push_back(static_cast<EdgeDir>(r[kFields * nb + static_cast<int>(e)]));
  for (int v = 0; v < nb; ++v) {
    if (s.label[static_cast<std::size_t>(v)] != 1) continue;
    int witness = -1;
    for (int w : c.adj[static_cast<std::size_t>(v)])
      if (s.label[static_cast<std::size_t>(w)] == 0 && (witness < 0 || w < witness)) witness = w;
    if (witness < 0) {
      s.in_below[static_cast<std::size_t>(v)] = 1;
    } else {
      const std::size_t e = static_cast<std::size_t>(c.edge_index(witness, v));
      s.edges[e] = witness < v ? EdgeDir::Forward : EdgeDir::Backward;
    }
  }
  return s;
}

}  // namespace

BagContext BagContext::make(const Graph& g, const std::vector<Node>& bag, const NodeSet& targets, int ell) {
  BagContext c;
  c.bag = bag;
  c.ell = ell;
  for (std::size_t a = 0; a < bag.size(); ++a) {
    c.is_target.push_back(targets.contains(bag[a]));
    for (std::size_t b = a + 1; b < bag.size(); ++b)
      if (g.has_edge(bag[a], bag[b])) c.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  return c;
}

bool is_invalid_state(const BagContext& bc, const BagState& s) {
  const std::size_t nb = bc.bag.size();
  if (s.label.size() != nb || s.edges.size() != bc.edges.size())
    throw std::invalid_argument("state shape does not match bag");
  auto field = [&](const std::vector<int>& f, std::size_t v, int dflt) { return f.empty() ? dflt : f[v]; };
  std::vector<int> din(nb, 0), dout(nb, 0);
  std::vector<std::vector<int>> adj(nb);
  for (std::size_t e = 0; e < bc.edges.size(); ++e) {
    auto [a, b] = bc.edges[e];
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
    if (s.edges[e] == EdgeDir::Forward) {
      ++dout[static_cast<std::size_t>(a)];
      ++din[static_cast<std::size_t>(b)];
    } else if (s.edges[e] == EdgeDir::Backward) {
      ++dout[static_cast<std::size_t>(b)];
      ++din[static_cast<std::size_t>(a)];
    }
  }
  auto max_around = [&](std::size_t u, int skip) {
    int m = field(s.below_max, u, 0);
    m = std::max(m, unhat(s.label[u]));
    for (int w : adj[u])
      if (w != skip) m = std::max(m, unhat(s.label[static_cast<std::size_t>(w)]));
    return m;
  };
  for (std::size_t v = 0; v < nb; ++v) {
    const int L = s.label[v];
    const int in = din[v] + field(s.in_below, v, 0);
    const int out = dout[v] + field(s.out_below, v, 0);
    if (field(s.in_below, v, 0) == 1 && field(s.out_below, v, 0) == 2) return true;
    if (L == kInf && bc.is_target[v]) return true;                          // not P1
    if (L != kInf && L != 0 && unhat(L) > bc.ell) return true;
    if (L >= 1 && L != kInf && in > 1) return true;                           // not P2
    if (L == kInf && in + out >= 1) return true;                              // not P3
    if (L == 0 && in >= 1) return true;                                       // not P4
    if (is_hat(L) && in != 0) return true;                                    // hat already justified
    if (L >= 1 && L != kInf && in == 0) return true;                          // plain without justification
    const int o = field(s.out_time, v, kNoOut);
    if (o != kNoOut && L != 0) {
      const int m = max_around(v, -1);
      if (m == kInf || o < m + 1) return true;
    }
  }
  for (std::size_t e = 0; e < bc.edges.size(); ++e) {
    if (s.edges[e] == EdgeDir::None) continue;
    auto [a, b] = bc.edges[e];
    const int u = s.edges[e] == EdgeDir::Forward ? a : b;
    const int v = u == a ? b : a;
    const int tu = unhat(s.label[static_cast<std::size_t>(u)]);
    const int tv = unhat(s.label[static_cast<std::size_t>(v)]);
    if (tv == 1 && tu != 0) return true;                                      // not P5
    if (tv > 1) {
      const int m = max_around(static_cast<std::size_t>(u), v);
      if (tu == 0 || m == kInf || tv < m + 1) return true;
    }
  }
  return false;
}

DpResult solve_dp(const Graph& g, const NodeSet& targets, int ell, const NiceTreeDecomposition& ntd,
                  const DpOptions& options) {
  check_inputs(g, targets, ell, ntd);
  ell = std::min(ell, full_rounds(g));
  Dp dp(g, targets, ell, ntd, options);
  dp.run();
  const auto& root = dp.table(static_cast<std::size_t>(ntd.root));
  const int nb = dp.ctx(static_cast<std::size_t>(ntd.root)).nb();
  int best = -1;
  for (std::size_t k = 0; k < root.size(); ++k) {
    const int* r = root.row(k);
    bool hatted = false;
    for (int v = 0; v < nb; ++v) hatted = hatted || is_hat(r[kFields * v + kLabel]);
    if (hatted) continue;
    if (best < 0) {
      best = static_cast<int>(k);
      continue;
    }
    const int* rb = root.row(static_cast<std::size_t>(best));
    const int cb = root.cost[static_cast<std::size_t>(best)];
    if (root.cost[k] < cb || (root.cost[k] == cb && std::lexicographical_compare(r, r + root.stride, rb, rb + root.stride)))
      best = static_cast<int>(k);
  }
  if (best < 0) throw std::logic_error("internal error: no feasible root state");
  DpResult res;
  res.opt = root.cost[static_cast<std::size_t>(best)];
  res.witness = dp.replay(ntd.root, best);
  res.stats = dp.stats();
  if (static_cast<int>(res.witness.size()) != res.opt)
    throw std::logic_error("internal error: witness size differs from optimum");
  return res;
}

DpResult solve_dp(const Graph& g, const NodeSet& targets, int ell, const DpOptions& options) {
  return solve_dp(g, targets, ell, to_nice(g, heuristic_td(g)), options);
}

std::uint64_t state_space_size(std::uint64_t n_i, std::uint64_t m_i, std::uint64_t ell) {
  constexpr auto kMax = UINT64_MAX;
  if (n_i > 0 && ell > (kMax - 2) / 2) return kMax;
  std::uint64_t acc = 1;
  auto mul_pow = [&](std::uint64_t base, std::uint64_t exp) {
    for (std::uint64_t e = 0; e < exp && acc != kMax; ++e) acc = base > kMax / acc ? kMax : acc * base;
  };
  mul_pow(3, m_i);
  mul_pow(2 * ell + 2, n_i);
  mul_pow(5, n_i);
  mul_pow(ell + 2, n_i);
  return acc;
}

std::optional<std::string> audit_dp_invariant(const Graph& g, const NodeSet& targets, int ell,
                                              const NiceTreeDecomposition& ntd) {
  check_inputs(g, targets, ell, ntd);
  ell = std::min(ell, full_rounds(g));
  Dp dp(g, targets, ell, ntd, {});
  dp.run();
  const int n = g.num_nodes();
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const auto& t = dp.table(i);
    const auto& bag = ntd.nodes[i].bag;
    const auto& sub = dp.subtree(i);
    auto where = [&](std::size_t k) { return "nice node " + std::to_string(i) + " state " + std::to_string(k) + ": "; };
    for (std::size_t k = 0; k < t.size(); ++k) {
      const int* r = t.row(k);
      if (is_invalid_state(dp.ctx(i).base, materialize(dp.ctx(i), r))) return where(k) + "stored state is invalid";
      NodeSet src = dp.replay(static_cast<int>(i), static_cast<int>(k));
      if (static_cast<int>(src.size()) != t.cost[k]) return where(k) + "replayed origin count differs from table value";
      for (Node v = 0; v < n; ++v)
        if (!sub.contains(v)) src.insert(v);
      auto tr = propagate(g, src, ell);
      for (Node v : sub.members()) {
        const int tv = tr.times[static_cast<std::size_t>(v)];
        const auto pos = std::lower_bound(bag.begin(), bag.end(), v);
        if (pos == bag.end() || *pos != v) {
          if (targets.contains(v) && tv > ell) return where(k) + "forgotten target " + std::to_string(v) + " undominated";
          continue;
        }
        const int L = r[kFields * static_cast<int>(pos - bag.begin()) + kLabel];
        if (L != kInf && L >= 0 && tv > L)
          return where(k) + "bag node " + std::to_string(v) + " labelled " + std::to_string(L) + " reached at " + format_time(tv);
      }
    }
  }
  return std::nullopt;
}

}  // namespace lpds
