#include "lpds/planar_ptas.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>

#include "lpds/propagation.hpp"

namespace lpds {

int LevelAssignment::max_level() const {
  int m = 0;
  for (int l : level) m = std::max(m, l);
  return m;
}

NodeSet LevelAssignment::range(int lo, int hi) const {
  NodeSet s(level.size());
  for (std::size_t v = 0; v < level.size(); ++v)
    if (level[v] >= lo && level[v] <= hi) s.insert(static_cast<Node>(v));
  return s;
}

std::optional<std::string> validate_levels(const Graph& g, const LevelAssignment& levels) {
  if (levels.level.size() != static_cast<std::size_t>(g.num_nodes())) return "level count does not match graph";
  if (levels.level.empty()) return std::nullopt;
  int lo = levels.level[0];
  for (int l : levels.level) lo = std::min(lo, l);
  if (lo != 1) return "minimum level is " + std::to_string(lo) + ", expected 1";
  for (auto [u, v] : g.edges()) {
    const int d = levels.level[static_cast<std::size_t>(u)] - levels.level[static_cast<std::size_t>(v)];
    if (d > 1 || d < -1)
      return "adjacent nodes " + std::to_string(u + 1) + " and " + std::to_string(v + 1) + " are levels apart by " +
             std::to_string(std::abs(d));
  }
  return std::nullopt;
}

namespace {

class Faces {
 public:
  Faces(const Graph& g, const RotationSystem& rs) : rs_(rs) {
    const int n = g.num_nodes();
    if (rs.order.size() != static_cast<std::size_t>(n))
      throw std::invalid_argument("rotation system has " + std::to_string(rs.order.size()) + " nodes, graph has " +
                                  std::to_string(n));
    offset_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (Node v = 0; v < n; ++v) {
      auto sorted = rs.order[static_cast<std::size_t>(v)];
      std::sort(sorted.begin(), sorted.end());
      auto nb = g.neighbors(v);
      if (!std::equal(sorted.begin(), sorted.end(), nb.begin(), nb.end()))
        throw std::invalid_argument("rotation at node " + std::to_string(v + 1) + " is not a permutation of its neighbors");
      offset_[static_cast<std::size_t>(v) + 1] = offset_[static_cast<std::size_t>(v)] + static_cast<int>(nb.size());
    }
    alive_.assign(static_cast<std::size_t>(n), true);
  }

  void kill(Node v) { alive_[static_cast<std::size_t>(v)] = false; }
  bool alive(Node v) const { return alive_[static_cast<std::size_t>(v)]; }

  int index_of(Node v, Node u) const {
    const auto& o = rs_.order[static_cast<std::size_t>(v)];
    return static_cast<int>(std::find(o.begin(), o.end(), u) - o.begin());
  }
  int dart(Node u, Node v) const { return offset_[static_cast<std::size_t>(u)] + index_of(u, v); }
  int num_darts() const { return offset_.back(); }

  // first live neighbor of v strictly after position idx
  Node next_alive(Node v, int idx) const {
    const auto& o = rs_.order[static_cast<std::size_t>(v)];
    const int d = static_cast<int>(o.size());
    for (int s = 1; s <= d; ++s) {
      Node w = o[static_cast<std::size_t>((idx + s) % d)];
      if (alive(w)) return w;
    }
    return -1;
  }

  // darts of the face through (u, v) in the live subgraph
  std::vector<Edge> trace(Node u, Node v) const {
    std::vector<Edge> face;
    Node a = u, b = v;
    const std::size_t limit = static_cast<std::size_t>(num_darts()) + 1;
    do {
      face.emplace_back(a, b);
      if (face.size() > limit) throw std::invalid_argument("face traversal does not terminate");
      Node c = next_alive(b, index_of(b, a));
      a = b;
      b = c;
    } while (a != u || b != v);
    return face;
  }

 private:
  const RotationSystem& rs_;
  std::vector<int> offset_;
  std::vector<bool> alive_;
};

bool connected(const Graph& g) {
  const int n = g.num_nodes();
  if (n == 0) return true;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<Node> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    for (Node u : g.neighbors(v))
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = true;
        ++count;
        stack.push_back(u);
      }
  }
  return count == n;
}

std::vector<std::vector<Edge>> all_faces(const Graph& g, const Faces& f) {
  std::vector<bool> used(static_cast<std::size_t>(f.num_darts()), false);
  std::vector<std::vector<Edge>> faces;
  for (Node u = 0; u < g.num_nodes(); ++u)
    for (Node v : g.neighbors(u)) {
      if (used[static_cast<std::size_t>(f.dart(u, v))]) continue;
      auto face = f.trace(u, v);
      for (auto [a, b] : face) used[static_cast<std::size_t>(f.dart(a, b))] = true;
      faces.push_back(std::move(face));
    }
  return faces;
}

}  // namespace

RotationSystem parse_rotation(std::istream& in, int n) {
  RotationSystem rs;
  rs.order.assign(static_cast<std::size_t>(n), {});
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::string line;
  int lineno = 0;
  bool have_outer = false;
  auto node = [&](long x) {
    if (x < 1 || x > n) throw ParseError(lineno, "node id out of range 1.." + std::to_string(n));
    return static_cast<Node>(x - 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "r") {
      long v = 0;
      if (!(ls >> v)) throw ParseError(lineno, "malformed rotation line");
      Node x = node(v);
      if (seen[static_cast<std::size_t>(x)]) throw ParseError(lineno, "rotation for node " + std::to_string(v) + " given twice");
      seen[static_cast<std::size_t>(x)] = true;
      long u = 0;
      while (ls >> u) rs.order[static_cast<std::size_t>(x)].push_back(node(u));
      if (!ls.eof()) throw ParseError(lineno, "malformed rotation entry");
    } else if (tag == "o") {
      long a = 0, b = 0;
      if (!(ls >> a >> b)) throw ParseError(lineno, "malformed outer dart line");
      rs.outer = {node(a), node(b)};
      have_outer = true;
    } else {
      throw ParseError(lineno, "unknown line type '" + tag + "'");
    }
  }
  if (!have_outer && n > 1) throw ParseError(lineno, "missing outer dart line 'o <u> <v>'");
  return rs;
}

void emit_rotation(std::ostream& out, const RotationSystem& rs) {
  for (std::size_t v = 0; v < rs.order.size(); ++v) {
    out << "r " << v + 1;
    for (Node u : rs.order[v]) out << ' ' << u + 1;
    out << '\n';
  }
  if (rs.outer.first >= 0) out << "o " << rs.outer.first + 1 << ' ' << rs.outer.second + 1 << '\n';
}

RotationSystem rotation_from_positions(const Graph& g, const std::vector<std::pair<double, double>>& pos) {
  const int n = g.num_nodes();
  if (pos.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("one position per node required");
  RotationSystem rs;
  rs.order.resize(static_cast<std::size_t>(n));
  for (Node v = 0; v < n; ++v) {
    auto& o = rs.order[static_cast<std::size_t>(v)];
    auto nb = g.neighbors(v);
    o.assign(nb.begin(), nb.end());
    auto angle = [&](Node u) {
      return std::atan2(pos[static_cast<std::size_t>(u)].second - pos[static_cast<std::size_t>(v)].second,
                        pos[static_cast<std::size_t>(u)].first - pos[static_cast<std::size_t>(v)].first);
    };
    std::stable_sort(o.begin(), o.end(), [&](Node a, Node b) { return angle(a) < angle(b); });
  }
  if (g.num_edges() == 0) return rs;
  Faces f(g, rs);
  double best = 0;
  for (const auto& face : all_faces(g, f)) {
    double area = 0;
    for (auto [a, b] : face)
      area += pos[static_cast<std::size_t>(a)].first * pos[static_cast<std::size_t>(b)].second -
              pos[static_cast<std::size_t>(b)].first * pos[static_cast<std::size_t>(a)].second;
    if (rs.outer.first < 0 || area > best) {
      best = area;
      rs.outer = face.front();
    }
  }
  return rs;
}

int count_faces(const Graph& g, const RotationSystem& rs) {
  Faces f(g, rs);
  if (g.num_edges() == 0) return 1;
  return static_cast<int>(all_faces(g, f).size());
}

LevelAssignment compute_levels(const Graph& g, const RotationSystem& rs) {
  const int n = g.num_nodes();
  LevelAssignment la;
  la.level.assign(static_cast<std::size_t>(n), 0);
  if (n == 0) return la;
  if (!connected(g)) throw std::invalid_argument("level computation needs a connected graph");
  Faces f(g, rs);
  if (g.num_edges() == 0) {
    la.level[0] = 1;
    return la;
  }
  const int faces = static_cast<int>(all_faces(g, f).size());
  if (n - g.num_edges() + faces != 2)
    throw std::invalid_argument("Euler check failed: V - E + F = " + std::to_string(n - g.num_edges() + faces));
  auto [ou, ov] = rs.outer;
  if (ou < 0 || ov < 0 || ou >= n || ov >= n || !g.has_edge(ou, ov))
    throw std::invalid_argument("outer dart is not an edge of the graph");

  int assigned = 0;
  auto mark = [&](Node v, int l) {
    if (la.level[static_cast<std::size_t>(v)] == 0) {
      la.level[static_cast<std::size_t>(v)] = l;
      ++assigned;
    }
  };
  for (auto [a, b] : f.trace(ou, ov)) mark(a, 1);

  for (int l = 2; assigned < n; ++l) {
    for (Node v = 0; v < n; ++v)
      if (la.level[static_cast<std::size_t>(v)] == l - 1) f.kill(v);
    std::vector<bool> done(static_cast<std::size_t>(n), false);
    for (Node s = 0; s < n; ++s) {
      if (!f.alive(s) || done[static_cast<std::size_t>(s)]) continue;
      // collect the live component of s
      std::vector<Node> comp{s}, stack{s};
      done[static_cast<std::size_t>(s)] = true;
      while (!stack.empty()) {
        Node v = stack.back();
        stack.pop_back();
        for (Node u : g.neighbors(v))
          if (f.alive(u) && !done[static_cast<std::size_t>(u)]) {
            done[static_cast<std::size_t>(u)] = true;
            comp.push_back(u);
            stack.push_back(u);
          }
      }
      // a node next to a removed neighbor: the angle that held it lies on the exterior face
      Node v = -1;
      int dead_at = -1;
      for (Node c : comp) {
        const auto& o = rs.order[static_cast<std::size_t>(c)];
        for (std::size_t q = 0; q < o.size() && dead_at < 0; ++q)
          if (!f.alive(o[q])) dead_at = static_cast<int>(q);
        if (dead_at >= 0) {
          v = c;
          break;
        }
      }
      if (v < 0) throw std::logic_error("component without removed neighbor");
      Node b = f.next_alive(v, dead_at);
      if (b < 0) {
        mark(v, l);
        continue;
      }
      for (auto [x, y] : f.trace(v, b)) mark(x, l);
    }
  }
  return la;
}

Ratio parse_ratio(const std::string& text) {
  Ratio r;
  auto bad = [&]() { return std::invalid_argument("bad ratio '" + text + "'"); };
  try {
    std::size_t used = 0;
    if (auto slash = text.find('/'); slash != std::string::npos) {
      r.num = std::stoll(text.substr(0, slash), &used);
      if (used != slash) throw bad();
      const auto tail = text.substr(slash + 1);
      r.den = std::stoll(tail, &used);
      if (used != tail.size()) throw bad();
    } else {
      const auto dot = text.find('.');
      const std::string whole = text.substr(0, dot);
      const std::string frac = dot == std::string::npos ? "" : text.substr(dot + 1);
      if ((whole.empty() && frac.empty()) || frac.size() > 15) throw bad();
      for (char ch : whole + frac)
        if (ch < '0' || ch > '9') throw bad();
      r.den = 1;
      for (std::size_t q = 0; q < frac.size(); ++q) r.den *= 10;
      r.num = (whole.empty() ? 0 : std::stoll(whole)) * r.den + (frac.empty() ? 0 : std::stoll(frac));
    }
  } catch (const std::invalid_argument&) {
    throw bad();
  } catch (const std::out_of_range&) {
    throw bad();
  }
  if (r.den <= 0 || r.num <= 0) throw std::invalid_argument("ratio must be positive: '" + text + "'");
  const long long gcd = std::gcd(r.num, r.den);
  r.num /= gcd;
  r.den /= gcd;
  if (r.num > r.den) throw std::invalid_argument("eps must not exceed 1, got '" + text + "'");
  return r;
}

int ptas_k(int ell, Ratio eps) {
  const long long q = (static_cast<long long>(ell) * eps.den + eps.num - 1) / eps.num;
  return static_cast<int>(4 * q);
}

namespace {
long long floor_div(long long a, long long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
long long ceil_div(long long a, long long b) { return -floor_div(-a, b); }
}  // namespace

std::vector<Block> build_blocks(const LevelAssignment& levels, int i, int k, int ell) {
  if (k < 1 || i < 1 || i > k || ell < 1) throw std::invalid_argument("need 1 <= i <= k and ell >= 1");
  const int M = levels.max_level();
  std::vector<Block> out;
  if (M < 1) return out;
  const long long jlo = ceil_div(2 - i - k, k);
  const long long jhi = floor_div(M - i, k);
  for (long long j = jlo; j <= jhi; ++j) {
    Block b;
    b.i = i;
    b.j = static_cast<int>(j);
    const long long base = j * k + i;
    b.c_lo = static_cast<int>(std::max<long long>(1, base));
    b.c_hi = static_cast<int>(std::min<long long>(M, base + k - 1));
    b.b_lo = static_cast<int>(std::max<long long>(1, base - 2 * ell + 1));
    b.b_hi = static_cast<int>(std::min<long long>(M, base + k - 1 + 2 * ell - 1));
    b.B = levels.range(b.b_lo, b.b_hi);
    b.C = levels.range(b.c_lo, b.c_hi);
    out.push_back(std::move(b));
  }
  return out;
}

PtasResult ptas(const Graph& g, const LevelAssignment& levels, int ell, Ratio eps, const PtasOptions& opt) {
  if (ell < 1) throw std::invalid_argument("round count must be at least 1");
  if (eps.num <= 0 || eps.den <= 0 || eps.num > eps.den) throw std::invalid_argument("eps must lie in (0, 1]");
  if (auto bad = validate_levels(g, levels)) throw std::invalid_argument("invalid levels: " + *bad);
  const int n = g.num_nodes();
  PtasResult res;
  res.k = ptas_k(ell, eps);
  const int k = res.k;

  using Key = std::tuple<int, int, int, int>;
  std::map<Key, int> uniq;
  struct Job {
    const Block* block;
    NodeSet solution;
    int width = -1;
    std::exception_ptr error;
  };
  std::vector<std::vector<Block>> shifts(static_cast<std::size_t>(k));
  std::vector<Job> jobs;
  std::vector<std::vector<int>> job_of(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) shifts[static_cast<std::size_t>(i - 1)] = build_blocks(levels, i, k, ell);
  for (int i = 1; i <= k; ++i)
    for (const auto& b : shifts[static_cast<std::size_t>(i - 1)]) {
      auto [it, fresh] = uniq.emplace(Key{b.b_lo, b.b_hi, b.c_lo, b.c_hi}, static_cast<int>(jobs.size()));
      if (fresh) jobs.push_back(Job{&b, NodeSet(static_cast<std::size_t>(n)), -1, nullptr});
      job_of[static_cast<std::size_t>(i - 1)].push_back(it->second);
    }

  const long long njobs = static_cast<long long>(jobs.size());
#pragma omp parallel for schedule(dynamic) if (opt.parallel)
  for (long long q = 0; q < njobs; ++q) {
    auto& job = jobs[static_cast<std::size_t>(q)];
    try {
      const Block& b = *job.block;
      auto sub = induced_subgraph(g, b.B);
      NodeSet targets(sub.to_original.size());
      for (Node v : b.C.members()) targets.insert(sub.to_local[static_cast<std::size_t>(v)]);
      std::optional<TreeDecomposition> td;
      if (opt.block_td) td = opt.block_td(b.i, b.j, sub.graph);
      if (!td) td = heuristic_td(sub.graph);
      job.width = td->width();
      auto r = solve_dp(sub.graph, targets, ell, to_nice(sub.graph, *td), opt.dp);
      for (Node v : r.witness.members()) job.solution.insert(sub.to_original[static_cast<std::size_t>(v)]);
    } catch (...) {
      job.error = std::current_exception();
    }
  }
  for (const auto& job : jobs)
    if (job.error) std::rethrow_exception(job.error);

  int best = -1;
  std::vector<NodeSet> unions;
  for (int i = 1; i <= k; ++i) {
    NodeSet u(static_cast<std::size_t>(n));
    for (int q : job_of[static_cast<std::size_t>(i - 1)]) u |= jobs[static_cast<std::size_t>(q)].solution;
    res.shift_sizes.push_back(static_cast<int>(u.size()));
    if (best < 0 || u.size() < unions[static_cast<std::size_t>(best - 1)].size()) best = i;
    unions.push_back(std::move(u));
  }
  res.shift = best;
  res.solution = unions[static_cast<std::size_t>(best - 1)];
  const int width_hint = 3 * (k + 4 * ell);
  for (std::size_t q = 0; q < shifts[static_cast<std::size_t>(best - 1)].size(); ++q) {
    const auto& b = shifts[static_cast<std::size_t>(best - 1)][q];
    const auto& job = jobs[static_cast<std::size_t>(job_of[static_cast<std::size_t>(best - 1)][q])];
    res.blocks.push_back(BlockReport{b.i, b.j, static_cast<int>(b.B.size()), static_cast<int>(b.C.size()),
                                     static_cast<int>(job.solution.size()), job.width});
  }
  for (const auto& job : jobs)
    if (job.width > width_hint)
      res.warnings.push_back("block (" + std::to_string(job.block->i) + "," + std::to_string(job.block->j) +
                             ") decomposition width " + std::to_string(job.width) + " exceeds " +
                             std::to_string(width_hint));
  if (!is_feasible(g, res.solution, NodeSet::all(static_cast<std::size_t>(n)), ell))
    throw std::logic_error("internal error: shifted union is not feasible");
  return res;
}

}  // namespace lpds
