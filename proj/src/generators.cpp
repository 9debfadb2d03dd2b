#include "lpds/generators.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lpds {

Graph spider(int m, int k) {
  if (m < 1 || k < 1) throw std::invalid_argument("spider needs m >= 1 and k >= 1");
  std::vector<Edge> e;
  for (int p = 0; p < m; ++p) {
    const Node first = 1 + p * k;
    e.emplace_back(0, first);
    for (int j = 1; j < k; ++j) e.emplace_back(first + j - 1, first + j);
  }
  return Graph(k * m + 1, e);
}

Graph pendant_cycle(int m) {
  if (m < 3) throw std::invalid_argument("pendant cycle needs m >= 3");
  std::vector<Edge> e;
  for (int i = 0; i < m; ++i) {
    e.emplace_back(i, (i + 1) % m);
    e.emplace_back(i, m + i);
  }
  return Graph(2 * m, e);
}

Graph attach_paths(const Graph& g, int ell) {
  if (ell < 1) throw std::invalid_argument("round count must be at least 1");
  if (ell == 1) return g;
  const int n = g.num_nodes();
  std::vector<Edge> e = g.edges();
  for (Node v = 0; v < n; ++v) {
    Node prev = v;
    for (int s = 0; s < ell - 1; ++s) {
      const Node x = n + v * (ell - 1) + s;
      e.emplace_back(prev, x);
      prev = x;
    }
  }
  return Graph(n * ell, e);
}

Graph random_graph(int n, double p, std::uint64_t seed) {
  if (n < 0 || p < 0 || p > 1) throw std::invalid_argument("random graph needs n >= 0 and 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return Graph(n, e);
}

Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs positive dimensions");
  std::vector<Edge> e;
  for (int y = 0; y < rows; ++y)
    for (int x = 0; x < cols; ++x) {
      const Node v = y * cols + x;
      if (x + 1 < cols) e.emplace_back(v, v + 1);
      if (y + 1 < rows) e.emplace_back(v, v + cols);
    }
  return Graph(rows * cols, e);
}

std::vector<std::pair<int, int>> MinRepInstance::super_edges() const {
  std::set<std::pair<int, int>> s;
  for (auto [a, b] : edges) s.emplace(group_a(a), group_b(b));
  return {s.begin(), s.end()};
}

void MinRepInstance::validate() const {
  if (q_a < 1 || m_a < 1 || q_b < 1 || m_b < 1) throw std::invalid_argument("group counts and sizes must be positive");
  std::set<std::pair<int, int>> seen;
  for (auto [a, b] : edges) {
    if (a < 0 || a >= num_a() || b < 0 || b >= num_b())
      throw std::invalid_argument("edge (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ") out of range");
    if (!seen.emplace(a, b).second)
      throw std::invalid_argument("repeated edge (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");
  }
}

MinRepInstance parse_minrep(std::istream& in) {
  MinRepInstance inst;
  std::string line;
  int lineno = 0;
  long declared = -1;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag == "c") continue;
    if (tag == "p") {
      std::string kind;
      if (header) throw ParseError(lineno, "second header line");
      if (!(ls >> kind >> inst.q_a >> inst.m_a >> inst.q_b >> inst.m_b >> declared) || kind != "minrep" ||
          inst.q_a < 1 || inst.m_a < 1 || inst.q_b < 1 || inst.m_b < 1 || declared < 0)
        throw ParseError(lineno, "malformed header, expected 'p minrep <q_A> <m_A> <q_B> <m_B> <edges>'");
      header = true;
    } else if (tag == "e") {
      if (!header) throw ParseError(lineno, "edge before header");
      long a = 0, b = 0;
      if (!(ls >> a >> b)) throw ParseError(lineno, "malformed edge line");
      if (a < 1 || a > inst.num_a()) throw ParseError(lineno, "A id out of range 1.." + std::to_string(inst.num_a()));
      if (b < 1 || b > inst.num_b()) throw ParseError(lineno, "B id out of range 1.." + std::to_string(inst.num_b()));
      const std::pair<int, int> e{static_cast<int>(a - 1), static_cast<int>(b - 1)};
      if (std::find(inst.edges.begin(), inst.edges.end(), e) != inst.edges.end())
        throw ParseError(lineno, "repeated edge");
      inst.edges.push_back(e);
    } else {
      throw ParseError(lineno, "unknown line type '" + tag + "'");
    }
  }
  if (!header) throw ParseError(lineno, "missing header");
  if (static_cast<long>(inst.edges.size()) != declared)
    throw ParseError(lineno, "header declares " + std::to_string(declared) + " edges, found " +
                                 std::to_string(inst.edges.size()));
  return inst;
}

void emit_minrep(std::ostream& out, const MinRepInstance& inst) {
  out << "p minrep " << inst.q_a << ' ' << inst.m_a << ' ' << inst.q_b << ' ' << inst.m_b << ' ' << inst.edges.size()
      << '\n';
  for (auto [a, b] : inst.edges) out << "e " << a + 1 << ' ' << b + 1 << '\n';
}

bool minrep_cover_check(const MinRepInstance& inst, const NodeSet& pick) {
  if (pick.universe() != static_cast<std::size_t>(inst.num_a() + inst.num_b()))
    throw std::invalid_argument("pick universe must be |A| + |B|");
  std::set<std::pair<int, int>> covered;
  for (auto [a, b] : inst.edges)
    if (pick.contains(a) && pick.contains(inst.num_a() + b)) covered.emplace(inst.group_a(a), inst.group_b(b));
  return covered.size() == inst.super_edges().size();
}

std::pair<int, NodeSet> minrep_optimum(const MinRepInstance& inst) {
  inst.validate();
  const int n = inst.num_a() + inst.num_b();
  if (n > 30) throw std::invalid_argument("exhaustive MinRep search limited to 30 nodes");
  for (int k = 0; k <= n; ++k) {
    std::vector<bool> sel(static_cast<std::size_t>(n), false);
    std::fill(sel.begin(), sel.begin() + k, true);
    do {
      NodeSet pick(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v)
        if (sel[static_cast<std::size_t>(v)]) pick.insert(v);
      if (minrep_cover_check(inst, pick)) return {k, pick};
    } while (std::prev_permutation(sel.begin(), sel.end()));
  }
  throw std::logic_error("no MinRep cover found");
}

std::vector<Node> GadgetCopy::nodes() const {
  std::vector<Node> out{center};
  for (std::size_t q = 0; q < u.size(); ++q) {
    out.push_back(u[q]);
    out.push_back(v[q]);
    out.push_back(d[q]);
  }
  for (const auto& arm : arms) {
    out.push_back(arm.alpha);
    out.push_back(arm.beta);
    out.push_back(arm.gamma);
  }
  return out;
}

MinRepReduction minrep_to_pds(const MinRepInstance& inst) {
  inst.validate();
  MinRepReduction red;
  const int na = inst.num_a(), nb = inst.num_b();
  std::vector<Edge> e;
  std::vector<std::string> roles;
  for (int a = 0; a < na; ++a) roles.push_back("a" + std::to_string(a + 1) + " in A" + std::to_string(inst.group_a(a) + 1));
  for (int b = 0; b < nb; ++b) roles.push_back("b" + std::to_string(b + 1) + " in B" + std::to_string(inst.group_b(b) + 1));
  auto fresh = [&](std::string role) {
    roles.push_back(std::move(role));
    return static_cast<Node>(roles.size() - 1);
  };
  red.master = fresh("w*");
  for (int s = 0; s < 3; ++s) {
    red.leaves[static_cast<std::size_t>(s)] = fresh("w*_" + std::to_string(s + 1));
    e.emplace_back(red.master, red.leaves[static_cast<std::size_t>(s)]);
  }
  for (Node x = 0; x < na + nb; ++x) e.emplace_back(red.master, x);
  // original edges all vanish: each lies in exactly one E_ij and is replaced by gadgets

  for (auto [gi, gj] : inst.super_edges()) {
    std::vector<std::pair<int, int>> eij;
    for (auto [a, b] : inst.edges)
      if (inst.group_a(a) == gi && inst.group_b(b) == gj) eij.emplace_back(a, b);
    for (int c = 0; c < red.lambda; ++c) {
      GadgetCopy cp;
      cp.i = gi;
      cp.j = gj;
      cp.copy = c;
      const std::string tag = "D(" + std::to_string(gi + 1) + "," + std::to_string(gj + 1) + ")#" + std::to_string(c + 1) + ".";
      cp.center = fresh(tag + "center");
      for (std::size_t q = 0; q < eij.size(); ++q) {
        const std::string qs = std::to_string(q + 1);
        const Node a = eij[q].first, b = na + eij[q].second;
        const Node u = fresh(tag + "u" + qs), v = fresh(tag + "v" + qs), d = fresh(tag + "d" + qs);
        cp.a.push_back(a);
        cp.b.push_back(b);
        cp.u.push_back(u);
        cp.v.push_back(v);
        cp.d.push_back(d);
        e.emplace_back(a, u);
        e.emplace_back(b, v);
        e.emplace_back(u, d);
        e.emplace_back(v, d);
        e.emplace_back(d, cp.center);
        e.emplace_back(d, red.master);
      }
      for (std::size_t q = 0; q < eij.size(); ++q)
        for (Node target : {cp.u[q], cp.v[q]}) {
          const std::string name = roles[static_cast<std::size_t>(target)].substr(tag.size());
          GadgetArm arm;
          arm.target = target;
          arm.alpha = fresh(tag + "alpha(" + name + ")");
          arm.beta = fresh(tag + "beta(" + name + ")");
          arm.gamma = fresh(tag + "gamma(" + name + ")");
          e.emplace_back(cp.center, arm.alpha);
          e.emplace_back(arm.alpha, arm.beta);
          e.emplace_back(arm.beta, arm.gamma);
          e.emplace_back(arm.gamma, cp.center);
          e.emplace_back(arm.alpha, target);
          e.emplace_back(arm.alpha, red.master);
          e.emplace_back(arm.gamma, red.master);
          cp.arms.push_back(arm);
        }
      red.copies.push_back(std::move(cp));
    }
  }
  red.graph = Graph(static_cast<int>(roles.size()), e);
  red.roles = std::move(roles);
  const long long bound = 4LL + na + nb + 10LL * red.lambda * static_cast<long long>(inst.edges.size());
  if (red.graph.num_nodes() > bound) throw std::logic_error("reduction exceeds its node bound");
  return red;
}

}  // namespace lpds
