#include "lpds/tree_decomposition.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace lpds {

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()) - 1);
  return w;
}

int TreeDecomposition::max_bag_edges(const Graph& g) const {
  int best = 0;
  for (const auto& b : bags) {
    int m = 0;
    for (std::size_t a = 0; a < b.size(); ++a)
      for (std::size_t c = a + 1; c < b.size(); ++c)
        if (g.has_edge(b[a], b[c])) ++m;
    best = std::max(best, m);
  }
  return best;
}

namespace {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[static_cast<std::size_t>(x)] != x) x = p[static_cast<std::size_t>(x)] = p[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

// empty string when the edge list forms a tree on `count` vertices
std::string tree_problem(std::size_t count, const std::vector<Edge>& tree) {
  if (count == 0) return tree.empty() ? "" : "tree edges without bags";
  if (tree.size() != count - 1) return "tree has " + std::to_string(tree.size()) + " edges, expected " + std::to_string(count - 1);
  Dsu d(count);
  for (auto [a, b] : tree) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= count || static_cast<std::size_t>(b) >= count)
      return "tree edge references missing bag";
    if (!d.unite(a, b)) return "tree contains a cycle";
  }
  return "";
}

}  // namespace

std::optional<TdViolation> validate_td(const Graph& g, const TreeDecomposition& td) {
  const int n = g.num_nodes();
  if (td.n != n) return TdViolation{0, -1, {-1, -1}, "decomposition is for " + std::to_string(td.n) + " nodes"};
  if (auto p = tree_problem(td.bags.size(), td.tree); !p.empty()) return TdViolation{0, -1, {-1, -1}, p};

  std::vector<std::vector<int>> occ(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < td.bags.size(); ++i)
    for (Node v : td.bags[i]) {
      if (v < 0 || v >= n) return TdViolation{0, v, {-1, -1}, "bag entry out of range"};
      occ[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));
    }
  for (Node v = 0; v < n; ++v)
    if (occ[static_cast<std::size_t>(v)].empty())
      return TdViolation{1, v, {-1, -1}, "node " + std::to_string(v) + " in no bag"};

  std::vector<NodeSet> bagset;
  for (const auto& b : td.bags) bagset.emplace_back(static_cast<std::size_t>(n), b);
  for (auto [a, b] : g.edges()) {
    bool covered = false;
    for (int i : occ[static_cast<std::size_t>(a)])
      if (bagset[static_cast<std::size_t>(i)].contains(b)) {
        covered = true;
        break;
      }
    if (!covered)
      return TdViolation{2, -1, {a, b},
                         "edge {" + std::to_string(a) + "," + std::to_string(b) + "} in no bag"};
  }

  // occurrence sets connected: |occ| - 1 tree edges inside occ
  for (Node v = 0; v < n; ++v) {
    const auto& o = occ[static_cast<std::size_t>(v)];
    std::size_t inside = 0;
    for (auto [a, b] : td.tree)
      if (bagset[static_cast<std::size_t>(a)].contains(v) && bagset[static_cast<std::size_t>(b)].contains(v)) ++inside;
    if (inside + 1 != o.size())
      return TdViolation{3, v, {-1, -1}, "bags containing node " + std::to_string(v) + " are disconnected"};
  }
  return std::nullopt;
}

TreeDecomposition heuristic_td(const Graph& g) {
  const int n = g.num_nodes();
  TreeDecomposition td;
  td.n = n;
  if (n == 0) return td;

  std::vector<std::set<Node>> adj(static_cast<std::size_t>(n));
  for (auto [a, b] : g.edges()) {
    adj[static_cast<std::size_t>(a)].insert(b);
    adj[static_cast<std::size_t>(b)].insert(a);
  }
  std::vector<bool> gone(static_cast<std::size_t>(n), false);
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  std::vector<Node> order;
  std::vector<std::vector<Node>> raw(static_cast<std::size_t>(n));

  for (int step = 0; step < n; ++step) {
    Node best = -1;
    long best_fill = -1;
    for (Node v = 0; v < n; ++v) {
      if (gone[static_cast<std::size_t>(v)]) continue;
      const auto& nb = adj[static_cast<std::size_t>(v)];
      long fill = 0;
      for (auto i = nb.begin(); i != nb.end(); ++i)
        for (auto j = std::next(i); j != nb.end(); ++j)
          if (!adj[static_cast<std::size_t>(*i)].count(*j)) ++fill;
      if (best < 0 || fill < best_fill) {
        best = v;
        best_fill = fill;
      }
    }
    const auto nb = adj[static_cast<std::size_t>(best)];
    auto& bag = raw[static_cast<std::size_t>(best)];
    bag.assign(nb.begin(), nb.end());
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    for (auto i = nb.begin(); i != nb.end(); ++i) {
      adj[static_cast<std::size_t>(*i)].erase(best);
      for (auto j = std::next(i); j != nb.end(); ++j) {
        adj[static_cast<std::size_t>(*i)].insert(*j);
        adj[static_cast<std::size_t>(*j)].insert(*i);
      }
    }
    gone[static_cast<std::size_t>(best)] = true;
    pos[static_cast<std::size_t>(best)] = step;
    order.push_back(best);
  }

  // parent = earliest-eliminated later neighbor; roots chained in elimination order
  std::vector<std::set<Node>> tadj(static_cast<std::size_t>(n));
  Node prev_root = -1;
  for (Node v : order) {
    Node parent = -1;
    for (Node u : raw[static_cast<std::size_t>(v)])
      if (u != v && (parent < 0 || pos[static_cast<std::size_t>(u)] < pos[static_cast<std::size_t>(parent)])) parent = u;
    if (parent < 0) {
      if (prev_root >= 0) parent = prev_root;
      prev_root = v;
    }
    if (parent >= 0) {
      tadj[static_cast<std::size_t>(v)].insert(parent);
      tadj[static_cast<std::size_t>(parent)].insert(v);
    }
  }

  // contract a into b whenever bag(a) is a subset of a neighboring bag(b)
  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (Node v : order) {
      if (!alive[static_cast<std::size_t>(v)]) continue;
      const auto& bv = raw[static_cast<std::size_t>(v)];
      for (Node u : tadj[static_cast<std::size_t>(v)]) {
        const auto& bu = raw[static_cast<std::size_t>(u)];
        if (!std::includes(bu.begin(), bu.end(), bv.begin(), bv.end())) continue;
        for (Node w : tadj[static_cast<std::size_t>(v)]) {
          tadj[static_cast<std::size_t>(w)].erase(v);
          if (w != u) {
            tadj[static_cast<std::size_t>(w)].insert(u);
            tadj[static_cast<std::size_t>(u)].insert(w);
          }
        }
        tadj[static_cast<std::size_t>(v)].clear();
        alive[static_cast<std::size_t>(v)] = false;
        changed = true;
        break;
      }
    }
  }

  // bag 0 is the last surviving eliminated node
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (alive[static_cast<std::size_t>(*it)]) {
      index[static_cast<std::size_t>(*it)] = static_cast<int>(td.bags.size());
      td.bags.push_back(raw[static_cast<std::size_t>(*it)]);
    }
  for (Node v = 0; v < n; ++v)
    for (Node u : tadj[static_cast<std::size_t>(v)])
      if (alive[static_cast<std::size_t>(v)] && index[static_cast<std::size_t>(v)] < index[static_cast<std::size_t>(u)])
        td.tree.emplace_back(index[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(u)]);
  std::sort(td.tree.begin(), td.tree.end());
  return td;
}

int NiceTreeDecomposition::width() const {
  int w = -1;
  for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()) - 1);
  return w;
}

TreeDecomposition NiceTreeDecomposition::as_td() const {
  TreeDecomposition td;
  td.n = n;
  for (const auto& nd : nodes) td.bags.push_back(nd.bag);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int c : nodes[i].children) td.tree.emplace_back(std::min<int>(c, static_cast<int>(i)), std::max<int>(c, static_cast<int>(i)));
  std::sort(td.tree.begin(), td.tree.end());
  return td;
}

NiceTreeDecomposition to_nice(const Graph& g, const TreeDecomposition& td) {
  if (auto v = validate_td(g, td)) throw std::invalid_argument("invalid tree decomposition: " + v->message);
  NiceTreeDecomposition ntd;
  ntd.n = td.n;
  if (td.bags.empty()) {
    ntd.nodes.push_back(NiceNode{NiceKind::Leaf, {}, -1, {}});
    ntd.root = 0;
    return ntd;
  }
  std::vector<std::vector<int>> tadj(td.bags.size());
  for (auto [a, b] : td.tree) {
    tadj[static_cast<std::size_t>(a)].push_back(b);
    tadj[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& a : tadj) std::sort(a.begin(), a.end());

  auto add = [&](NiceNode nd) {
    ntd.nodes.push_back(std::move(nd));
    return static_cast<int>(ntd.nodes.size()) - 1;
  };
  auto insert_node = [&](int child, Node x) {
    auto bag = ntd.nodes[static_cast<std::size_t>(child)].bag;
    bag.insert(std::upper_bound(bag.begin(), bag.end(), x), x);
    return add(NiceNode{NiceKind::Insert, std::move(bag), x, {child}});
  };
  auto forget_node = [&](int child, Node x) {
    auto bag = ntd.nodes[static_cast<std::size_t>(child)].bag;
    bag.erase(std::find(bag.begin(), bag.end(), x));
    return add(NiceNode{NiceKind::Forget, std::move(bag), x, {child}});
  };

  // explicit stack to stay safe on long decompositions
  struct Frame {
    int bag, parent;
    std::size_t next = 0;
    std::vector<int> done;
  };
  std::vector<Frame> stack{{0, -1, 0, {}}};
  int result = -1;
  while (!stack.empty()) {
    auto& f = stack.back();
    const auto& nbrs = tadj[static_cast<std::size_t>(f.bag)];
    if (result >= 0) {
      f.done.push_back(result);
      result = -1;
    }
    while (f.next < nbrs.size() && nbrs[f.next] == f.parent) ++f.next;
    if (f.next < nbrs.size()) {
      int c = nbrs[f.next++];
      stack.push_back(Frame{c, f.bag, 0, {}});
      continue;
    }
    const auto& X = td.bags[static_cast<std::size_t>(f.bag)];
    int acc = -1;
    if (f.done.empty()) {
      acc = add(NiceNode{NiceKind::Leaf, X.empty() ? std::vector<Node>{} : std::vector<Node>{X.front()}, -1, {}});
      for (std::size_t i = 1; i < X.size(); ++i) acc = insert_node(acc, X[i]);
    } else {
      for (int r : f.done) {
        auto cb = ntd.nodes[static_cast<std::size_t>(r)].bag;
        for (Node x : cb)
          if (!std::binary_search(X.begin(), X.end(), x)) r = forget_node(r, x);
        for (Node x : X)
          if (!std::binary_search(cb.begin(), cb.end(), x)) r = insert_node(r, x);
        acc = acc < 0 ? r : add(NiceNode{NiceKind::Join, X, -1, {acc, r}});
      }
    }
    result = acc;
    stack.pop_back();
  }
  ntd.root = result;
  return ntd;
}

std::optional<std::string> validate_nice(const Graph& g, const NiceTreeDecomposition& ntd) {
  if (ntd.nodes.empty() || ntd.root != static_cast<int>(ntd.nodes.size()) - 1) return "root must be the last node";
  std::vector<int> parents(ntd.nodes.size(), 0);
  for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
    const auto& nd = ntd.nodes[i];
    if (!std::is_sorted(nd.bag.begin(), nd.bag.end())) return "unsorted bag at " + std::to_string(i);
    for (int c : nd.children) {
      if (c < 0 || c >= static_cast<int>(i)) return "child index not below parent at " + std::to_string(i);
      ++parents[static_cast<std::size_t>(c)];
    }
    auto child_bag = [&](std::size_t k) -> const std::vector<Node>& { return ntd.nodes[static_cast<std::size_t>(nd.children[k])].bag; };
    switch (nd.kind) {
      case NiceKind::Leaf:
        if (!nd.children.empty() || nd.bag.size() > 1) return "bad leaf at " + std::to_string(i);
        break;
      case NiceKind::Insert: {
        if (nd.children.size() != 1) return "insert needs one child at " + std::to_string(i);
        auto b = child_bag(0);
        b.insert(std::upper_bound(b.begin(), b.end(), nd.vertex), nd.vertex);
        if (std::binary_search(child_bag(0).begin(), child_bag(0).end(), nd.vertex) || b != nd.bag)
          return "bad insert at " + std::to_string(i);
        break;
      }
      case NiceKind::Forget: {
        if (nd.children.size() != 1) return "forget needs one child at " + std::to_string(i);
        auto b = nd.bag;
        b.insert(std::upper_bound(b.begin(), b.end(), nd.vertex), nd.vertex);
        if (std::binary_search(nd.bag.begin(), nd.bag.end(), nd.vertex) || b != child_bag(0))
          return "bad forget at " + std::to_string(i);
        break;
      }
      case NiceKind::Join:
        if (nd.children.size() != 2 || child_bag(0) != nd.bag || child_bag(1) != nd.bag)
          return "bad join at " + std::to_string(i);
        break;
    }
  }
  for (std::size_t i = 0; i + 1 < parents.size(); ++i)
    if (parents[i] != 1) return "node " + std::to_string(i) + " does not have exactly one parent";
  if (auto v = validate_td(g, ntd.as_td())) return v->message;
  return std::nullopt;
}

TreeDecomposition canonical(TreeDecomposition td) {
  for (auto& b : td.bags) std::sort(b.begin(), b.end());
  for (auto& e : td.tree)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(td.tree.begin(), td.tree.end());
  return td;
}

TreeDecomposition parse_td(std::istream& in) {
  std::string line;
  int lineno = 0;
  long nbags = -1, declared = 0, n = 0;
  TreeDecomposition td;
  std::vector<bool> seen;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    if (tok == "s") {
      std::string kind;
      if (nbags >= 0) throw ParseError(lineno, "second header line");
      if (!(ls >> kind >> nbags >> declared >> n) || kind != "td" || nbags < 0 || declared < 0 || n < 0)
        throw ParseError(lineno, "malformed header, expected 's td <bags> <width+1> <n>'");
      td.n = static_cast<int>(n);
      td.bags.resize(static_cast<std::size_t>(nbags));
      seen.assign(static_cast<std::size_t>(nbags), false);
    } else if (nbags < 0) {
      throw ParseError(lineno, "content before header");
    } else if (tok == "b") {
      long i = 0;
      if (!(ls >> i)) throw ParseError(lineno, "malformed bag line");
      if (i < 1 || i > nbags) throw ParseError(lineno, "bag index out of range");
      if (seen[static_cast<std::size_t>(i - 1)]) throw ParseError(lineno, "bag " + std::to_string(i) + " listed twice");
      seen[static_cast<std::size_t>(i - 1)] = true;
      auto& bag = td.bags[static_cast<std::size_t>(i - 1)];
      long v = 0;
      while (ls >> v) {
        if (v < 1 || v > n) throw ParseError(lineno, "node id out of range 1.." + std::to_string(n));
        bag.push_back(static_cast<Node>(v - 1));
      }
      if (!ls.eof()) throw ParseError(lineno, "malformed bag entry");
      std::sort(bag.begin(), bag.end());
      if (std::adjacent_find(bag.begin(), bag.end()) != bag.end()) throw ParseError(lineno, "repeated node in bag");
      if (static_cast<long>(bag.size()) > declared) throw ParseError(lineno, "bag larger than declared width+1");
    } else {
      long a = 0, b = 0;
      try {
        std::size_t used = 0;
        a = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw ParseError(lineno, "unknown line '" + tok + "'");
      }
      if (!(ls >> b)) throw ParseError(lineno, "malformed tree edge");
      if (a < 1 || b < 1 || a > nbags || b > nbags) throw ParseError(lineno, "bag index out of range");
      td.tree.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
    }
  }
  if (nbags < 0) throw ParseError(lineno, "missing header");
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw ParseError(lineno, "bag " + std::to_string(i + 1) + " missing");
  if (auto p = tree_problem(td.bags.size(), td.tree); !p.empty()) throw ParseError(lineno, p);
  return canonical(std::move(td));
}

TreeDecomposition parse_td(const std::string& text) {
  std::istringstream in(text);
  return parse_td(in);
}

void emit_td(std::ostream& out, const TreeDecomposition& raw) {
  auto td = canonical(raw);
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << td.n << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Node v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (auto [a, b] : td.tree) out << a + 1 << ' ' << b + 1 << '\n';
}

std::string emit_td(const TreeDecomposition& td) {
  std::ostringstream out;
  emit_td(out, td);
  return out.str();
}

}  // namespace lpds
