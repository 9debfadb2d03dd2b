#include "lpds/ip_model.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lpds/propagation.hpp"

namespace lpds {

std::string x_name(Node v) { return "x_v" + std::to_string(v + 1); }
std::string z_name(int t, Node v) { return "z_t" + std::to_string(t) + "_v" + std::to_string(v + 1); }
std::string y_name(int t, Node u, Node v) {
  return "Y_t" + std::to_string(t) + "_" + std::to_string(u + 1) + "_to_" + std::to_string(v + 1);
}

int IpModel::var(const std::string& name) const {
  auto it = index.find(name);
  if (it == index.end()) throw std::out_of_range("unknown variable " + name);
  return it->second;
}

std::map<int, int> IpModel::family_counts() const {
  std::map<int, int> c;
  for (const auto& r : rows) ++c[r.family];
  return c;
}

namespace {

struct Key {
  std::string label;
  int value;
};

class Builder {
 public:
  explicit Builder(std::string kind, int n, int rounds) {
    m_.kind = std::move(kind);
    m_.n = n;
    m_.rounds = rounds;
  }

  void declare(const std::string& name) { declared_.push_back(name); }

  void row(int family, std::vector<Key> keys, std::vector<std::pair<std::string, std::int64_t>> terms, Sense sense,
           std::int64_t rhs) {
    Pending p;
    p.row.family = family;
    p.row.name = "f" + std::to_string(family);
    p.row.tag = "(" + std::to_string(family) + ")";
    if (!keys.empty()) {
      p.row.tag += "[";
      for (std::size_t q = 0; q < keys.size(); ++q) {
        p.row.name += "_" + keys[q].label + std::to_string(keys[q].value);
        p.row.tag += (q ? "," : "") + keys[q].label + "=" + std::to_string(keys[q].value);
      }
      p.row.tag += "]";
    }
    p.row.sense = sense;
    p.row.rhs = rhs;
    p.terms = std::move(terms);
    pending_.push_back(std::move(p));
  }

  IpModel finish() {
    std::sort(declared_.begin(), declared_.end());
    declared_.erase(std::unique(declared_.begin(), declared_.end()), declared_.end());
    m_.vars = declared_;
    for (std::size_t q = 0; q < m_.vars.size(); ++q) m_.index.emplace(m_.vars[q], static_cast<int>(q));
    for (Node v = 0; v < m_.n; ++v) m_.objective.push_back(m_.var(x_name(v)));
    std::stable_sort(pending_.begin(), pending_.end(),
                     [](const Pending& a, const Pending& b) { return a.row.family < b.row.family; });
    for (auto& p : pending_) {
      std::map<int, std::int64_t> merged;
      for (const auto& [name, coef] : p.terms) merged[m_.var(name)] += coef;
      for (auto [v, c] : merged)
        if (c != 0) p.row.terms.emplace_back(v, c);
      m_.rows.push_back(std::move(p.row));
    }
    return std::move(m_);
  }

 private:
  struct Pending {
    IpRow row;
    std::vector<std::pair<std::string, std::int64_t>> terms;
  };
  IpModel m_;
  std::vector<std::string> declared_;
  std::vector<Pending> pending_;
};

int one_based(Node v) { return v + 1; }

}  // namespace

IpModel build_ip_ell(const Graph& g, int ell, bool with_valid_ineqs) {
  if (ell < 1) throw std::invalid_argument("round count must be at least 1");
  const int n = g.num_nodes();
  Builder b("ell", n, ell);
  for (Node v = 0; v < n; ++v) {
    b.declare(x_name(v));
    for (int t = 1; t <= ell; ++t) b.declare(z_name(t, v));
    for (Node u : g.neighbors(v))
      for (int t = 1; t <= ell; ++t) b.declare(y_name(t, v, u));
  }
  for (Node v = 0; v < n; ++v) b.row(1, {{"v", one_based(v)}}, {{z_name(ell, v), 1}}, Sense::GreaterEq, 1);
  for (Node v = 0; v < n; ++v) {
    std::vector<std::pair<std::string, std::int64_t>> t{{z_name(1, v), 1}, {x_name(v), -1}};
    for (Node u : g.neighbors(v)) t.emplace_back(x_name(u), -1);
    b.row(2, {{"v", one_based(v)}}, std::move(t), Sense::LessEq, 0);
  }
  for (Node u = 0; u < n; ++u)
    for (Node v : g.neighbors(u)) {
      std::vector<Node> ws{u};
      for (Node w : g.neighbors(u))
        if (w != v) ws.push_back(w);
      std::sort(ws.begin(), ws.end());
      for (Node w : ws)
        for (int t = 1; t <= ell; ++t)
          b.row(3, {{"u", one_based(u)}, {"v", one_based(v)}, {"w", one_based(w)}, {"t", t}},
                {{y_name(t, u, v), 1}, {z_name(t, w), -1}}, Sense::LessEq, 0);
    }
  for (Node v = 0; v < n; ++v)
    for (int t = 2; t <= ell; ++t) {
      std::vector<std::pair<std::string, std::int64_t>> terms{{z_name(t, v), 1}, {x_name(v), -1}};
      for (Node u : g.neighbors(v)) terms.emplace_back(y_name(t - 1, u, v), -1);
      b.row(4, {{"v", one_based(v)}, {"t", t}}, std::move(terms), Sense::LessEq, 0);
    }
  if (with_valid_ineqs && n > 0) {
    std::vector<std::pair<std::string, std::int64_t>> first;
    for (Node v = 0; v < n; ++v) first.emplace_back(z_name(1, v), 1);
    b.row(6, {}, std::move(first), Sense::GreaterEq, min_degree(g) + 1);
    for (int t = 2; t <= ell; ++t) {
      std::vector<std::pair<std::string, std::int64_t>> terms;
      for (Node v = 0; v < n; ++v) {
        terms.emplace_back(z_name(t, v), 1);
        terms.emplace_back(z_name(t - 1, v), -1);
      }
      b.row(7, {{"t", t}}, std::move(terms), Sense::GreaterEq, 1);
    }
  }
  return b.finish();
}

IpModel build_ip_ordering(const Graph& g, bool with_valid_ineq) {
  const int n = g.num_nodes();
  if (n < 1) throw std::invalid_argument("ordering model needs at least one node");
  Builder b("ordering", n, n);
  for (Node v = 0; v < n; ++v) {
    b.declare(x_name(v));
    for (int t = 1; t <= n; ++t) b.declare(z_name(t, v));
    for (Node u : g.neighbors(v))
      for (int t = 1; t < n; ++t) b.declare(y_name(t, v, u));
  }
  for (Node v = 0; v < n; ++v) {
    std::vector<std::pair<std::string, std::int64_t>> terms;
    for (int t = 1; t <= n; ++t) terms.emplace_back(z_name(t, v), 1);
    b.row(1, {{"v", one_based(v)}}, std::move(terms), Sense::Equal, 1);
  }
  for (int t = 1; t <= n; ++t) {
    std::vector<std::pair<std::string, std::int64_t>> terms;
    for (Node v = 0; v < n; ++v) terms.emplace_back(z_name(t, v), 1);
    b.row(2, {{"t", t}}, std::move(terms), Sense::Equal, 1);
  }
  for (Node u = 0; u < n; ++u)
    for (Node v : g.neighbors(u)) {
      std::vector<Node> ws{u};
      for (Node w : g.neighbors(u))
        if (w != v) ws.push_back(w);
      std::sort(ws.begin(), ws.end());
      for (Node w : ws)
        for (int t = 1; t < n; ++t) {
          std::vector<std::pair<std::string, std::int64_t>> terms{{y_name(t, u, v), 1}, {x_name(u), -1}};
          for (int s = 1; s <= t; ++s) terms.emplace_back(z_name(s, w), -1);
          b.row(3, {{"u", one_based(u)}, {"v", one_based(v)}, {"w", one_based(w)}, {"t", t}}, std::move(terms),
                Sense::LessEq, 0);
        }
    }
  for (Node v = 0; v < n; ++v)
    for (int t = 2; t <= n; ++t) {
      std::vector<std::pair<std::string, std::int64_t>> terms{{z_name(t, v), 1}, {x_name(v), -1}};
      for (Node u : g.neighbors(v)) terms.emplace_back(y_name(t - 1, u, v), -1);
      b.row(4, {{"v", one_based(v)}, {"t", t}}, std::move(terms), Sense::LessEq, 0);
    }
  if (with_valid_ineq)
    for (int t = 1; t < n; ++t) {
      std::vector<std::pair<std::string, std::int64_t>> terms;
      for (auto [u, v] : g.edges()) {
        terms.emplace_back(y_name(t, u, v), 1);
        terms.emplace_back(y_name(t, v, u), 1);
      }
      b.row(6, {{"t", t}}, std::move(terms), Sense::GreaterEq, 1);
    }
  return b.finish();
}

Assignment canonical_assignment(const Graph& g, const NodeSet& s, int ell, bool require_feasible) {
  const int n = g.num_nodes();
  auto trace = propagate(g, s, ell);
  for (Node v = 0; v < n && require_feasible; ++v)
    if (trace.times[static_cast<std::size_t>(v)] > ell)
      throw std::invalid_argument("node " + std::to_string(v + 1) + " is not reached within " + std::to_string(ell) +
                                  " rounds");
  auto in = [&](Node v, int t) { return trace.times[static_cast<std::size_t>(v)] <= t; };
  Assignment a;
  for (Node v = 0; v < n; ++v) {
    a[x_name(v)] = s.contains(v) ? 1 : 0;
    for (int t = 1; t <= ell; ++t) a[z_name(t, v)] = in(v, t) ? 1 : 0;
  }
  for (Node u = 0; u < n; ++u)
    for (Node v : g.neighbors(u))
      for (int t = 1; t <= ell; ++t) {
        bool ready = in(u, t);
        for (Node w : g.neighbors(u))
          if (w != v && !in(w, t)) ready = false;
        a[y_name(t, u, v)] = ready ? 1 : 0;
      }
  return a;
}

std::vector<std::string> check_assignment(const IpModel& model, const Assignment& a) {
  std::vector<Rational> val(model.vars.size());
  for (std::size_t q = 0; q < model.vars.size(); ++q) {
    auto it = a.find(model.vars[q]);
    if (it == a.end()) throw std::invalid_argument("assignment misses variable " + model.vars[q]);
    if (it->second < Rational(0) || it->second > Rational(1))
      throw std::invalid_argument("value of " + model.vars[q] + " lies outside [0, 1]");
    val[q] = it->second;
  }
  std::vector<std::string> bad;
  for (const auto& r : model.rows) {
    Rational lhs = 0;
    for (auto [v, c] : r.terms) lhs += val[static_cast<std::size_t>(v)] * Rational(c);
    // boost::rational == integer recurses under C++20 rewritten comparisons
    const Rational rhs(r.rhs);
    const bool ok = r.sense == Sense::LessEq      ? lhs <= rhs
                    : r.sense == Sense::GreaterEq ? lhs >= rhs
                                                  : lhs == rhs;
    if (!ok) bad.push_back(r.tag);
  }
  return bad;
}

Rational objective_value(const IpModel& model, const Assignment& a) {
  Rational s = 0;
  for (int v : model.objective) {
    auto it = a.find(model.vars[static_cast<std::size_t>(v)]);
    if (it == a.end()) throw std::invalid_argument("assignment misses variable " + model.vars[static_cast<std::size_t>(v)]);
    s += it->second;
  }
  return s;
}

namespace {
long long sum_sq_degree(const Graph& g) {
  long long s = 0;
  for (Node v = 0; v < g.num_nodes(); ++v) s += static_cast<long long>(g.degree(v)) * g.degree(v);
  return s;
}
}  // namespace

std::map<int, long long> expected_counts_ell(const Graph& g, int ell, bool with_valid_ineqs) {
  const long long n = g.num_nodes();
  std::map<int, long long> c{{1, n}, {2, n}, {3, ell * sum_sq_degree(g)}, {4, n * (ell - 1)}};
  if (with_valid_ineqs) {
    c[6] = 1;
    c[7] = ell - 1;
  }
  std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
  return c;
}

std::map<int, long long> expected_counts_ordering(const Graph& g, bool with_valid_ineq) {
  const long long n = g.num_nodes();
  std::map<int, long long> c{{1, n}, {2, n}, {3, (n - 1) * sum_sq_degree(g)}, {4, n * (n - 1)}};
  if (with_valid_ineq) c[6] = n - 1;
  std::erase_if(c, [](const auto& kv) { return kv.second == 0; });
  return c;
}

void emit_lp(std::ostream& out, const IpModel& model, bool relax) {
  auto write_terms = [&](const std::vector<std::pair<int, std::int64_t>>& terms) {
    int on_line = 0;
    bool first = true;
    for (auto [v, c] : terms) {
      if (on_line == 8) {
        out << "\n   ";
        on_line = 0;
      }
      const char* sign = c < 0 ? "-" : "+";
      const std::int64_t mag = c < 0 ? -c : c;
      if (first && c > 0)
        out << ' ';
      else
        out << ' ' << sign << ' ';
      if (mag != 1) out << mag << ' ';
      out << model.vars[static_cast<std::size_t>(v)];
      first = false;
      ++on_line;
    }
    if (terms.empty()) out << " 0 " << (model.vars.empty() ? "" : model.vars.front());
  };
  out << "\\ model " << model.kind << ", n=" << model.n << ", rounds=" << model.rounds << '\n';
  out << "Minimize\n obj:";
  std::vector<std::pair<int, std::int64_t>> obj;
  for (int v : model.objective) obj.emplace_back(v, 1);
  write_terms(obj);
  out << "\nSubject To\n";
  for (const auto& r : model.rows) {
    out << ' ' << r.name << ':';
    write_terms(r.terms);
    out << (r.sense == Sense::LessEq ? " <= " : r.sense == Sense::GreaterEq ? " >= " : " = ") << r.rhs << '\n';
  }
  if (relax) {
    out << "Bounds\n";
    for (const auto& v : model.vars) out << " 0 <= " << v << " <= 1\n";
  } else {
    out << "Binary\n";
    for (const auto& v : model.vars) out << ' ' << v << '\n';
  }
  out << "End\n";
}

std::string emit_lp(const IpModel& model, bool relax) {
  std::ostringstream o;
  emit_lp(o, model, relax);
  return o.str();
}

Rational parse_rational(const std::string& text) {
  auto bad = [&]() { return std::invalid_argument("bad number '" + text + "'"); };
  auto integer = [&](const std::string& s) {
    if (s.empty()) throw bad();
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const long long den = integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    return Rational(integer(text.substr(0, slash)), den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(integer(text));
  std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.empty() || frac.size() > 15 || !std::all_of(frac.begin(), frac.end(), [](char ch) { return ch >= '0' && ch <= '9'; }))
    throw bad();
  const bool negative = !whole.empty() && whole[0] == '-';
  if (negative || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
  long long den = 1;
  for (std::size_t q = 0; q < frac.size(); ++q) den *= 10;
  Rational r((whole.empty() ? 0 : integer(whole)) * den + integer(frac), den);
  return negative ? -r : r;
}

Assignment parse_solution(std::istream& in) {
  Assignment a;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string name, value, extra;
    if (!(ls >> name) || name == "c" || name[0] == '#') continue;
    if (!(ls >> value) || (ls >> extra)) throw ParseError(lineno, "expected '<variable> <value>'");
    try {
      a[name] = parse_rational(value);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return a;
}

}  // namespace lpds
