#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/rational.hpp>

#include "lpds/graph.hpp"

namespace lpds {

using Rational = boost::rational<std::int64_t>;

enum class Sense { LessEq, GreaterEq, Equal };

/// One linear row: sum(coef * var) <sense> rhs, with family id 1..7.
struct IpRow {
  int family = 0;
  std::string name;  // LP-safe, e.g. f3_u2_v5_w1_t3
  std::string tag;   // human form, e.g. (3)[u=2,v=5,w=1,t=3]
  std::vector<std::pair<int, std::int64_t>> terms;  // (variable index, coefficient), sorted by index
  Sense sense = Sense::LessEq;
  std::int64_t rhs = 0;
};

/// Binary program: minimize the sum of the x variables subject to rows.
struct IpModel {
  std::string kind;                // "ell" or "ordering"
  int n = 0;
  int rounds = 0;                  // |T|
  std::vector<std::string> vars;   // sorted lexicographically
  std::unordered_map<std::string, int> index;
  std::vector<int> objective;      // indices of x variables
  std::vector<IpRow> rows;         // grouped by family, then generation order

  int var(const std::string& name) const;
  std::map<int, int> family_counts() const;
};

// Names use 1-based node ids, matching graph files.
std::string x_name(Node v);
std::string z_name(int t, Node v);
std::string y_name(int t, Node u, Node v);

IpModel build_ip_ell(const Graph& g, int ell, bool with_valid_ineqs);
IpModel build_ip_ordering(const Graph& g, bool with_valid_ineq);

using Assignment = std::map<std::string, Rational>;

/// x from s, z^t from npd^t(s), Y^t_{u->v} = [N[u]-v inside npd^t(s) and u in npd^t(s)].
/// Throws std::invalid_argument when s does not reach every node within ell rounds, unless
/// require_feasible is false (then family (1) is simply violated).
Assignment canonical_assignment(const Graph& g, const NodeSet& s, int ell, bool require_feasible = true);

/// Tags of every violated row, evaluated exactly. Throws std::invalid_argument on a
/// missing variable or a value outside [0, 1].
std::vector<std::string> check_assignment(const IpModel& model, const Assignment& a);
Rational objective_value(const IpModel& model, const Assignment& a);

/// Closed-form row counts per family, for cross-checking the builders.
std::map<int, long long> expected_counts_ell(const Graph& g, int ell, bool with_valid_ineqs);
std::map<int, long long> expected_counts_ordering(const Graph& g, bool with_valid_ineq);

/// CPLEX LP text. relax replaces the Binary section with 0 <= v <= 1 bounds.
void emit_lp(std::ostream& out, const IpModel& model, bool relax = false);
std::string emit_lp(const IpModel& model, bool relax = false);

/// "p/q", integers and decimals such as 0.25.
Rational parse_rational(const std::string& text);
/// Lines "<variable> <value>"; blank lines and lines starting with c or # are skipped.
Assignment parse_solution(std::istream& in);

}  // namespace lpds
