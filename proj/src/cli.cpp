#include "lpds/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "lpds/brute_force.hpp"
#include "lpds/dp_solver.hpp"
#include "lpds/generators.hpp"
#include "lpds/ip_model.hpp"
#include "lpds/planar_ptas.hpp"
#include "lpds/propagation.hpp"
#include "lpds/timed_orientation.hpp"
#include "lpds/tree_decomposition.hpp"

namespace lpds {

namespace {

using json = nlohmann::ordered_json;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void usage(const std::string& msg) { throw Failure{2, msg}; }

std::string source_name(const std::string& path) { return path.empty() || path == "-" ? "<stdin>" : path; }

std::string slurp(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) usage(path + ": cannot open file");
    buf << f.rdbuf();
  }
  return buf.str();
}

// Runs a parser on a file and prefixes any error with the file name.
template <class F>
auto parse_from(const std::string& path, std::istream& in, F&& parse) {
  const std::string text = slurp(path, in);
  std::istringstream s(text);
  try {
    return parse(s);
  } catch (const ParseError& e) {
    usage(source_name(path) + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    usage(source_name(path) + ": " + e.what());
  }
}

GraphFile load_graph(const std::string& path, std::istream& in) {
  return parse_from(path, in, [](std::istream& s) { return parse_graph_file(s); });
}

NodeSet load_nodes(const std::string& source, int n, std::istream& in) {
  if (source == "all") return NodeSet::all(static_cast<std::size_t>(n));
  const std::string text = slurp(source, in);
  try {
    return parse_node_list(text, n);
  } catch (const ParseError& e) {
    usage(source_name(source) + ": " + e.what());
  }
}

int resolve_ell(const Graph& g, int ell) {
  if (ell == 0) return full_rounds(g);
  if (ell < 1) usage("--ell must be at least 1");
  return ell;
}

void print_nodes(std::ostream& out, const NodeSet& s) {
  for (Node v : s.members()) out << v + 1 << '\n';
}

json node_array(const NodeSet& s) {
  json a = json::array();
  for (Node v : s.members()) a.push_back(v + 1);
  return a;
}

void verify_witness(const Graph& g, const NodeSet& w, const NodeSet& targets, int ell) {
  if (!is_feasible(g, w, targets, ell)) throw std::logic_error("internal error: witness failed re-verification");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct SolveArgs {
  std::string graph, targets = "all", method = "dp", td, td_dir, eps = "1", rotation;
  int ell = 0;
  int size_cap = -1;
  std::size_t max_states = 0;
  bool json = false, serial = false;
};

int cmd_solve(const SolveArgs& a, std::istream& in, std::ostream& out, std::ostream& err) {
  const GraphFile gf = load_graph(a.graph, in);
  const Graph& g = gf.graph;
  const int n = g.num_nodes();
  const int ell = resolve_ell(g, a.ell);
  const NodeSet targets = load_nodes(a.targets, n, in);
  const auto t0 = std::chrono::steady_clock::now();
  json j;
  j["method"] = a.method;
  j["n"] = n;
  j["ell"] = ell;

  if (a.method == "bf") {
    BfOptions o;
    if (a.size_cap >= 0) o.size_cap = a.size_cap;
    o.allow_large = a.size_cap >= 0;
    const BfResult r = a.serial ? solve_bf(g, targets, ell, o) : solve_bf_parallel(g, targets, ell, o);
    if (r.exceeded) {
      if (a.json) {
        j["exceeded"] = a.size_cap;
        out << j.dump(2) << '\n';
      } else {
        out << "exceeded " << a.size_cap << '\n';
      }
      return 1;
    }
    verify_witness(g, r.witness, targets, ell);
    if (a.json) {
      j["opt"] = r.opt;
      j["witness"] = node_array(r.witness);
      j["seconds"] = seconds_since(t0);
      out << j.dump(2) << '\n';
    } else {
      out << "opt " << r.opt << '\n';
      print_nodes(out, r.witness);
    }
    return 0;
  }

  if (a.method == "dp") {
    DpOptions o;
    o.max_states = a.max_states;
    DpResult r;
    if (!a.td.empty()) {
      const TreeDecomposition td = parse_from(a.td, in, [](std::istream& s) { return parse_td(s); });
      if (auto bad = validate_td(g, td)) usage(a.td + ": " + bad->message);
      r = solve_dp(g, targets, ell, to_nice(g, td), o);
    } else {
      r = solve_dp(g, targets, ell, o);
    }
    verify_witness(g, r.witness, targets, ell);
    if (a.json) {
      j["opt"] = r.opt;
      j["witness"] = node_array(r.witness);
      j["seconds"] = seconds_since(t0);
      j["stats"] = {{"width", r.stats.width},
                    {"nice_nodes", r.stats.nice_nodes},
                    {"max_table", r.stats.max_table},
                    {"total_states", r.stats.total_states}};
      out << j.dump(2) << '\n';
    } else {
      out << "opt " << r.opt << '\n';
      print_nodes(out, r.witness);
    }
    return 0;
  }

  if (a.method == "ptas") {
    if (a.targets != "all") usage("--method ptas covers every node; --targets is not supported");
    LevelAssignment levels;
    if (!a.rotation.empty()) {
      const RotationSystem rs =
          parse_from(a.rotation, in, [n](std::istream& s) { return parse_rotation(s, n); });
      levels = compute_levels(g, rs);
    } else if (!gf.levels.empty()) {
      levels.level = gf.levels;
    } else {
      usage(source_name(a.graph) + ": no level lines; supply them or pass --rotation");
    }
    Ratio eps;
    try {
      eps = parse_ratio(a.eps);
    } catch (const std::invalid_argument& e) {
      usage(std::string("--eps: ") + e.what());
    }
    PtasOptions o;
    o.parallel = !a.serial;
    o.dp.max_states = a.max_states;
    if (!a.td_dir.empty()) {
      const std::string dir = a.td_dir;
      o.block_td = [dir](int i, int jj, const Graph& sub) -> std::optional<TreeDecomposition> {
        const auto path = std::filesystem::path(dir) / ("block_" + std::to_string(i) + "_" + std::to_string(jj) + ".td");
        std::ifstream f(path);
        if (!f) return std::nullopt;
        TreeDecomposition td;
        try {
          td = parse_td(f);
        } catch (const ParseError& e) {
          throw std::invalid_argument(path.string() + ": " + e.what());
        }
        if (auto bad = validate_td(sub, td)) throw std::invalid_argument(path.string() + ": " + bad->message);
        return td;
      };
    }
    const PtasResult r = ptas(g, levels, ell, eps, o);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    if (a.json) {
      j["k"] = r.k;
      j["shift"] = r.shift;
      j["size"] = r.solution.size();
      j["shift_sizes"] = r.shift_sizes;
      json blocks = json::array();
      for (const auto& b : r.blocks)
        blocks.push_back({{"j", b.j}, {"b_size", b.b_size}, {"c_size", b.c_size}, {"solution", b.solution}, {"width", b.width}});
      j["blocks"] = blocks;
      j["witness"] = node_array(r.solution);
      j["seconds"] = seconds_since(t0);
      out << j.dump(2) << '\n';
    } else {
      out << "k " << r.k << '\n' << "shift " << r.shift << '\n';
      for (const auto& b : r.blocks)
        out << "block " << b.j << " B " << b.b_size << " C " << b.c_size << " solution " << b.solution << " width "
            << b.width << '\n';
      out << "size " << r.solution.size() << '\n';
      print_nodes(out, r.solution);
    }
    return 0;
  }
  usage("unknown method '" + a.method + "' (expected bf, dp or ptas)");
}

struct ClosureArgs {
  std::string graph, set, targets;
  int ell = 0;
  bool json = false;
};

int cmd_closure(const ClosureArgs& a, std::istream& in, std::ostream& out) {
  const Graph g = load_graph(a.graph, in).graph;
  const int ell = resolve_ell(g, a.ell);
  const NodeSet s = load_nodes(a.set, g.num_nodes(), in);
  const PropagationTrace tr = propagate(g, s, ell);
  bool feasible = true;
  if (!a.targets.empty()) feasible = is_feasible(g, s, load_nodes(a.targets, g.num_nodes(), in), ell);
  if (a.json) {
    json j;
    j["ell"] = ell;
    json times = json::array();
    for (int t : tr.times) times.push_back(t == kInf ? json("inf") : json(t));
    j["times"] = times;
    if (!a.targets.empty()) j["feasible"] = feasible;
    out << j.dump(2) << '\n';
  } else {
    for (Node v = 0; v < g.num_nodes(); ++v) out << v + 1 << ' ' << format_time(tr.times[static_cast<std::size_t>(v)]) << '\n';
  }
  return feasible ? 0 : 1;
}

struct OrientArgs {
  std::string graph, orientation, targets = "all";
  int ell = 0;
};

int cmd_verify(const OrientArgs& a, std::istream& in, std::ostream& out) {
  const Graph g = load_graph(a.graph, in).graph;
  const int ell = resolve_ell(g, a.ell);
  const int n = g.num_nodes();
  const TimedOrientation to =
      parse_from(a.orientation, in, [n, ell](std::istream& s) { return parse_orientation(s, n, ell); });
  const NodeSet targets = load_nodes(a.targets, n, in);
  std::optional<OrientationViolation> bad;
  try {
    bad = validate(g, to, targets);
  } catch (const std::invalid_argument& e) {
    usage(a.orientation + ": " + e.what());
  }
  if (bad) {
    out << "violation P" << bad->property << ": " << bad->message << '\n';
    return 1;
  }
  out << "ok\norigin";
  for (Node v : origin(to).members()) out << ' ' << v + 1;
  out << '\n';
  return 0;
}

struct IpArgs {
  std::string model, graph, check;
  int ell = 0;
  bool valid = false, relax = false;
};

int cmd_ip(const IpArgs& a, std::istream& in, std::ostream& out) {
  const Graph g = load_graph(a.graph, in).graph;
  IpModel m;
  if (a.model == "ell")
    m = build_ip_ell(g, resolve_ell(g, a.ell), a.valid);
  else if (a.model == "ordering")
    m = build_ip_ordering(g, a.valid);
  else
    usage("unknown model '" + a.model + "' (expected ell or ordering)");
  if (a.check.empty()) {
    emit_lp(out, m, a.relax);
    return 0;
  }
  const Assignment asg = parse_from(a.check, in, [](std::istream& s) { return parse_solution(s); });
  std::vector<std::string> bad;
  try {
    bad = check_assignment(m, asg);
  } catch (const std::invalid_argument& e) {
    usage(a.check + ": " + e.what());
  }
  for (const auto& tag : bad) out << "violated " << tag << '\n';
  const Rational obj = objective_value(m, asg);
  out << (bad.empty() ? "ok" : "infeasible") << " objective " << obj.numerator();
  if (obj.denominator() != 1) out << '/' << obj.denominator();
  out << '\n';
  return bad.empty() ? 0 : 1;
}

struct TdArgs {
  std::string graph, td;
  bool nice = false;
};

int cmd_td(const TdArgs& a, std::istream& in, std::ostream& out) {
  const Graph g = load_graph(a.graph, in).graph;
  TreeDecomposition td;
  if (a.td.empty()) {
    td = heuristic_td(g);
    if (!a.nice) {
      emit_td(out, td);
      return 0;
    }
  } else {
    td = parse_from(a.td, in, [](std::istream& s) { return parse_td(s); });
    if (auto bad = validate_td(g, td)) {
      out << "violation property " << bad->property << ": " << bad->message << '\n';
      return 1;
    }
  }
  out << "ok width " << td.width() << " bags " << td.bags.size() << " max-bag-edges " << td.max_bag_edges(g) << '\n';
  if (a.nice) {
    const NiceTreeDecomposition ntd = to_nice(g, td);
    out << "nice-nodes " << ntd.nodes.size() << " width " << ntd.width() << '\n';
  }
  return 0;
}

struct LevelsArgs {
  std::string graph, rotation;
};

int cmd_levels(const LevelsArgs& a, std::istream& in, std::ostream& out) {
  const GraphFile gf = load_graph(a.graph, in);
  const Graph& g = gf.graph;
  const int n = g.num_nodes();
  if (a.rotation.empty()) {
    if (gf.levels.empty()) usage(source_name(a.graph) + ": no level lines; supply them or pass --rotation");
    LevelAssignment la{gf.levels};
    if (auto bad = validate_levels(g, la)) {
      out << "violation: " << *bad << '\n';
      return 1;
    }
    out << "ok max-level " << la.max_level() << '\n';
    return 0;
  }
  const RotationSystem rs = parse_from(a.rotation, in, [n](std::istream& s) { return parse_rotation(s, n); });
  LevelAssignment la;
  try {
    la = compute_levels(g, rs);
  } catch (const std::invalid_argument& e) {
    usage(a.rotation + ": " + e.what());
  }
  emit_levels(out, la.level);
  return 0;
}

void emit_with_comments(std::ostream& out, const Graph& g, std::vector<std::string> comments) {
  emit_graph(out, g, comments);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"l-round power dominating set toolkit"};
  app.name("lpds");
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "minimum l-round power dominating set");
  solve->add_option("graph", sa.graph, "graph file (default stdin)");
  solve->add_option("--ell", sa.ell, "round bound (default n-1)");
  solve->add_option("--targets", sa.targets, "node list file or 'all'");
  solve->add_option("--method", sa.method, "bf, dp or ptas")->check(CLI::IsMember({"bf", "dp", "ptas"}));
  solve->add_option("--td", sa.td, "tree decomposition for dp");
  solve->add_option("--td-dir", sa.td_dir, "directory of block_<i>_<j>.td files for ptas");
  solve->add_option("--eps", sa.eps, "ptas accuracy in (0, 1], decimal or p/q");
  solve->add_option("--rotation", sa.rotation, "rotation system used to derive ptas levels");
  solve->add_option("--size-cap", sa.size_cap, "bf: stop after this cardinality (also lifts the size guard)");
  solve->add_option("--max-states", sa.max_states, "dp: per-table state budget");
  solve->add_flag("--serial", sa.serial, "disable parallel kernels");
  solve->add_flag("--json", sa.json, "machine-readable output");

  ClosureArgs ca;
  auto* closure = app.add_subcommand("closure", "per-node domination rounds of a set");
  closure->add_option("graph", ca.graph, "graph file (default stdin)");
  closure->add_option("--set", ca.set, "node list file")->required();
  closure->add_option("--ell", ca.ell, "round bound (default n-1)");
  closure->add_option("--targets", ca.targets, "exit 1 unless these are reached ('all' allowed)");
  closure->add_flag("--json", ca.json, "machine-readable output");

  OrientArgs oa;
  auto* verify = app.add_subcommand("verify-orientation", "check a timed orientation");
  verify->add_option("graph", oa.graph, "graph file")->required();
  verify->add_option("orientation", oa.orientation, "orientation file")->required();
  verify->add_option("--ell", oa.ell, "round bound (default n-1)");
  verify->add_option("--targets", oa.targets, "node list file or 'all'");

  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  int p1 = 0, p2 = 0;
  double prob = 0.5;
  std::uint64_t seed = 1;
  std::string gen_input;
  auto* g_spider = gen->add_subcommand("spider", "m paths of k nodes around a center");
  g_spider->add_option("m", p1)->required();
  g_spider->add_option("k", p2)->required();
  auto* g_pc = gen->add_subcommand("pendant-cycle", "cycle with one pendant per node");
  g_pc->add_option("m", p1)->required();
  auto* g_attach = gen->add_subcommand("attach-paths", "append an (ell-1)-node tail to every node");
  g_attach->add_option("ell", p1)->required();
  g_attach->add_option("graph", gen_input, "graph file (default stdin)");
  auto* g_minrep = gen->add_subcommand("minrep", "MinRep to power domination reduction");
  g_minrep->add_option("instance", gen_input, "MinRep file (default stdin)");
  auto* g_random = gen->add_subcommand("random", "G(n, p) random graph");
  g_random->add_option("n", p1)->required();
  g_random->add_option("p", prob)->required()->check(CLI::Range(0.0, 1.0));
  g_random->add_option("--seed", seed, "random seed");
  auto* g_grid = gen->add_subcommand("grid", "rows x cols grid");
  g_grid->add_option("rows", p1)->required();
  g_grid->add_option("cols", p2)->required();

  IpArgs ia;
  auto* emit_ip = app.add_subcommand("emit-ip", "write an integer program in LP format");
  emit_ip->add_option("model", ia.model, "ell or ordering")->required()->check(CLI::IsMember({"ell", "ordering"}));
  emit_ip->add_option("graph", ia.graph, "graph file (default stdin)");
  emit_ip->add_option("--ell", ia.ell, "round bound for the ell model (default n-1)");
  emit_ip->add_flag("--valid-ineqs", ia.valid, "add the strengthening inequalities");
  emit_ip->add_flag("--relax", ia.relax, "emit 0 <= v <= 1 bounds instead of binaries");
  emit_ip->add_option("--check", ia.check, "check a solution file instead of emitting");

  IpArgs ic;
  auto* check_ip = app.add_subcommand("check-ip", "check a variable assignment against a model");
  check_ip->add_option("model", ic.model, "ell or ordering")->required()->check(CLI::IsMember({"ell", "ordering"}));
  check_ip->add_option("graph", ic.graph, "graph file")->required();
  check_ip->add_option("solution", ic.check, "lines '<variable> <value>'")->required();
  check_ip->add_option("--ell", ic.ell, "round bound for the ell model (default n-1)");
  check_ip->add_flag("--valid-ineqs", ic.valid, "include the strengthening inequalities");

  TdArgs ta;
  auto* td = app.add_subcommand("td", "emit a heuristic tree decomposition or validate one");
  td->add_option("graph", ta.graph, "graph file (default stdin)");
  td->add_option("--td", ta.td, "decomposition to validate");
  td->add_flag("--nice", ta.nice, "report the nice form");

  LevelsArgs la;
  auto* levels = app.add_subcommand("levels", "outerplanarity levels");
  levels->add_option("graph", la.graph, "graph file (default stdin)");
  levels->add_option("--rotation", la.rotation, "rotation system; without it the file's level lines are checked");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(sa, in, out, err);
    if (closure->parsed()) return cmd_closure(ca, in, out);
    if (verify->parsed()) return cmd_verify(oa, in, out);
    if (emit_ip->parsed()) return cmd_ip(ia, in, out);
    if (check_ip->parsed()) return cmd_ip(ic, in, out);
    if (td->parsed()) return cmd_td(ta, in, out);
    if (levels->parsed()) return cmd_levels(la, in, out);
    if (gen->parsed()) {
      if (g_spider->parsed()) {
        emit_with_comments(out, spider(p1, p2), {"spider m=" + std::to_string(p1) + " k=" + std::to_string(p2)});
      } else if (g_pc->parsed()) {
        emit_with_comments(out, pendant_cycle(p1), {"pendant cycle m=" + std::to_string(p1)});
      } else if (g_attach->parsed()) {
        const Graph base = load_graph(gen_input, in).graph;
        emit_with_comments(out, attach_paths(base, p1), {"attach-paths ell=" + std::to_string(p1)});
      } else if (g_minrep->parsed()) {
        const MinRepInstance inst = parse_from(gen_input, in, [](std::istream& s) {
          auto x = parse_minrep(s);
          x.validate();
          return x;
        });
        const MinRepReduction red = minrep_to_pds(inst);
        std::vector<std::string> c{"minrep reduction lambda=" + std::to_string(red.lambda)};
        for (std::size_t v = 0; v < red.roles.size(); ++v) c.push_back("role " + std::to_string(v + 1) + " " + red.roles[v]);
        emit_with_comments(out, red.graph, c);
      } else if (g_random->parsed()) {
        emit_with_comments(out, random_graph(p1, prob, seed),
                           {"random n=" + std::to_string(p1) + " p=" + std::to_string(prob) + " seed=" + std::to_string(seed)});
      } else if (g_grid->parsed()) {
        emit_with_comments(out, grid_graph(p1, p2), {"grid " + std::to_string(p1) + "x" + std::to_string(p2)});
      }
      return 0;
    }
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace lpds
