#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lpds/cli.hpp"
#include "lpds/generators.hpp"
#include "support.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = lpds::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() / ("lpds_cli_" + std::to_string(std::random_device{}()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("spider through brute force and dp") {
    const std::string g = call({"gen", "spider", "3", "3"}).out;
    auto bf = call({"solve", "--ell", "3", "--method", "bf"}, g);
    CHECK(bf.code == 0);
    CHECK(first_line(bf.out) == "opt 1");
    auto dp = call({"solve", "--ell", "2", "--method", "dp"}, g);
    CHECK(dp.code == 0);
    CHECK(first_line(dp.out) == "opt 3");
    CHECK(call({"solve", "--ell", "2", "--method", "dp"}, g).out == dp.out);
    auto js = call({"solve", "--ell", "2", "--json"}, g);
    auto doc = nlohmann::json::parse(js.out);
    CHECK(doc["opt"] == 3);
    CHECK(doc["witness"].size() == 3);
  }

  TEST_CASE("ip emission on a single edge") {
    auto r = call({"emit-ip", "ell", "--ell", "1"}, "p edge 2 1\ne 1 2\n");
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    int rows = 0;
    bool inside = false;
    while (std::getline(lines, line)) {
      if (line == "Subject To") inside = true;
      else if (line == "Binary") inside = false;
      else if (inside && line.find(':') != std::string::npos) ++rows;
    }
    CHECK(rows == 6);
  }

  TEST_CASE("closure and orientation checks") {
    TempDir dir;
    const std::string g = dir.write("p3.graph", "p edge 3 2\ne 1 2\ne 2 3\n");
    const std::string s = dir.write("s.nodes", "1\n");
    auto c = call({"closure", g, "--set", s, "--ell", "1"});
    CHECK(c.code == 0);
    CHECK(c.out == "1 0\n2 1\n3 inf\n");
    CHECK(call({"closure", g, "--set", s, "--ell", "1", "--targets", "all"}).code == 1);
    CHECK(call({"closure", g, "--set", s, "--ell", "2", "--targets", "all"}).code == 0);

    const std::string good = dir.write("good.or", "d 1 2\nd 2 3\nt 1 0\nt 2 1\nt 3 2\n");
    auto ok = call({"verify-orientation", g, good, "--ell", "2", "--targets", "all"});
    CHECK(ok.code == 0);
    CHECK(first_line(ok.out) == "ok");
    const std::string bad = dir.write("bad.or", "d 1 2\nd 3 2\nt 1 0\nt 2 1\nt 3 0\n");
    auto no = call({"verify-orientation", g, bad, "--ell", "2"});
    CHECK(no.code == 1);
    CHECK(no.out.rfind("violation P2", 0) == 0);
  }

  TEST_CASE("planar solve and levels") {
    const std::string grid = call({"gen", "grid", "3", "3"}).out;
    auto lv = call({"levels"}, grid + "l 1 1\nl 2 1\nl 3 1\nl 4 1\nl 5 2\nl 6 1\nl 7 1\nl 8 1\nl 9 1\n");
    CHECK(lv.code == 0);
    CHECK(first_line(lv.out) == "ok max-level 2");
    auto p = call({"solve", "--method", "ptas", "--ell", "1", "--eps", "1"},
                  grid + "l 1 1\nl 2 1\nl 3 1\nl 4 1\nl 5 2\nl 6 1\nl 7 1\nl 8 1\nl 9 1\n");
    CHECK(p.code == 0);
    CHECK(p.out.find("size 3") != std::string::npos);
    CHECK(call({"solve", "--method", "ptas", "--ell", "1"}, grid).code == 2);  // no levels
  }

  TEST_CASE("tree decompositions") {
    auto r = call({"td", "--nice"}, "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    CHECK(r.code == 0);
    auto emitted = call({"td"}, "p edge 4 3\ne 1 2\ne 2 3\ne 3 4\n");
    CHECK(emitted.out.find("s td") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    CHECK(call({}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({"--help"}).code == 0);
    CHECK(call({"solve", "--method", "nope"}, "p edge 1 0\n").code == 2);
    auto parse = call({"solve"}, "p edge 2 1\ne 1 1\n");
    CHECK(parse.code == 2);
    CHECK(parse.err.find("line 2") != std::string::npos);
    auto cap = call({"solve", "--method", "bf", "--ell", "1", "--size-cap", "1"}, lpds::emit_graph(oracle::cycle(6)));
    CHECK(cap.code == 1);
    CHECK(first_line(cap.out) == "exceeded 1");
    CHECK(call({"solve", "--max-states", "1", "--ell", "2"}, lpds::emit_graph(oracle::complete(5))).code == 1);
    CHECK(call({"solve", "--method", "ptas", "--eps", "2"}, "p edge 1 0\nl 1 1\n").code == 2);
  }
}
