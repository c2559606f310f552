#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "direach/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = direach::cli::run(std::move(args), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Lines not starting with '#'.
std::string result_section(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.starts_with("#")) out += line + "\n";
  }
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("direach_cli_" + std::to_string(std::rand()) + "_" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes the requested size deterministically") {
  TempDir dir;
  const Run r = run({"gen", "-n", "100", "-mu", "1.5", "-seed", "7", "-o", dir / "a.txt"});
  CHECK(r.code == 0);
  CHECK(r.out == "1000\n");
  CHECK(slurp(dir / "a.txt").starts_with("100 1000\n"));
  run({"gen", "-n", "100", "-mu", "1.5", "-seed", "7", "-o", dir / "b.txt"});
  CHECK(slurp(dir / "a.txt") == slurp(dir / "b.txt"));
  const Run bad = run({"gen", "-n", "10", "-mu", "2", "-o", dir / "c.txt"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("density infeasible") != std::string::npos);
}

TEST_CASE("solve, compare and verify") {
  TempDir dir;
  run({"gen", "-n", "120", "--mu", "1.4", "--seed", "3", "--dag", "-o", dir / "g.txt", "--sources", "11",
       "--sources-out", dir / "s.txt"});
  const Run naive = run({"solve", dir / "g.txt", dir / "s.txt", "--algo", "naive"});
  const Run fast = run({"solve", dir / "g.txt", dir / "s.txt", "--algo", "direach"});
  REQUIRE(naive.code == 0);
  REQUIRE(fast.code == 0);
  CHECK(result_section(naive.out) == result_section(fast.out));
  CHECK(fast.out.find("# stats algo=direach") != std::string::npos);

  const Run rec = run({"solve", dir / "g.txt", dir / "s.txt", "--algo", "recur", "-k", "2", "--seed", "3"});
  CHECK(rec.code == 0);
  CHECK(rec.out.find("levels=3") != std::string::npos);
  CHECK(rec.out.find("#   level 2:") != std::string::npos);
  CHECK(rec.out.find("#   level 0:") != std::string::npos);
  CHECK(result_section(rec.out) == result_section(naive.out));

  const Run hex = run({"solve", dir / "g.txt", dir / "s.txt", "--algo", "tc", "--hex"});
  CHECK(hex.out.find(": 0x") != std::string::npos);

  std::ofstream(dir / "r.txt") << fast.out;
  const Run ok = run({"verify", dir / "g.txt", dir / "s.txt", dir / "r.txt"});
  CHECK(ok.code == 0);
  CHECK(ok.out == "OK\n");
  std::ofstream(dir / "h.txt") << hex.out;
  CHECK(run({"verify", dir / "g.txt", dir / "s.txt", dir / "h.txt"}).code == 0);

  // Add one vertex to the first row that misses something.
  std::istringstream rows(result_section(naive.out));
  std::string tampered, row, source;
  std::ptrdiff_t added = -1;
  while (std::getline(rows, row)) {
    if (added < 0) {
      std::istringstream listed(row.substr(row.find(':') + 1));
      std::vector<bool> present(120, false);
      for (int v; listed >> v;) present[static_cast<std::size_t>(v)] = true;
      const auto gap = std::find(present.begin(), present.end(), false) - present.begin();
      if (gap < 120) {
        added = gap;
        source = row.substr(0, row.find(':'));
        row += " " + std::to_string(gap);
      }
    }
    tampered += row + "\n";
  }
  REQUIRE(added >= 0);
  std::ofstream(dir / "t.txt") << tampered;
  const Run bad = run({"verify", dir / "g.txt", dir / "s.txt", dir / "t.txt"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("mismatch at source " + source + " vertex " + std::to_string(added)) !=
        std::string::npos);

  std::ofstream(dir / "w.txt") << "0: 0x1\n";
  const Run dims = run({"verify", dir / "g.txt", dir / "s.txt", dir / "w.txt"});
  CHECK(dims.code == 2);
  CHECK(dims.err.find("format error") != std::string::npos);
}

TEST_CASE("io and usage errors exit with 2") {
  TempDir dir;
  run({"gen", "-n", "20", "--mu", "1.2", "-o", dir / "g.txt"});
  const Run missing = run({"solve", dir / "g.txt", dir / "nope.txt"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);
  CHECK(run({"solve"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"gen", "-n", "20", "--bogus"}).code == 2);
  std::ofstream(dir / "s.txt") << "0\n";
  const Run algo = run({"solve", dir / "g.txt", dir / "s.txt", "--algo", "fast"});
  CHECK(algo.code == 2);
  CHECK(algo.err.find("unknown algorithm") != std::string::npos);
}

TEST_CASE("plan quantities") {
  CHECK(run({"plan", "g0", "--sigma", "0.4"}).out == "2.339694\n");
  CHECK(run({"plan", "interval", "--sigma", "0.6"}).out == "(1.693, 1.929)\n");
  CHECK(run({"plan", "interval", "--sigma", "0.5"}).out == "(1.793, 2.000]\n");
  CHECK(run({"plan", "interval", "--sigma", "1"}).out == "empty\n");
  CHECK(run({"plan", "omega", "--sigma", "0.5"}).out == "2.042994\n");
  CHECK(run({"plan", "g0mu", "--sigma", "0.5", "--mu", "1.9"}).out == "2.328663\n");
  CHECK(run({"plan", "delta", "--sigma", "0.4"}).out == "0.330153\n");
  const Run t5 = run({"plan", "table", "T5"});
  CHECK(t5.code == 0);
  CHECK(t5.out.starts_with("sigma,g0,g1,g3,g5,g7,g9\n"));
  CHECK(std::count(t5.out.begin(), t5.out.end(), '\n') == 24);
  const Run t2 = run({"plan", "table", "T2", "--grid-knots"});
  CHECK(t2.out.find("0.510000,2.510000,2.365081") != std::string::npos);
  CHECK(run({"plan", "table"}).code == 2);
  CHECK(run({"plan", "nonsense"}).code == 2);
}

TEST_CASE("plan with a replacement omega table") {
  TempDir dir;
  std::ofstream(dir / "w.txt") << "0.5 2.0\n1.0 2.3\n";
  CHECK(run({"plan", "omega", "--sigma", "0.75", "--omega-file", dir / "w.txt"}).out == "2.150000\n");
}

TEST_CASE("bench suites") {
  const Run empty = run({"bench", "--suite", "empty"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "algo,n,mu,sigma,m,sources,D,H,ms\n");
  const Run small = run({"bench", "--sizes", "60,80", "--seed", "5"});
  CHECK(small.code == 0);
  CHECK(std::count(small.out.begin(), small.out.end(), '\n') == 5);
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string bin = DIREACH_BINARY;
  CHECK(std::system((bin + " plan g0 --sigma 0.4 > /dev/null").c_str()) == 0);
  const int code = std::system((bin + " solve /nonexistent /nonexistent 2> /dev/null").c_str());
  CHECK(WEXITSTATUS(code) == 2);
}

}  // TEST_SUITE
