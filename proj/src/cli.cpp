#include "direach/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "direach/direach.hpp"
#include "direach/planner.hpp"
#include "direach/reach_io.hpp"

namespace direach::cli {

namespace {

// Exit-code carrying error for file and format problems.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

DiGraph read_graph(const std::string& path) {
  auto in = open_in(path);
  return load_edge_list(in);
}

SourceSet read_sources(const std::string& path, std::size_t n) {
  auto in = open_in(path);
  return load_sources(in, n);
}

// `-mu` -> `--mu`; single-letter flags and negative numbers stay as they are.
std::string normalize_flag(const std::string& a) {
  if (a.size() > 2 && a[0] == '-' && a[1] != '-' && std::isalpha(static_cast<unsigned char>(a[1]))) {
    return "-" + a;
  }
  return a;
}

SourceSet random_sources(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::vector<Vertex> ids(n);
  std::iota(ids.begin(), ids.end(), Vertex{0});
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  ids.resize(std::min(count, n));
  return SourceSet(std::move(ids), n);
}

std::size_t source_count(std::size_t n, double sigma) {
  return std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(std::pow(static_cast<double>(n), sigma))), 1, n);
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fixed(double v, int digits = 6) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

struct GenOpts {
  std::size_t n = 0;
  double mu = 1.5;
  std::uint64_t seed = 1;
  bool dag = false;
  std::string out_path;
  std::size_t sources = 0;
  std::string sources_path;
};

struct SolveOpts {
  std::string graph, sources, algo = "direach";
  int k = 1;
  std::optional<double> delta, mu;
  std::uint64_t seed = 1;
  double c_path = 4.0, c_vertex = 4.0;
  int retries = 4;
  bool hex = false;
  unsigned threads = 1;
};

struct VerifyOpts {
  std::string graph, sources, result;
};

struct PlanOpts {
  std::string what, table;
  double sigma = 0.5;
  double mu = 2.0;
  int k = 0;
  std::string omega_file;
  bool grid_knots = false;
};

struct BenchOpts {
  std::string suite = "default";
  std::string sizes = "200,400,800";
  std::uint64_t seed = 1;
  double mu = 1.5;
  double sigma = 0.5;
  std::string algos = "naive,direach";
};

int cmd_gen(const GenOpts& o, std::ostream& out, std::ostream& err) {
  const DiGraph g = gen_random(o.n, o.mu, o.seed, o.dag);
  if (o.out_path.empty()) {
    write_edge_list(out, g);
    err << g.num_edges() << '\n';
  } else {
    auto f = open_out(o.out_path);
    write_edge_list(f, g);
    out << g.num_edges() << '\n';
  }
  if (!o.sources_path.empty()) {
    auto f = open_out(o.sources_path);
    for (Vertex v : random_sources(o.n, std::max<std::size_t>(o.sources, 1), o.seed ^ 0x5eedULL)) {
      f << v << '\n';
    }
  }
  return 0;
}

int cmd_solve(const SolveOpts& o, std::ostream& out) {
  const DiGraph g = read_graph(o.graph);
  const SourceSet s = read_sources(o.sources, g.num_vertices());
  SolveConfig cfg;
  cfg.algorithm = parse_algorithm(o.algo);
  cfg.delta_override = o.delta;
  cfg.mu_hint = o.mu;
  cfg.depth = o.k;
  cfg.sampling = {o.c_path, o.c_vertex, o.retries, o.seed};
  cfg.threads = o.threads;
  const SolveOutput r = solve(g, s, cfg);
  write_reach(out, r.reach, o.hex ? RowFormat::hex : RowFormat::list);
  out << format_stats(r.stats) << '\n';
  if (r.stats.trace) write_trace(out, *r.stats.trace);
  return 0;
}

int cmd_verify(const VerifyOpts& o, std::ostream& out) {
  const DiGraph g = read_graph(o.graph);
  const SourceSet s = read_sources(o.sources, g.num_vertices());
  auto in = open_in(o.result);
  const ReachResult got = read_reach(in, g.num_vertices());
  if (got.sources.size() != s.size()) {
    throw ParseError("result has " + std::to_string(got.sources.size()) + " rows, expected " +
                     std::to_string(s.size()));
  }
  const ReachResult want = multi_source_reach(g, s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (got.sources[i] != s[i]) {
      out << "mismatch at row " << i << ": source " << got.sources[i] << ", expected " << s[i]
          << '\n';
      return 1;
    }
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      if (got.rows.test(i, v) != want.rows.test(i, v)) {
        out << "mismatch at source " << s[i] << " vertex " << v << ": expected "
            << want.rows.test(i, v) << " got " << got.rows.test(i, v) << '\n';
        return 1;
      }
    }
  }
  out << "OK\n";
  return 0;
}

int cmd_plan(const PlanOpts& o, std::ostream& out) {
  OmegaTable table = OmegaTable::published();
  if (!o.omega_file.empty()) {
    auto in = open_in(o.omega_file);
    table = OmegaTable::load(in);
  }
  if (o.grid_knots) table = table.without_sample(0.527661);
  const Planner planner(std::move(table));

  const std::string& w = o.what;
  if (w == "omega") {
    out << fixed(planner.omega(o.sigma)) << '\n';
  } else if (w == "g0") {
    out << fixed(planner.g0(o.sigma)) << '\n';
  } else if (w == "g0mu") {
    out << fixed(planner.g0_mu(o.sigma, o.mu)) << '\n';
  } else if (w == "gk") {
    out << fixed(planner.gk_mu(o.sigma, o.mu, o.k)) << '\n';
  } else if (w == "delta") {
    out << fixed(planner.balance_delta(o.sigma, o.k - 1, o.mu)) << '\n';
  } else if (w == "interval") {
    const FeasibilityInterval iv = planner.feasibility_interval(o.sigma);
    if (iv.empty) {
      out << "empty\n";
    } else {
      out << '(' << fixed(iv.lo, 3) << ", " << fixed(iv.hi, 3) << (iv.capped ? "]" : ")") << '\n';
    }
  } else if (w == "sigma-tilde") {
    out << fixed(planner.sigma_tilde()) << '\n';
  } else if (w == "sigma-k") {
    out << fixed(planner.sigma_k(o.k, o.mu)) << '\n';
  } else if (w == "table") {
    if (o.table.empty()) throw CLI::ValidationError("plan table needs one of T2..T6");
    planner.emit_table(out, o.table);
  } else {
    throw CLI::ValidationError("unknown plan quantity '" + w + "'");
  }
  return 0;
}

int cmd_bench(const BenchOpts& o, std::ostream& out) {
  out << "algo,n,mu,sigma,m,sources,D,H,ms\n";
  if (o.suite == "empty") return 0;
  if (o.suite != "default") throw CLI::ValidationError("unknown suite '" + o.suite + "'");
  const auto algos = split_csv(o.algos);
  for (const auto& a : algos) parse_algorithm(a);
  for (const auto& size : split_csv(o.sizes)) {
    const std::size_t n = std::stoul(size);
    const DiGraph g = gen_random(n, o.mu, o.seed + n, false);
    const SourceSet s = random_sources(n, source_count(n, o.sigma), o.seed + n + 1);
    for (const auto& a : algos) {
      SolveConfig cfg;
      cfg.algorithm = parse_algorithm(a);
      cfg.mu_hint = o.mu;
      cfg.sampling.seed = o.seed;
      const SolveOutput r = solve(g, s, cfg);
      out << a << ',' << n << ',' << o.mu << ',' << o.sigma << ',' << g.num_edges() << ','
          << s.size() << ',' << r.stats.d << ',' << r.stats.shortcut_size << ','
          << fixed(r.stats.millis, 3) << '\n';
    }
  }
  return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  for (auto& a : args) a = normalize_flag(a);

  CLI::App app{"Multi-source directed reachability toolkit", "direach"};
  app.require_subcommand(1);

  GenOpts gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a seeded random digraph");
  gen_cmd->add_option("-n", gen.n, "Vertex count")->required()->check(CLI::Range(2, 1 << 24));
  gen_cmd->add_option("--mu", gen.mu, "Density exponent, m = round(n^mu)");
  gen_cmd->add_option("--seed", gen.seed, "PRNG seed");
  gen_cmd->add_flag("--dag", gen.dag, "Orient edges along a random permutation");
  gen_cmd->add_option("-o,--out", gen.out_path, "Edge-list output file (stdout if omitted)");
  gen_cmd->add_option("--sources", gen.sources, "Number of random sources to write");
  gen_cmd->add_option("--sources-out", gen.sources_path, "Sources output file");

  SolveOpts solve_o;
  auto* solve_cmd = app.add_subcommand("solve", "Compute S x V reachability");
  solve_cmd->add_option("graph", solve_o.graph, "Edge-list file")->required();
  solve_cmd->add_option("sources", solve_o.sources, "Sources file")->required();
  solve_cmd->add_option("--algo", solve_o.algo, "naive | tc | direach | recur");
  solve_cmd->add_option("-k,--depth", solve_o.k, "Recursion depth for recur");
  solve_cmd->add_option("--delta", solve_o.delta, "Override delta, D = round(n^delta)");
  solve_cmd->add_option("--mu", solve_o.mu, "Density exponent used to pick delta");
  solve_cmd->add_option("--seed", solve_o.seed, "Sampling seed");
  solve_cmd->add_option("--c-path", solve_o.c_path, "Path sampling constant");
  solve_cmd->add_option("--c-vertex", solve_o.c_vertex, "Vertex sampling constant");
  solve_cmd->add_option("--retries", solve_o.retries, "Sampling retries before fallback");
  solve_cmd->add_flag("--hex", solve_o.hex, "Hex row dump");
  solve_cmd->add_option("--threads", solve_o.threads, "Worker threads")->check(CLI::Range(1u, 256u));

  VerifyOpts verify_o;
  auto* verify_cmd = app.add_subcommand("verify", "Check a result file against BFS");
  verify_cmd->add_option("graph", verify_o.graph)->required();
  verify_cmd->add_option("sources", verify_o.sources)->required();
  verify_cmd->add_option("result", verify_o.result)->required();

  PlanOpts plan_o;
  auto* plan_cmd = app.add_subcommand("plan", "Evaluate exponent formulas and tables");
  plan_cmd->add_option("what", plan_o.what,
                       "omega | g0 | g0mu | gk | delta | interval | sigma-tilde | sigma-k | table")
      ->required();
  plan_cmd->add_option("table", plan_o.table, "T2..T6 for 'table'");
  plan_cmd->add_option("--sigma", plan_o.sigma);
  plan_cmd->add_option("--mu", plan_o.mu);
  plan_cmd->add_option("-k,--depth", plan_o.k)->check(CLI::Range(0, 64));
  plan_cmd->add_option("--omega-file", plan_o.omega_file, "Replacement (sigma, omega) samples");
  plan_cmd->add_flag("--grid-knots", plan_o.grid_knots,
                     "Interpolate omega on the regular 0.05 grid only");

  BenchOpts bench_o;
  auto* bench_cmd = app.add_subcommand("bench", "Report-only timing CSV");
  bench_cmd->add_option("--suite", bench_o.suite, "default | empty");
  bench_cmd->add_option("--sizes", bench_o.sizes, "Comma-separated vertex counts");
  bench_cmd->add_option("--seed", bench_o.seed);
  bench_cmd->add_option("--mu", bench_o.mu);
  bench_cmd->add_option("--sigma", bench_o.sigma);
  bench_cmd->add_option("--algos", bench_o.algos);

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
    if (gen_cmd->parsed()) return cmd_gen(gen, out, err);
    if (solve_cmd->parsed()) return cmd_solve(solve_o, out);
    if (verify_cmd->parsed()) return cmd_verify(verify_o, out);
    if (plan_cmd->parsed()) return cmd_plan(plan_o, out);
    if (bench_cmd->parsed()) return cmd_bench(bench_o, out);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "format error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace direach::cli
