#include <doctest.h>

#include <cmath>
#include <sstream>

#include "direach/graph.hpp"
#include "direach/reach_io.hpp"
#include "oracles.hpp"

using namespace direach;

namespace {

DiGraph parse(const std::string& text) {
  std::istringstream in(text);
  return load_edge_list(in);
}

std::string parse_error(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("load_edge_list reads a path") {
  const DiGraph g = parse("3 2\n0 1\n1 2");
  CHECK(g.num_vertices() == 3);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge(0, 1));
  CHECK(g.has_edge(1, 2));
  CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("load_edge_list drops duplicates") {
  const DiGraph g = parse("2 2\n0 1\n0 1");
  CHECK(g.num_edges() == 1);
}

TEST_CASE("load_edge_list errors name the line") {
  CHECK(parse_error("2 1\n0 5") == "vertex id out of range at line 2");
  CHECK(parse_error("") == "empty input");
  CHECK(parse_error("3 1\n0 x") == "malformed line at line 2");
  CHECK(parse_error("3\n") == "malformed header at line 1");
}

TEST_CASE("edge list round trip") {
  const DiGraph g = gen_random(30, 1.4, 5, false);
  std::ostringstream out;
  write_edge_list(out, g);
  CHECK(parse(out.str()).edges() == g.edges());
}

TEST_CASE("sources are validated") {
  std::istringstream ok("3\n# comment\n1\n");
  const SourceSet s = load_sources(ok, 5);
  CHECK(s.size() == 2);
  CHECK(s[0] == 3);
  std::istringstream dup("1\n1\n");
  CHECK_THROWS_AS(load_sources(dup, 5), ParseError);
  std::istringstream range("7\n");
  CHECK_THROWS_AS(load_sources(range, 5), ParseError);
  CHECK(SourceSet::all(16).sigma(16) == doctest::Approx(1.0));
}

TEST_CASE("gen_random density arithmetic") {
  CHECK_THROWS_WITH(gen_random(100, 2.0, 7, false), "density infeasible");
  const DiGraph g = gen_random(100, 1.5, 7, false);
  CHECK(g.num_edges() == 1000);
  CHECK(gen_random(100, 1.5, 7, false).edges() == g.edges());
  CHECK(gen_random(100, 1.5, 8, false).edges() != g.edges());
  for (const Edge& e : g.edges()) CHECK(e.from != e.to);
}

TEST_CASE("gen_random dag flag gives an acyclic graph") {
  const DiGraph g = gen_random(50, 1.2, 1, true);
  CHECK(g.num_edges() == static_cast<std::size_t>(std::llround(std::pow(50.0, 1.2))));
  CHECK(oracle::is_acyclic(g));
  // A full tournament is still acyclic.
  const DiGraph full = gen_random(20, std::log(190.0) / std::log(20.0), 3, true);
  CHECK(full.num_edges() == 190);
  CHECK(oracle::is_acyclic(full));
}

TEST_CASE("scc_condense on small shapes") {
  const DiGraph cycle = DiGraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
  const Condensation c1 = scc_condense(cycle);
  CHECK(c1.size() == 1);
  CHECK(c1.dag.num_edges() == 0);

  const Condensation c2 = scc_condense(oracle::path_graph(3));
  CHECK(c2.size() == 3);
  CHECK(c2.dag.num_edges() == 2);

  const DiGraph twin = DiGraph::from_edges(4, {{0, 1}, {1, 0}, {2, 3}, {3, 2}, {1, 2}});
  const Condensation c3 = scc_condense(twin);
  CHECK(c3.size() == 2);
  CHECK(c3.dag.num_edges() == 1);
  CHECK(c3.scc_id[0] == c3.scc_id[1]);
  CHECK(c3.scc_id[2] == c3.scc_id[3]);
  CHECK(c3.dag.has_edge(c3.scc_id[0], c3.scc_id[2]));
}

TEST_CASE("condensation agrees with pairwise reachability") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const std::size_t n = 20 + seed * 10;
    const DiGraph g = oracle::bernoulli_graph(n, 1.5 / static_cast<double>(n), seed, false);
    const Condensation c = scc_condense(g);
    CHECK(oracle::is_acyclic(c.dag));
    for (const Edge& e : c.dag.edges()) CHECK(e.from < e.to);  // ids are topological
    const auto t = oracle::reach_table(g);
    const auto tc = oracle::reach_table(c.dag);
    bool ok = true;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = 0; v < n; ++v) {
        ok = ok && (t[u][v] == tc[c.scc_id[u]][c.scc_id[v]]);
        ok = ok && ((t[u][v] && t[v][u]) == (c.scc_id[u] == c.scc_id[v]));
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("multi_source_reach on a path") {
  const DiGraph p = oracle::path_graph(3);
  const ReachResult r0 = multi_source_reach(p, SourceSet({0}, 3));
  CHECK(r0.rows.row_indices(0) == std::vector<std::size_t>{0, 1, 2});
  const ReachResult r2 = multi_source_reach(p, SourceSet({2}, 3));
  CHECK(r2.rows.row_indices(0) == std::vector<std::size_t>{2});
}

TEST_CASE("multi_source_reach matches the oracle and is thread independent") {
  const DiGraph g = gen_random(50, 1.4, 11, false);
  const SourceSet s = oracle::random_sources(50, 7, 3);
  const ReachResult r = multi_source_reach(g, s);
  CHECK(oracle::rows_match(r, oracle::reach_table(g)));
  CHECK(multi_source_reach(g, s, 4) == r);
}

TEST_CASE("bounded_hop_reach") {
  const DiGraph p = oracle::path_graph(3);
  CHECK(bounded_hop_reach(p, SourceSet({0}, 3), 1).rows.row_indices(0) ==
        std::vector<std::size_t>{0, 1});
  const DiGraph g = oracle::bernoulli_graph(40, 0.05, 9, true);
  const SourceSet all = SourceSet::all(40);
  CHECK(bounded_hop_reach(g, all, 0).rows == BitMatrix::identity(40));
  const auto dist = oracle::hop_distances(g);
  for (int d = 0; d <= 6; ++d) {
    const ReachResult r = bounded_hop_reach(g, all, static_cast<std::size_t>(d), 3);
    CHECK(oracle::rows_match_bounded(r, dist, d));
    if (d > 0) {
      const ReachResult prev = bounded_hop_reach(g, all, static_cast<std::size_t>(d - 1));
      bool monotone = true;
      for (std::size_t i = 0; i < 40; ++i) {
        prev.rows.for_each_in_row(i, [&](std::size_t v) { monotone = monotone && r.rows.test(i, v); });
      }
      CHECK(monotone);
    }
  }
  CHECK(bounded_hop_reach(g, all, 39) == multi_source_reach(g, all));
}

TEST_CASE("reach result text formats round trip") {
  const DiGraph g = gen_random(70, 1.3, 2, false);
  const SourceSet s = oracle::random_sources(70, 9, 4);
  const ReachResult r = multi_source_reach(g, s);
  for (RowFormat f : {RowFormat::list, RowFormat::hex}) {
    std::stringstream io;
    write_reach(io, r, f);
    CHECK(read_reach(io, 70) == r);
  }
  std::ostringstream hex;
  write_reach(hex, multi_source_reach(oracle::path_graph(5), SourceSet({3}, 5)), RowFormat::hex);
  CHECK(hex.str() == "3: 0x18\n");
  std::istringstream bad("0: 0x1\n");
  CHECK_THROWS_AS(read_reach(bad, 70), ParseError);
}

}  // TEST_SUITE
