#include <doctest.h>

#include <random>
#include <sstream>

#include "direach/maxmin.hpp"
#include "oracles.hpp"

using namespace direach;

namespace {

using M = MaxMinMatrix<std::int64_t>;
constexpr std::int64_t kNeg = neg_inf<std::int64_t>();
constexpr std::int64_t kPos = pos_inf<std::int64_t>();

M random_entries(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  M m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) {
      const int x = static_cast<int>(rng() % 12);
      m(i, j) = x == 10 ? kNeg : x == 11 ? kPos : x;
    }
  }
  return m;
}

std::vector<std::vector<std::int64_t>> nested(const M& m) {
  std::vector<std::vector<std::int64_t>> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[static_cast<std::size_t>(i)].push_back(m(i, j));
  }
  return out;
}

PdrResult labels_to_result(const std::vector<std::vector<int>>& labels,
                           const std::vector<std::vector<Vertex>>& paths) {
  PdrResult r;
  r.per_path.resize(paths.size());
  for (std::size_t p = 0; p < paths.size(); ++p) {
    for (std::size_t z = 0; z < labels[p].size(); ++z) {
      if (labels[p][z] >= 0) {
        r.per_path[p].emplace_back(static_cast<Vertex>(z),
                                   paths[p][static_cast<std::size_t>(labels[p][z])]);
      }
    }
  }
  return r;
}

}  // namespace

TEST_SUITE("maxmin") {

TEST_CASE("an all -inf row stays -inf") {
  std::mt19937_64 rng(1);
  M b = random_entries(3, 6, rng);
  b.row(1).setConstant(kNeg);
  const M c = maxmin_product(b, random_entries(6, 4, rng));
  for (Eigen::Index j = 0; j < 4; ++j) CHECK(c(1, j) == kNeg);
}

TEST_CASE("max-min product on the position example") {
  // q = (v0, v2) with positions 1, 2; edges v0->v1 and v2->v3.
  M b = M::Constant(1, 4, kNeg);
  b(0, 0) = 1;
  b(0, 2) = 2;
  M a = M::Constant(4, 4, kNeg);
  a(0, 1) = kPos;
  a(2, 3) = kPos;
  const M c = maxmin_product(b, a);
  CHECK(c(0, 1) == 1);
  CHECK(c(0, 3) == 2);
  CHECK(c(0, 0) == kNeg);
  CHECK(c(0, 2) == kNeg);
}

TEST_CASE("max-min product equals the triple loop") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    const auto r = static_cast<Eigen::Index>(1 + rng() % 8);
    const auto k = static_cast<Eigen::Index>(1 + rng() % 8);
    const auto c = static_cast<Eigen::Index>(1 + rng() % 8);
    const M b = random_entries(r, k, rng);
    const M a = random_entries(k, c, rng);
    const auto [got, witness] = maxmin_product_with_witness(b, a);
    CHECK(nested(got) == oracle::maxmin(nested(b), nested(a), kNeg));
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < c; ++j) {
        if (got(i, j) == kNeg) {
          CHECK(witness(i, j) == -1);
          continue;
        }
        const int w = witness(i, j);
        CHECK(std::min(b(i, w), a(w, j)) == got(i, j));
        for (int x = 0; x < w; ++x) CHECK(std::min(b(i, x), a(x, j)) < got(i, j));
      }
    }
  }
  CHECK_THROWS_AS(maxmin_product(M(2, 3), M(2, 3)), std::invalid_argument);
}

TEST_CASE("floating scalars use real infinities") {
  using D = MaxMinMatrix<double>;
  D b(1, 2), a(2, 1);
  b << 3.0, neg_inf<double>();
  a << pos_inf<double>(), 5.0;
  CHECK(maxmin_product(b, a)(0, 0) == 3.0);
}

TEST_CASE("raising an entry of B never lowers C") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const M b = random_entries(5, 6, rng);
    const M a = random_entries(6, 5, rng);
    M raised = b;
    const auto i = static_cast<Eigen::Index>(rng() % 5), j = static_cast<Eigen::Index>(rng() % 6);
    raised(i, j) = raised(i, j) == kPos ? kPos : std::max<std::int64_t>(raised(i, j), 0) + 3;
    const M c0 = maxmin_product(b, a), c1 = maxmin_product(raised, a);
    CHECK((c1.array() >= c0.array()).all());
  }
}

TEST_CASE("one-hop step from a singleton") {
  // s = 0 with a star to 1 and 2.
  const DiGraph g = DiGraph::from_edges(3, {{0, 1}, {0, 2}});
  SequenceSet seqs;
  seqs.paths.paths = {{0}};
  seqs.sequences = {{{0}, {0}, 0}};
  const auto rank = topo_rank(g);
  const SequenceSet next = ohsdr_step(g, seqs, rank);
  auto members = next.sequences[0].vertices;
  std::sort(members.begin(), members.end());
  CHECK(members == std::vector<Vertex>{0, 1, 2});
  CHECK(next.sequences[0].vertices.front() == 0);  // the source precedes its successors
  CHECK(next.sequences[0].labels == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("a later position in q beats a one-hop witness") {
  // q = (x, z) with x -> z: z keeps its own, later label.
  const DiGraph g = DiGraph::from_edges(2, {{0, 1}});
  SequenceSet seqs;
  seqs.paths.paths = {{0, 1}};
  seqs.sequences = {{{0, 1}, {0, 1}, 0}};
  const SequenceSet next = ohsdr_step(g, seqs, topo_rank(g));
  CHECK(next.sequences[0].vertices == std::vector<Vertex>{0, 1});
  CHECK(next.sequences[0].labels == std::vector<std::size_t>{0, 1});
}

TEST_CASE("one-hop labels match the oracle") {
  const DiGraph g = oracle::bernoulli_graph(25, 0.1, 5, true);
  const auto paths = oracle::random_closure_paths(oracle::reach_table(g), 3, 5, 9);
  PathCollection pc;
  pc.paths = paths;
  CHECK(pdr_solve(g, pc, 1) == labels_to_result(oracle::pdr_labels(oracle::hop_distances(g), paths, 1), paths));
}

TEST_CASE("pdr on a single vertex degenerates to BFS") {
  const DiGraph g = gen_random(40, 1.3, 4, false);
  PathCollection pc;
  pc.paths = {{7}};
  const PdrResult r = pdr_solve(g, pc, 39);
  const auto reach = multi_source_reach(g, SourceSet({7}, 40)).rows.row_indices(0);
  REQUIRE(r.per_path[0].size() == reach.size());
  for (std::size_t i = 0; i < reach.size(); ++i) {
    CHECK(r.per_path[0][i].first == reach[i]);
    CHECK(r.per_path[0][i].second == 7);
  }
}

TEST_CASE("pdr picks the path vertex that arrives within budget") {
  // p = (u=0, w=1); u reaches z=2 in two hops via 3, w needs five via 4..7.
  const DiGraph g = DiGraph::from_edges(
      8, {{0, 1}, {0, 3}, {3, 2}, {1, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 2}});
  PathCollection pc;
  pc.paths = {{0, 1}};
  auto label_of = [&](std::size_t hops, Vertex z) {
    const PdrResult r = pdr_solve(g, pc, hops);
    for (const auto& [v, lab] : r.per_path[0]) {
      if (v == z) return static_cast<int>(lab);
    }
    return -1;
  };
  CHECK(label_of(3, 2) == 0);
  CHECK(label_of(5, 2) == 1);
  CHECK(label_of(1, 2) == -1);
}

TEST_CASE("pdr matches the per-pair oracle on DAGs and cyclic graphs") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const bool dag = seed % 3 != 0;
    const DiGraph g = oracle::bernoulli_graph(30, 0.06, seed, dag);
    const auto paths = oracle::random_closure_paths(oracle::reach_table(g), 4, 6, seed);
    PathCollection pc;
    pc.paths = paths;
    const auto dist = oracle::hop_distances(g);
    for (int b = 1; b <= 5; ++b) {
      CHECK(pdr_solve(g, pc, static_cast<std::size_t>(b)) ==
            labels_to_result(oracle::pdr_labels(dist, paths, b), paths));
    }
  }
}

TEST_CASE("pdr labels never move earlier as the budget grows") {
  const DiGraph g = oracle::bernoulli_graph(35, 0.06, 21, true);
  const auto paths = oracle::random_closure_paths(oracle::reach_table(g), 3, 6, 4);
  PathCollection pc;
  pc.paths = paths;
  for (std::size_t b = 1; b < 6; ++b) {
    const PdrResult lo = pdr_solve(g, pc, b), hi = pdr_solve(g, pc, b + 1);
    for (std::size_t p = 0; p < paths.size(); ++p) {
      auto pos = [&](Vertex v) {
        return std::find(paths[p].begin(), paths[p].end(), v) - paths[p].begin();
      };
      for (const auto& [z, v] : lo.per_path[p]) {
        auto it = std::lower_bound(hi.per_path[p].begin(), hi.per_path[p].end(),
                                   std::pair<Vertex, Vertex>{z, 0});
        REQUIRE(it != hi.per_path[p].end());
        CHECK(it->first == z);
        CHECK(pos(it->second) >= pos(v));
      }
    }
  }
}

TEST_CASE("dr_solve is bounded reachability") {
  const DiGraph g = gen_random(50, 1.3, 8, false);
  const SourceSet s = oracle::random_sources(50, 6, 1);
  CHECK(dr_solve(g, s, 0).rows == bounded_hop_reach(g, s, 0).rows);
  CHECK(dr_solve(g, s, 49) == multi_source_reach(g, s));
  const auto dist = oracle::hop_distances(g);
  CHECK(oracle::rows_match_bounded(dr_solve(g, s, 5), dist, 5));

  // Singleton paths give the same rows.
  PathCollection pc;
  for (Vertex v : s) pc.paths.push_back({v});
  const PdrResult pdr = pdr_solve(g, pc, 4);
  const ReachResult dr = dr_solve(g, s, 4);
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::vector<std::size_t> zs;
    for (const auto& [z, v] : pdr.per_path[i]) zs.push_back(z);
    CHECK(zs == dr.rows.row_indices(i));
  }
}

TEST_CASE("pdr text format") {
  PdrResult r;
  r.per_path = {{{0, 0}, {2, 1}}, {}};
  std::ostringstream out;
  write_pdr(out, r);
  CHECK(out.str() == "# path 0\n0 0\n2 1\n# path 1\n");
}

}  // TEST_SUITE
