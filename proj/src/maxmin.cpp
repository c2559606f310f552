#include "direach/maxmin.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "direach/boolmat.hpp"

namespace direach {

namespace {

using Scalar = std::int64_t;

MaxMinMatrix<Scalar> edge_matrix(const DiGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  MaxMinMatrix<Scalar> a = MaxMinMatrix<Scalar>::Constant(n, n, neg_inf<Scalar>());
  for (Vertex u = 0; u < g.num_vertices(); ++u) {
    for (Vertex v : g.out(u)) a(u, v) = pos_inf<Scalar>();
  }
  return a;
}

}  // namespace

std::vector<std::size_t> topo_rank(const DiGraph& g) {
  const Condensation cond = scc_condense(g);
  std::vector<std::size_t> rank(g.num_vertices());
  std::size_t next = 0;
  for (Vertex comp : cond.topo) {
    for (Vertex v : cond.members[comp]) rank[v] = next++;
  }
  return rank;
}

SequenceSet ohsdr_step(const DiGraph& g, const SequenceSet& seqs,
                       std::span<const std::size_t> rank) {
  const auto n = static_cast<Eigen::Index>(g.num_vertices());
  const auto q = static_cast<Eigen::Index>(seqs.sequences.size());

  // B[q, v] = 1-based position of v in q.
  MaxMinMatrix<Scalar> b = MaxMinMatrix<Scalar>::Constant(q, n, neg_inf<Scalar>());
  for (Eigen::Index i = 0; i < q; ++i) {
    const auto& seq = seqs.sequences[static_cast<std::size_t>(i)].vertices;
    for (std::size_t j = 0; j < seq.size(); ++j) b(i, seq[j]) = static_cast<Scalar>(j + 1);
  }
  const auto [c, witness] = maxmin_product_with_witness(b, edge_matrix(g));

  SequenceSet out;
  out.paths = seqs.paths;
  out.sequences.reserve(seqs.sequences.size());
  std::vector<std::size_t> label_of(g.num_vertices());
  for (Eigen::Index i = 0; i < q; ++i) {
    const LabeledSequence& in = seqs.sequences[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < in.vertices.size(); ++j) label_of[in.vertices[j]] = in.labels[j];

    LabeledSequence next;
    next.origin = in.origin;
    for (Eigen::Index z = 0; z < n; ++z) {
      const Scalar via_edge = c(i, z);
      const Scalar stay = b(i, z);
      if (via_edge == neg_inf<Scalar>() && stay == neg_inf<Scalar>()) continue;
      const auto zv = static_cast<Vertex>(z);
      next.vertices.push_back(zv);
      // Positions are distinct, so a tie between the two sources is impossible
      // unless z reaches itself through an edge from a later vertex in q.
      if (via_edge > stay) {
        next.labels.push_back(label_of[static_cast<std::size_t>(witness(i, z))]);
      } else {
        next.labels.push_back(label_of[zv]);
      }
    }
    std::vector<std::size_t> order(next.vertices.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
      if (next.labels[x] != next.labels[y]) return next.labels[x] < next.labels[y];
      return rank[next.vertices[x]] < rank[next.vertices[y]];
    });
    LabeledSequence sorted;
    sorted.origin = next.origin;
    for (std::size_t k : order) {
      sorted.vertices.push_back(next.vertices[k]);
      sorted.labels.push_back(next.labels[k]);
    }
    out.sequences.push_back(std::move(sorted));
  }
  return out;
}

PdrResult pdr_solve(const DiGraph& g, const PathCollection& paths, std::size_t hops) {
  for (const auto& p : paths.paths) {
    for (Vertex v : p) {
      if (v >= g.num_vertices()) throw std::invalid_argument("pdr_solve: path vertex out of range");
    }
  }
  const std::vector<std::size_t> rank = topo_rank(g);
  SequenceSet seqs;
  seqs.paths = paths;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    LabeledSequence s;
    s.origin = i;
    s.vertices = paths.paths[i];
    s.labels.resize(s.vertices.size());
    std::iota(s.labels.begin(), s.labels.end(), std::size_t{0});
    seqs.sequences.push_back(std::move(s));
  }
  for (std::size_t h = 0; h < hops; ++h) seqs = ohsdr_step(g, seqs, rank);

  PdrResult out;
  out.per_path.resize(paths.size());
  for (const LabeledSequence& s : seqs.sequences) {
    auto& dst = out.per_path[s.origin];
    for (std::size_t j = 0; j < s.vertices.size(); ++j) {
      dst.emplace_back(s.vertices[j], paths.paths[s.origin][s.labels[j]]);
    }
    std::sort(dst.begin(), dst.end());
  }
  return out;
}

ReachResult dr_solve(const DiGraph& g, const SourceSet& s, std::size_t hops) {
  const BitMatrix a = add_identity(adjacency_matrix(g));
  BitMatrix rows = restrict_rows(BitMatrix::identity(g.num_vertices()), s);
  for (std::size_t h = 0; h < hops; ++h) {
    BitMatrix next = bmm(rows, a);
    if (next == rows) break;
    rows = std::move(next);
  }
  return {s, std::move(rows)};
}

void write_pdr(std::ostream& out, const PdrResult& r) {
  for (std::size_t i = 0; i < r.per_path.size(); ++i) {
    out << "# path " << i << '\n';
    for (const auto& [z, v] : r.per_path[i]) out << z << ' ' << v << '\n';
  }
}

}  // namespace direach
