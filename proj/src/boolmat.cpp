#include "direach/boolmat.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <vector>

namespace direach {

namespace {

void bmm_rows(const BitMatrix& b, const BitMatrix& a, BitMatrix& c, std::size_t lo,
              std::size_t hi) {
  for (std::size_t i = lo; i < hi; ++i) {
    auto dst = c.row_words(i);
    b.for_each_in_row(i, [&](std::size_t t) {
      const auto src = a.row(t);
      for (std::size_t w = 0; w < dst.size(); ++w) dst[w] |= src[w];
    });
  }
}

}  // namespace

BitMatrix bmm(const BitMatrix& b, const BitMatrix& a, unsigned threads) {
  if (b.cols() != a.rows()) {
    throw std::invalid_argument("bmm: inner dimensions differ (" + std::to_string(b.cols()) +
                                " vs " + std::to_string(a.rows()) + ")");
  }
  BitMatrix c(b.rows(), a.cols());
  const std::size_t r = b.rows();
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(r)));
  if (t <= 1) {
    bmm_rows(b, a, c, 0, r);
    return c;
  }
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < t; ++w) {
      pool.emplace_back([&, w] { bmm_rows(b, a, c, r * w / t, r * (w + 1) / t); });
    }
  }
  return c;
}

BitMatrix add_identity(const BitMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("add_identity: matrix is not square");
  BitMatrix out = a;
  for (std::size_t i = 0; i < a.rows(); ++i) out.set(i, i);
  return out;
}

BitMatrix restrict_rows(const BitMatrix& a, const SourceSet& s) {
  BitMatrix out(s.size(), a.cols());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= a.rows()) throw std::invalid_argument("restrict_rows: source out of range");
    out.or_into_row(i, a.row(s[i]));
  }
  return out;
}

BitMatrix adjacency_matrix(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  BitMatrix a(n, n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : g.out(u)) a.set(u, v);
  }
  return a;
}

BitMatrix transitive_closure(const DiGraph& g, unsigned threads) {
  const std::size_t n = g.num_vertices();
  BitMatrix m = add_identity(adjacency_matrix(g));
  std::size_t rounds = 0;
  while ((std::size_t{1} << rounds) < n) ++rounds;
  for (std::size_t i = 0; i < rounds; ++i) {
    BitMatrix next = bmm(m, m, threads);
    if (next == m) break;
    m = std::move(next);
  }
  return m;
}

}  // namespace direach
