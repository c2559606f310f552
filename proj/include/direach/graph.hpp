#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "direach/bitmatrix.hpp"

namespace direach {

using Vertex = std::uint32_t;

struct Edge {
  Vertex from = 0;
  Vertex to = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable digraph in compressed row layout. Neighbour lists are sorted and
/// duplicate-free; self-loops are kept but have no effect on reachability.
class DiGraph {
 public:
  DiGraph() = default;

  /// Builds from an arbitrary edge list. Duplicates are dropped.
  /// Throws std::out_of_range if an endpoint is >= n.
  static DiGraph from_edges(std::size_t n, std::vector<Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size(); }

  std::span<const Vertex> out(Vertex v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  bool has_edge(Vertex u, Vertex v) const;

  DiGraph reversed() const;
  /// Copy of this graph with `extra` edges added (deduplicated).
  DiGraph with_edges(std::span<const Edge> extra) const;
  std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
};

/// Ordered list of distinct source vertices. Order fixes the row order of
/// every result matrix.
class SourceSet {
 public:
  SourceSet() = default;
  /// Throws std::invalid_argument on a duplicate or an id >= n.
  SourceSet(std::vector<Vertex> ids, std::size_t n);

  static SourceSet all(std::size_t n);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  Vertex operator[](std::size_t i) const { return ids_[i]; }
  std::span<const Vertex> ids() const { return ids_; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  /// log_n |S|; 0 when n <= 1 or S is empty.
  double sigma(std::size_t n) const;

  friend bool operator==(const SourceSet&, const SourceSet&) = default;

 private:
  std::vector<Vertex> ids_;
};

/// Strongly connected components. Component ids are numbered in topological
/// order of the component dag, so `topo` is 0..c-1.
struct Condensation {
  std::vector<Vertex> scc_id;
  DiGraph dag;
  std::vector<Vertex> topo;
  std::vector<std::vector<Vertex>> members;

  std::size_t size() const { return members.size(); }
};

struct ReachResult {
  SourceSet sources;
  BitMatrix rows;

  friend bool operator==(const ReachResult&, const ReachResult&) = default;
};

DiGraph load_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const DiGraph& g);
/// One vertex id per line; blank and '#' lines skipped.
SourceSet load_sources(std::istream& in, std::size_t n);

/// m = round(n^mu) distinct non-self-loop edges drawn uniformly with a
/// seeded mt19937_64. With `dag`, the ordered pairs are replaced by unordered
/// pairs oriented along a random permutation.
DiGraph gen_random(std::size_t n, double mu, std::uint64_t seed, bool dag);

Condensation scc_condense(const DiGraph& g);

/// BFS from every source. Rows are independent of `threads`.
ReachResult multi_source_reach(const DiGraph& g, const SourceSet& s, unsigned threads = 1);

/// Rows hold the vertices reachable from each source in at most `d` hops.
ReachResult bounded_hop_reach(const DiGraph& g, const SourceSet& s, std::size_t d,
                              unsigned threads = 1);

}  // namespace direach
