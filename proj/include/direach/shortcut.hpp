#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "direach/bitmatrix.hpp"
#include "direach/graph.hpp"

namespace direach {

/// Vertex sequences, each a dipath in the transitive closure (every element
/// reaches the next).
struct PathCollection {
  std::vector<std::vector<Vertex>> paths;
  bool disjoint = true;

  std::size_t size() const { return paths.size(); }
};

struct SamplingParams {
  double c_path = 4.0;
  double c_vertex = 4.0;
  int max_retries = 4;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument if a constant is < 1 or retries < 0.
  void validate() const;
};

struct ShortcutSet {
  std::vector<Edge> edges;
  std::size_t d_target = 1;
  bool verified = false;
};

struct ShortcutCandidates {
  PathCollection paths;
  SourceSet vertices;
};

struct ShortcutReport {
  ShortcutSet set;
  std::size_t d_requested = 1;
  bool clamped = false;
  std::size_t cover_size = 0;
  std::size_t attempts = 0;
  bool fallback = false;
  std::size_t sampled_paths = 0;
  std::size_t sampled_vertices = 0;
  double c_path = 0.0;
  double c_vertex = 0.0;
};

/// Computes the V'xP' first-reachable-vertex edges. Swappable so the
/// recursive solver can answer it through a lower-depth instance.
using FirstReachFn =
    std::function<std::vector<Edge>(const DiGraph&, const PathCollection&, const SourceSet&)>;

/// Minimum vertex-disjoint path cover of the component dag, by maximum
/// matching over closure pairs. Paths are in component ids.
PathCollection path_cover(const Condensation& cond, const BitMatrix& closure);

/// Expands a component-level cover into vertex paths of the original graph.
PathCollection expand_cover(const Condensation& cond, const PathCollection& comp_paths);

/// Keeps each path with probability min(1, c_path ln n / d) and each vertex
/// with probability min(1, c_vertex ln n / d). Deterministic in params.seed.
ShortcutCandidates sample_shortcut_candidates(const PathCollection& p, std::size_t n,
                                              std::size_t d, const SamplingParams& params);

/// For every (v, p) in V'xP', the edge from v to the first vertex of p that v
/// reaches, if any. Returned as a set with d_target = 1 and verified = false.
ShortcutSet shortcut_edges(const DiGraph& g, const PathCollection& pprime,
                           const SourceSet& vprime);

/// Edges that bring any two vertices of the same path within two hops:
/// split each segment at its middle, join every vertex to the middle on the
/// correct side, recurse on both halves.
std::vector<Edge> path_shortcut_edges(const PathCollection& p);

ShortcutReport build_d_shortcut(const DiGraph& g, std::size_t d, const SamplingParams& params);
ShortcutReport build_d_shortcut_with(const DiGraph& g, std::size_t d,
                                     const SamplingParams& params, const FirstReachFn& first_reach);

/// True iff every edge of h lies in the closure of g and, from every vertex,
/// h.d_target hops in g + h reach everything g reaches.
bool verify_d_shortcut(const DiGraph& g, const ShortcutSet& h, unsigned threads = 1);

void write_shortcut(std::ostream& out, const ShortcutSet& h, std::size_t n);

}  // namespace direach
