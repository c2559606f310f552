#pragma once

#include <iosfwd>
#include <vector>

#include "direach/graph.hpp"
#include "direach/shortcut.hpp"

namespace direach {

struct RecurLevel {
  double sigma = 0.0;
  double delta = 0.0;
  std::size_t d = 1;
  std::size_t sampled_paths = 0;
  std::size_t sampled_vertices = 0;
  std::size_t builds = 0;
  std::size_t attempts = 0;
  std::size_t fallbacks = 0;
};

/// One entry per depth, levels[j] describing the depth-j shortcut builds.
struct RecurTrace {
  std::vector<RecurLevel> levels;
};

struct RecurResult {
  ReachResult reach;
  ShortcutReport shortcut;
  RecurTrace trace;
};

constexpr int kMaxRecursionDepth = 8;

/// The delta balancing the depth-(k-1) curve at 1 - 2 delta against
/// omega(sigma) + delta (depth -1 being x -> mu + x, so k = 0 gives the
/// single-level choice).
double choose_delta_recursive(double sigma, int k, double mu = 2.0);

/// Depth-k shortcut: at k = 0 the plain builder; above that the first-reach
/// edges come from path direachability on the reversed graph, made shallow by
/// a depth-(k-1) shortcut of its own. `trace` must hold at least k + 1 levels.
ShortcutReport build_shortcut_recursive(const DiGraph& g, std::size_t d, int k,
                                        const SamplingParams& params, double mu,
                                        RecurTrace& trace);

RecurResult recur_direach(const DiGraph& g, const SourceSet& s, std::size_t d, int k,
                          const SamplingParams& params, double mu = 2.0);

/// "#   level j: ..." lines, deepest level last.
void write_trace(std::ostream& out, const RecurTrace& trace);

}  // namespace direach
