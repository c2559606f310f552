#include "direach/recur.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "direach/direach.hpp"
#include "direach/maxmin.hpp"
#include "direach/planner.hpp"

namespace direach {

namespace {

double log_ratio(std::size_t count, std::size_t n) {
  if (n <= 1 || count == 0) return 0.0;
  return std::clamp(std::log(static_cast<double>(count)) / std::log(static_cast<double>(n)), 0.0,
                    1.0);
}

void record_build(RecurLevel& level, const ShortcutReport& r) {
  level.sampled_paths = r.sampled_paths;
  level.sampled_vertices = r.sampled_vertices;
  ++level.builds;
  level.attempts += r.attempts;
  level.fallbacks += r.fallback ? 1 : 0;
}

}  // namespace

double choose_delta_recursive(double sigma, int k, double mu) {
  if (k < 0) throw std::invalid_argument("depth k must be >= 0");
  return default_planner().balance_delta(sigma, k - 1, mu);
}

ShortcutReport build_shortcut_recursive(const DiGraph& g, std::size_t d, int k,
                                        const SamplingParams& params, double mu,
                                        RecurTrace& trace) {
  if (k < 0 || static_cast<std::size_t>(k) >= trace.levels.size()) {
    throw std::invalid_argument("recursion depth does not fit the trace");
  }
  if (k == 0) {
    ShortcutReport r = build_d_shortcut(g, d, params);
    record_build(trace.levels[0], r);
    return r;
  }

  // Lower levels draw from their own seed stream.
  SamplingParams inner = params;
  inner.seed = params.seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(k);

  auto first_reach = [&](const DiGraph& gg, const PathCollection& pprime,
                         const SourceSet& vprime) {
    std::vector<Edge> edges;
    if (pprime.size() == 0 || vprime.empty()) return edges;
    const std::size_t n = gg.num_vertices();
    RecurLevel& below = trace.levels[static_cast<std::size_t>(k - 1)];
    below.sigma = log_ratio(pprime.size(), n);
    below.delta = std::max(1e-12, choose_delta_recursive(below.sigma, k - 1, mu));
    below.d = hop_target(n, below.delta);

    // Paths become sources on the reversed graph: the last vertex of the
    // reversed path that reaches v there is the first vertex of p that v
    // reaches here.
    const DiGraph rev = gg.reversed();
    const ShortcutReport sub = build_shortcut_recursive(rev, below.d, k - 1, inner, mu, trace);
    PathCollection reversed_paths = pprime;
    for (auto& p : reversed_paths.paths) std::reverse(p.begin(), p.end());
    const PdrResult pdr = pdr_solve(rev.with_edges(sub.set.edges), reversed_paths, below.d);

    for (Vertex v : vprime) {
      for (const auto& hits : pdr.per_path) {
        const auto it = std::lower_bound(hits.begin(), hits.end(), std::pair<Vertex, Vertex>{v, 0});
        if (it != hits.end() && it->first == v) edges.push_back({v, it->second});
      }
    }
    return edges;
  };

  ShortcutReport r = build_d_shortcut_with(g, d, params, first_reach);
  record_build(trace.levels[static_cast<std::size_t>(k)], r);
  return r;
}

RecurResult recur_direach(const DiGraph& g, const SourceSet& s, std::size_t d, int k,
                          const SamplingParams& params, double mu) {
  if (k < 0 || k > kMaxRecursionDepth) {
    throw std::invalid_argument("depth k must be in [0, " + std::to_string(kMaxRecursionDepth) + "]");
  }
  if (d < 1) throw std::invalid_argument("hop target must be >= 1");
  RecurResult out;
  out.trace.levels.resize(static_cast<std::size_t>(k) + 1);
  RecurLevel& top = out.trace.levels.back();
  top.sigma = s.sigma(g.num_vertices());
  top.delta = g.num_vertices() > 1 ? std::log(static_cast<double>(d)) /
                                         std::log(static_cast<double>(g.num_vertices()))
                                   : 0.0;
  top.d = d;
  out.shortcut = build_shortcut_recursive(g, d, k, params, mu, out.trace);
  out.reach = reach_with_shortcut(g, out.shortcut.set.edges, s, out.shortcut.set.d_target);
  return out;
}

void write_trace(std::ostream& out, const RecurTrace& trace) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out.setf(std::ios::fixed);
  out.precision(6);
  for (std::size_t j = trace.levels.size(); j-- > 0;) {
    const RecurLevel& l = trace.levels[j];
    out << "#   level " << j << ": sigma=" << l.sigma << " delta=" << l.delta << " D=" << l.d
        << " paths=" << l.sampled_paths << " vertices=" << l.sampled_vertices
        << " builds=" << l.builds << " attempts=" << l.attempts << " fallbacks=" << l.fallbacks
        << '\n';
  }
  out.flags(flags);
  out.precision(prec);
}

}  // namespace direach
