#include "direach/shortcut.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <random>
#include <stdexcept>

#include "direach/boolmat.hpp"

namespace direach {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double u01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double keep_probability(double c, std::size_t n, std::size_t d) {
  if (d <= 1 || n <= 1) return 1.0;
  return std::min(1.0, c * std::log(static_cast<double>(n)) / static_cast<double>(d));
}

// Hopcroft-Karp over left/right copies of the dag vertices. Returns match_left.
std::vector<int> max_matching(const std::vector<std::vector<Vertex>>& adj, std::size_t c) {
  constexpr int kNone = -1;
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<int> match_l(c, kNone), match_r(c, kNone);
  std::vector<std::size_t> dist(c);
  std::vector<std::size_t> it(c);

  auto bfs = [&] {
    std::queue<Vertex> q;
    bool found = false;
    for (Vertex u = 0; u < c; ++u) {
      if (match_l[u] == kNone) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      const Vertex u = q.front();
      q.pop();
      for (Vertex v : adj[u]) {
        const int w = match_r[v];
        if (w == kNone) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(static_cast<Vertex>(w));
        }
      }
    }
    return found;
  };

  // Iterative augmenting DFS along the BFS layers.
  auto dfs = [&](Vertex root) {
    std::vector<Vertex> stack{root};
    while (!stack.empty()) {
      const Vertex u = stack.back();
      if (it[u] == adj[u].size()) {
        dist[u] = kInf;
        stack.pop_back();
        continue;
      }
      const Vertex v = adj[u][it[u]];
      const int w = match_r[v];
      if (w == kNone) {
        // Flip the alternating path held on the stack.
        for (std::size_t i = stack.size(); i-- > 0;) {
          const Vertex a = stack[i];
          const Vertex b = adj[a][it[a]];
          match_r[b] = static_cast<int>(a);
          match_l[a] = static_cast<int>(b);
        }
        return true;
      }
      if (dist[w] == dist[u] + 1) {
        stack.push_back(static_cast<Vertex>(w));
      } else {
        ++it[u];
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (Vertex u = 0; u < c; ++u) {
      if (match_l[u] == kNone) dfs(u);
    }
  }
  return match_l;
}

void add_path_shortcuts(const std::vector<Vertex>& p, std::size_t lo, std::size_t hi,
                        std::vector<Edge>& out) {
  if (hi - lo < 3) return;  // segments of <= 2 vertices are already within reach
  const std::size_t mid = lo + (hi - lo) / 2;
  for (std::size_t i = lo; i < mid; ++i) out.push_back({p[i], p[mid]});
  for (std::size_t j = mid + 1; j < hi; ++j) out.push_back({p[mid], p[j]});
  add_path_shortcuts(p, lo, mid, out);
  add_path_shortcuts(p, mid + 1, hi, out);
}

// Sorted, duplicate-free, without self pairs or edges already in g.
void normalize(const DiGraph& g, std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  std::erase_if(edges, [&](const Edge& e) { return e.from == e.to || g.has_edge(e.from, e.to); });
}

std::vector<Edge> closure_edges(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  const ReachResult reach = multi_source_reach(g, SourceSet::all(n));
  std::vector<Edge> out;
  for (Vertex u = 0; u < n; ++u) {
    reach.rows.for_each_in_row(u, [&](std::size_t v) {
      out.push_back({u, static_cast<Vertex>(v)});
    });
  }
  normalize(g, out);
  return out;
}

}  // namespace

void SamplingParams::validate() const {
  if (!(c_path >= 1.0) || !(c_vertex >= 1.0)) {
    throw std::invalid_argument("sampling constants must be >= 1");
  }
  if (max_retries < 0) throw std::invalid_argument("max_retries must be >= 0");
}

PathCollection path_cover(const Condensation& cond, const BitMatrix& closure) {
  const std::size_t c = cond.size();
  if (closure.rows() != c || closure.cols() != c) {
    throw std::invalid_argument("path_cover: closure does not match the condensation");
  }
  std::vector<std::vector<Vertex>> adj(c);
  for (Vertex u = 0; u < c; ++u) {
    closure.for_each_in_row(u, [&](std::size_t v) {
      if (v != u) adj[u].push_back(static_cast<Vertex>(v));
    });
  }
  const std::vector<int> match_l = max_matching(adj, c);
  std::vector<bool> has_pred(c, false);
  for (int v : match_l) {
    if (v >= 0) has_pred[static_cast<std::size_t>(v)] = true;
  }
  PathCollection out;
  for (Vertex start : cond.topo) {
    if (has_pred[start]) continue;
    auto& path = out.paths.emplace_back();
    for (int v = static_cast<int>(start); v >= 0; v = match_l[static_cast<std::size_t>(v)]) {
      path.push_back(static_cast<Vertex>(v));
    }
  }
  return out;
}

PathCollection expand_cover(const Condensation& cond, const PathCollection& comp_paths) {
  PathCollection out;
  out.disjoint = comp_paths.disjoint;
  out.paths.reserve(comp_paths.size());
  for (const auto& cp : comp_paths.paths) {
    auto& path = out.paths.emplace_back();
    for (Vertex comp : cp) {
      const auto& m = cond.members[comp];
      path.insert(path.end(), m.begin(), m.end());
    }
  }
  return out;
}

ShortcutCandidates sample_shortcut_candidates(const PathCollection& p, std::size_t n,
                                              std::size_t d, const SamplingParams& params) {
  params.validate();
  if (d < 1) throw std::invalid_argument("sample_shortcut_candidates: d must be >= 1");
  std::mt19937_64 rng(params.seed);
  const double pp = keep_probability(params.c_path, n, d);
  const double pv = keep_probability(params.c_vertex, n, d);

  ShortcutCandidates out;
  out.paths.disjoint = p.disjoint;
  for (const auto& path : p.paths) {
    if (u01(rng) < pp) out.paths.paths.push_back(path);
  }
  std::vector<Vertex> kept;
  for (Vertex v = 0; v < n; ++v) {
    if (u01(rng) < pv) kept.push_back(v);
  }
  out.vertices = SourceSet(std::move(kept), n);
  return out;
}

ShortcutSet shortcut_edges(const DiGraph& g, const PathCollection& pprime,
                           const SourceSet& vprime) {
  const ReachResult reach = multi_source_reach(g, vprime);
  ShortcutSet out;
  for (std::size_t i = 0; i < vprime.size(); ++i) {
    for (const auto& path : pprime.paths) {
      for (Vertex w : path) {
        if (reach.rows.test(i, w)) {
          out.edges.push_back({vprime[i], w});
          break;
        }
      }
    }
  }
  return out;
}

std::vector<Edge> path_shortcut_edges(const PathCollection& p) {
  std::vector<Edge> out;
  for (const auto& path : p.paths) add_path_shortcuts(path, 0, path.size(), out);
  return out;
}

ShortcutReport build_d_shortcut(const DiGraph& g, std::size_t d, const SamplingParams& params) {
  return build_d_shortcut_with(g, d, params,
                               [](const DiGraph& gg, const PathCollection& pp,
                                  const SourceSet& vv) { return shortcut_edges(gg, pp, vv).edges; });
}

ShortcutReport build_d_shortcut_with(const DiGraph& g, std::size_t d,
                                     const SamplingParams& params,
                                     const FirstReachFn& first_reach) {
  params.validate();
  if (d < 1) throw std::invalid_argument("build_d_shortcut: d must be >= 1");
  const std::size_t n = g.num_vertices();
  const auto ceil_sqrt =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(std::max<std::size_t>(n, 1)))));

  ShortcutReport report;
  report.d_requested = d;
  if (d > ceil_sqrt) {
    d = ceil_sqrt;
    report.clamped = true;
  }

  const Condensation cond = scc_condense(g);
  const BitMatrix closure = transitive_closure(cond.dag);
  const PathCollection cover = expand_cover(cond, path_cover(cond, closure));
  report.cover_size = cover.size();
  const std::vector<Edge> along_paths = path_shortcut_edges(cover);

  SamplingParams attempt = params;
  for (int round = 0; round <= params.max_retries; ++round) {
    attempt.seed = splitmix64(params.seed + static_cast<std::uint64_t>(round));
    ++report.attempts;
    const ShortcutCandidates cand = sample_shortcut_candidates(cover, n, d, attempt);
    std::vector<Edge> edges = first_reach(g, cand.paths, cand.vertices);
    edges.insert(edges.end(), along_paths.begin(), along_paths.end());
    normalize(g, edges);

    report.sampled_paths = cand.paths.size();
    report.sampled_vertices = cand.vertices.size();
    report.c_path = attempt.c_path;
    report.c_vertex = attempt.c_vertex;
    report.set = {std::move(edges), d, false};
    if (verify_d_shortcut(g, report.set)) {
      report.set.verified = true;
      return report;
    }
    const bool saturated = keep_probability(attempt.c_path, n, d) >= 1.0 &&
                           keep_probability(attempt.c_vertex, n, d) >= 1.0;
    if (saturated) break;  // every later attempt would sample the same sets
    attempt.c_path *= 2.0;
    attempt.c_vertex *= 2.0;
  }

  report.fallback = true;
  report.set = {closure_edges(g), d, true};
  return report;
}

bool verify_d_shortcut(const DiGraph& g, const ShortcutSet& h, unsigned threads) {
  const std::size_t n = g.num_vertices();
  const SourceSet all = SourceSet::all(n);
  const ReachResult full = multi_source_reach(g, all, threads);
  for (const Edge& e : h.edges) {
    if (e.from >= n || e.to >= n || !full.rows.test(e.from, e.to)) return false;
  }
  const DiGraph gh = g.with_edges(h.edges);
  return bounded_hop_reach(gh, all, h.d_target, threads).rows == full.rows;
}

void write_shortcut(std::ostream& out, const ShortcutSet& h, std::size_t n) {
  out << "# shortcut d=" << h.d_target << " verified=" << (h.verified ? "true" : "false") << '\n';
  out << n << ' ' << h.edges.size() << '\n';
  for (const Edge& e : h.edges) out << e.from << ' ' << e.to << '\n';
}

}  // namespace direach
