#include "direach/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace direach {

namespace {

std::string at_line(const std::string& what, std::size_t line) {
  return what + " at line " + std::to_string(line);
}

// Next line that is neither blank nor a '#' comment.
bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

// Parses exactly two unsigned integers from `line`.
bool parse_pair(const std::string& line, unsigned long long& a, unsigned long long& b) {
  std::istringstream ss(line);
  if (!(ss >> a >> b)) return false;
  std::string rest;
  return !(ss >> rest);
}

void bfs_rows(const DiGraph& g, const SourceSet& s, BitMatrix& rows, std::size_t begin,
              std::size_t end, std::size_t max_hops) {
  const std::size_t n = g.num_vertices();
  std::vector<std::size_t> depth(n, SIZE_MAX);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (std::size_t i = begin; i < end; ++i) {
    queue.clear();
    const Vertex src = s[i];
    depth[src] = 0;
    queue.push_back(src);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      rows.set(i, u);
      if (depth[u] == max_hops) continue;
      for (Vertex v : g.out(u)) {
        if (depth[v] == SIZE_MAX) {
          depth[v] = depth[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (Vertex u : queue) depth[u] = SIZE_MAX;
  }
}

}  // namespace

DiGraph DiGraph::from_edges(std::size_t n, std::vector<Edge> edges) {
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n) throw std::out_of_range("edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  DiGraph g;
  g.offsets_.assign(n + 1, 0);
  g.targets_.reserve(edges.size());
  for (const Edge& e : edges) {
    ++g.offsets_[e.from + 1];
    g.targets_.push_back(e.to);
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  return g;
}

bool DiGraph::has_edge(Vertex u, Vertex v) const {
  const auto nbrs = out(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

DiGraph DiGraph::reversed() const {
  std::vector<Edge> rev;
  rev.reserve(num_edges());
  for (const Edge& e : edges()) rev.push_back({e.to, e.from});
  return from_edges(num_vertices(), std::move(rev));
}

DiGraph DiGraph::with_edges(std::span<const Edge> extra) const {
  auto all = edges();
  all.insert(all.end(), extra.begin(), extra.end());
  return from_edges(num_vertices(), std::move(all));
}

std::vector<Edge> DiGraph::edges() const {
  std::vector<Edge> out_edges;
  out_edges.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (Vertex v : out(u)) out_edges.push_back({u, v});
  }
  return out_edges;
}

SourceSet::SourceSet(std::vector<Vertex> ids, std::size_t n) : ids_(std::move(ids)) {
  std::vector<bool> seen(n, false);
  for (Vertex v : ids_) {
    if (v >= n) throw std::invalid_argument("source id " + std::to_string(v) + " out of range");
    if (seen[v]) throw std::invalid_argument("duplicate source id " + std::to_string(v));
    seen[v] = true;
  }
}

SourceSet SourceSet::all(std::size_t n) {
  std::vector<Vertex> ids(n);
  std::iota(ids.begin(), ids.end(), Vertex{0});
  return SourceSet(std::move(ids), n);
}

double SourceSet::sigma(std::size_t n) const {
  if (n <= 1 || ids_.empty()) return 0.0;
  return std::log(static_cast<double>(ids_.size())) / std::log(static_cast<double>(n));
}

DiGraph load_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError("empty input");
  unsigned long long n = 0, m = 0;
  if (!parse_pair(line, n, m)) throw ParseError(at_line("malformed header", lineno));

  std::vector<Edge> edges;
  edges.reserve(m);
  for (unsigned long long i = 0; i < m; ++i) {
    if (!next_content_line(in, line, lineno)) {
      throw ParseError("expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    }
    unsigned long long u = 0, v = 0;
    if (!parse_pair(line, u, v)) throw ParseError(at_line("malformed line", lineno));
    if (u >= n || v >= n) throw ParseError(at_line("vertex id out of range", lineno));
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (next_content_line(in, line, lineno)) {
    throw ParseError(at_line("unexpected trailing content", lineno));
  }
  return DiGraph::from_edges(n, std::move(edges));
}

void write_edge_list(std::ostream& out, const DiGraph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.from << ' ' << e.to << '\n';
}

SourceSet load_sources(std::istream& in, std::size_t n) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<Vertex> ids;
  while (next_content_line(in, line, lineno)) {
    std::istringstream ss(line);
    unsigned long long v = 0;
    std::string rest;
    if (!(ss >> v) || (ss >> rest)) throw ParseError(at_line("malformed source", lineno));
    if (v >= n) throw ParseError(at_line("vertex id out of range", lineno));
    ids.push_back(static_cast<Vertex>(v));
  }
  try {
    return SourceSet(std::move(ids), n);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

DiGraph gen_random(std::size_t n, double mu, std::uint64_t seed, bool dag) {
  if (n < 2) throw std::invalid_argument("gen_random: n must be at least 2");
  if (!(mu >= 1.0 && mu <= 2.0)) throw std::invalid_argument("gen_random: mu must be in [1, 2]");
  const double requested = std::round(std::pow(static_cast<double>(n), mu));
  const std::uint64_t pairs = dag ? std::uint64_t{n} * (n - 1) / 2 : std::uint64_t{n} * (n - 1);
  if (requested > static_cast<double>(pairs)) throw std::invalid_argument("density infeasible");
  const auto m = static_cast<std::uint64_t>(requested);

  std::mt19937_64 rng(seed);
  // Floyd's algorithm: m distinct indices from [0, pairs).
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(m * 2);
  std::vector<std::uint64_t> order;
  order.reserve(m);
  for (std::uint64_t j = pairs - m; j < pairs; ++j) {
    const std::uint64_t t = std::uniform_int_distribution<std::uint64_t>(0, j)(rng);
    const std::uint64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    order.push_back(pick);
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  if (!dag) {
    // Index -> ordered pair (u, v), v != u.
    for (std::uint64_t idx : order) {
      const auto u = static_cast<Vertex>(idx / (n - 1));
      auto v = static_cast<Vertex>(idx % (n - 1));
      if (v >= u) ++v;
      edges.push_back({u, v});
    }
  } else {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    // Index -> unordered pair (a < b) by row-major walk of the upper triangle.
    for (std::uint64_t idx : order) {
      std::uint64_t a = 0;
      std::uint64_t row_len = n - 1;
      while (idx >= row_len) {
        idx -= row_len;
        ++a;
        --row_len;
      }
      const std::uint64_t b = a + 1 + idx;
      edges.push_back({perm[a], perm[b]});
    }
  }
  return DiGraph::from_edges(n, std::move(edges));
}

Condensation scc_condense(const DiGraph& g) {
  // Iterative Tarjan. Components come out in reverse topological order.
  const std::size_t n = g.num_vertices();
  constexpr Vertex kUnset = UINT32_MAX;
  std::vector<Vertex> index(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<Vertex> stack;
  std::vector<bool> on_stack(n, false);
  std::vector<std::pair<Vertex, std::size_t>> call;
  Vertex next_index = 0;
  Vertex ncomp = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    call.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [u, pos] = call.back();
      const auto nbrs = g.out(u);
      if (pos < nbrs.size()) {
        const Vertex v = nbrs[pos++];
        if (index[v] == kUnset) {
          index[v] = low[v] = next_index++;
          stack.push_back(v);
          on_stack[v] = true;
          call.push_back({v, 0});
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      const Vertex done = u;
      if (low[done] == index[done]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
        } while (w != done);
        ++ncomp;
      }
      call.pop_back();
      if (!call.empty()) {
        const Vertex parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }

  Condensation c;
  c.scc_id.resize(n);
  c.members.assign(ncomp, {});
  for (Vertex v = 0; v < n; ++v) {
    c.scc_id[v] = ncomp - 1 - comp[v];
    c.members[c.scc_id[v]].push_back(v);
  }
  std::vector<Edge> dag_edges;
  for (const Edge& e : g.edges()) {
    const Vertex a = c.scc_id[e.from], b = c.scc_id[e.to];
    if (a != b) dag_edges.push_back({a, b});
  }
  c.dag = DiGraph::from_edges(ncomp, std::move(dag_edges));
  c.topo.resize(ncomp);
  std::iota(c.topo.begin(), c.topo.end(), Vertex{0});
  return c;
}

namespace {

ReachResult sharded_bfs(const DiGraph& g, const SourceSet& s, std::size_t max_hops,
                        unsigned threads) {
  BitMatrix rows(s.size(), g.num_vertices());
  const std::size_t k = s.size();
  // Each row owns its words, so shards never write the same memory.
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(k)));
  if (t <= 1) {
    bfs_rows(g, s, rows, 0, k, max_hops);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < t; ++w) {
      const std::size_t lo = k * w / t, hi = k * (w + 1) / t;
      pool.emplace_back([&, lo, hi] { bfs_rows(g, s, rows, lo, hi, max_hops); });
    }
  }
  return {s, std::move(rows)};
}

}  // namespace

ReachResult multi_source_reach(const DiGraph& g, const SourceSet& s, unsigned threads) {
  return sharded_bfs(g, s, SIZE_MAX, threads);
}

ReachResult bounded_hop_reach(const DiGraph& g, const SourceSet& s, std::size_t d,
                              unsigned threads) {
  return sharded_bfs(g, s, d, threads);
}

}  // namespace direach
