#include "direach/direach.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "direach/boolmat.hpp"
#include "direach/planner.hpp"

namespace direach {

namespace {

constexpr double kMinDelta = 1e-12;

double clamp_delta(double delta) { return std::clamp(delta, kMinDelta, 0.5); }

// log_n m clamped into [1, 2]; the graph's own density exponent.
double measured_mu(const DiGraph& g) {
  const std::size_t n = g.num_vertices();
  const std::size_t m = g.num_edges();
  if (n <= 1 || m <= 1) return 1.0;
  return std::clamp(std::log(static_cast<double>(m)) / std::log(static_cast<double>(n)), 1.0, 2.0);
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "naive") return Algorithm::naive;
  if (name == "tc") return Algorithm::tc;
  if (name == "direach") return Algorithm::direach;
  if (name == "recur") return Algorithm::recur;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::naive: return "naive";
    case Algorithm::tc: return "tc";
    case Algorithm::direach: return "direach";
    case Algorithm::recur: return "recur";
  }
  return "?";
}

void SolveConfig::validate() const {
  if (delta_override && !(*delta_override > 0.0 && *delta_override <= 0.5)) {
    throw std::invalid_argument("delta must be in (0, 0.5]");
  }
  if (mu_hint && !(*mu_hint >= 1.0 && *mu_hint <= 2.0)) {
    throw std::invalid_argument("mu must be in [1, 2]");
  }
  if (depth < 0 || depth > kMaxRecursionDepth) {
    throw std::invalid_argument("depth k must be in [0, " + std::to_string(kMaxRecursionDepth) + "]");
  }
  sampling.validate();
}

double choose_delta_dense(double sigma) {
  return clamp_delta(1.0 - default_planner().omega(sigma) / 3.0);
}

double choose_delta_sparse(double sigma, double mu) {
  if (!(mu >= 1.0 && mu <= 2.0)) throw std::out_of_range("mu outside [1, 2]");
  return clamp_delta((1.0 + mu - default_planner().omega(sigma)) / 3.0);
}

std::size_t hop_target(std::size_t n, double delta) {
  if (n <= 1) return 1;
  const double d = std::round(std::pow(static_cast<double>(n), delta));
  return std::max<std::size_t>(1, static_cast<std::size_t>(d));
}

ReachResult reach_with_shortcut(const DiGraph& g, std::span<const Edge> h, const SourceSet& s,
                                std::size_t d, unsigned threads) {
  if (d < 1) throw std::invalid_argument("hop target must be >= 1");
  const BitMatrix a = add_identity(adjacency_matrix(g.with_edges(h)));
  BitMatrix b = restrict_rows(a, s);
  for (std::size_t step = 1; step < d; ++step) {
    BitMatrix next = bmm(b, a, threads);
    if (next == b) break;
    b = std::move(next);
  }
  return {s, std::move(b)};
}

DirectResult direach(const DiGraph& g, const SourceSet& s, std::size_t d,
                     const SamplingParams& params, unsigned threads) {
  DirectResult out{{}, build_d_shortcut(g, d, params)};
  out.reach = reach_with_shortcut(g, out.shortcut.set.edges, s, out.shortcut.set.d_target, threads);
  return out;
}

SolveOutput solve(const DiGraph& g, const SourceSet& s, const SolveConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  SolveOutput out;
  SolveStats& st = out.stats;
  st.algorithm = cfg.algorithm;
  st.n = g.num_vertices();
  st.m = g.num_edges();
  st.sources = s.size();
  st.sigma = s.sigma(st.n);
  st.mu = cfg.mu_hint.value_or(measured_mu(g));

  auto fill_shortcut = [&](const ShortcutReport& r) {
    st.d = r.set.d_target;
    st.shortcut_size = r.set.edges.size();
    st.attempts = r.attempts;
    st.fallback = r.fallback;
    st.clamped = r.clamped;
  };

  switch (cfg.algorithm) {
    case Algorithm::naive:
      out.reach = multi_source_reach(g, s, cfg.threads);
      break;
    case Algorithm::tc:
      out.reach = {s, restrict_rows(transitive_closure(g, cfg.threads), s)};
      break;
    case Algorithm::direach: {
      st.delta = cfg.delta_override.value_or(choose_delta_sparse(st.sigma, st.mu));
      auto r = direach(g, s, hop_target(st.n, st.delta), cfg.sampling, cfg.threads);
      fill_shortcut(r.shortcut);
      out.reach = std::move(r.reach);
      break;
    }
    case Algorithm::recur: {
      st.delta = cfg.delta_override.value_or(
          std::max(1e-12, choose_delta_recursive(st.sigma, cfg.depth, st.mu)));
      auto r = recur_direach(g, s, hop_target(st.n, st.delta), cfg.depth, cfg.sampling, st.mu);
      fill_shortcut(r.shortcut);
      out.reach = std::move(r.reach);
      r.trace.levels.back().delta = st.delta;
      st.trace = std::move(r.trace);
      break;
    }
  }
  st.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  return out;
}

std::string format_stats(const SolveStats& st) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(6);
  ss << "# stats algo=" << to_string(st.algorithm) << " n=" << st.n << " m=" << st.m
     << " sources=" << st.sources << " sigma=" << st.sigma << " mu=" << st.mu;
  if (st.algorithm == Algorithm::direach || st.algorithm == Algorithm::recur) {
    ss << " delta=" << st.delta << " D=" << st.d << " H=" << st.shortcut_size
       << " attempts=" << st.attempts << " retries=" << (st.attempts ? st.attempts - 1 : 0)
       << " fallback=" << (st.fallback ? "true" : "false")
       << " clamped=" << (st.clamped ? "true" : "false");
  }
  if (st.trace) ss << " levels=" << st.trace->levels.size();
  ss.precision(3);
  ss << " ms=" << st.millis;
  return ss.str();
}

}  // namespace direach
