#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "direach/graph.hpp"
#include "direach/recur.hpp"
#include "direach/shortcut.hpp"

namespace direach {

enum class Algorithm { naive, tc, direach, recur };

/// Throws std::invalid_argument("unknown algorithm ...").
Algorithm parse_algorithm(std::string_view name);
std::string_view to_string(Algorithm a);

struct SolveConfig {
  Algorithm algorithm = Algorithm::direach;
  std::optional<double> delta_override;  // in (0, 1/2]
  std::optional<double> mu_hint;         // in [1, 2]
  int depth = 1;                         // recur only
  SamplingParams sampling;
  unsigned threads = 1;

  void validate() const;
};

struct SolveStats {
  Algorithm algorithm = Algorithm::naive;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t sources = 0;
  double sigma = 0.0;
  double mu = 0.0;
  double delta = 0.0;
  std::size_t d = 0;
  std::size_t shortcut_size = 0;
  std::size_t attempts = 0;
  bool fallback = false;
  bool clamped = false;
  double millis = 0.0;
  std::optional<RecurTrace> trace;
};

struct SolveOutput {
  ReachResult reach;
  SolveStats stats;
};

/// 1 - omega(sigma)/3, clamped into (0, 1/2].
double choose_delta_dense(double sigma);
/// (1 + mu - omega(sigma))/3, clamped into (0, 1/2].
double choose_delta_sparse(double sigma, double mu);
/// max(1, round(n^delta)).
std::size_t hop_target(std::size_t n, double delta);

struct DirectResult {
  ReachResult reach;
  ShortcutReport shortcut;
};

/// Builds a verified d-shortcut, then expands the source rows of
/// adjacency(G + H) + I through d - 1 Boolean products.
DirectResult direach(const DiGraph& g, const SourceSet& s, std::size_t d,
                     const SamplingParams& params, unsigned threads = 1);

/// The product phase alone, for an already chosen shortcut edge set.
ReachResult reach_with_shortcut(const DiGraph& g, std::span<const Edge> h, const SourceSet& s,
                                std::size_t d, unsigned threads = 1);

SolveOutput solve(const DiGraph& g, const SourceSet& s, const SolveConfig& cfg);

/// "# stats key=value ..." on one line.
std::string format_stats(const SolveStats& st);

}  // namespace direach
