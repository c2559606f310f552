#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace direach {

struct OmegaSample {
  double sigma = 0.0;
  double omega = 2.0;
};

/// Upper bounds on the rectangular multiplication exponent, interpolated
/// piecewise-linearly. An implicit (0, 2) point is added when missing.
class OmegaTable {
 public:
  /// Throws std::invalid_argument unless sigmas are strictly increasing in
  /// [0, 1], end at 1, and the values are non-decreasing and convex.
  explicit OmegaTable(std::vector<OmegaSample> samples);

  /// The published bounds from 0.321334 up to 1.
  static OmegaTable published();
  /// Whitespace-separated "sigma omega" lines; '#' comments allowed.
  static OmegaTable load(std::istream& in);

  OmegaTable without_sample(double sigma) const;

  /// Throws std::out_of_range outside [0, 1].
  double operator()(double sigma) const;
  const std::vector<OmegaSample>& samples() const { return samples_; }
  /// Largest tabulated sigma with omega == 2.
  double dual_exponent() const;
  double omega_one() const { return samples_.back().omega; }

 private:
  std::vector<OmegaSample> samples_;
};

/// Exponent values on a uniform sigma grid over [0, 1]. `deltas` holds the
/// balance point chosen at each grid sigma (empty for level 0).
struct ExponentCurve {
  int k = 0;
  double mu = 2.0;
  double step = 1e-4;
  Eigen::ArrayXd values;
  Eigen::ArrayXd deltas;

  double operator()(double sigma) const;
};

struct FeasibilityInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool capped = false;  // hi was cut to the dense limit 2
  bool empty = false;
};

class Planner {
 public:
  explicit Planner(OmegaTable table = OmegaTable::published(), double step = 1e-4);

  const OmegaTable& table() const { return table_; }
  double step() const { return step_; }

  double omega(double sigma) const { return table_(sigma); }
  double g0(double sigma) const;
  double g0_mu(double sigma, double mu) const;
  double gk(double sigma, int k) const { return gk_mu(sigma, 2.0, k); }
  double gk_mu(double sigma, double mu, int k) const;

  /// Grid curve for depth k at density mu; built once and cached.
  const ExponentCurve& curve(int k, double mu = 2.0) const;

  FeasibilityInterval feasibility_interval(double sigma) const;
  double sigma_tilde() const;
  double sigma_k(int k, double mu = 2.0) const;

  /// The delta in [0, 1/2] balancing level(1 - 2 delta) against
  /// omega(sigma) + delta, where level is the depth-`level` curve, or
  /// x -> mu + x for level -1. Clamps to an endpoint when the curves do not
  /// cross inside the interval.
  double balance_delta(double sigma, int level, double mu = 2.0) const;
  /// Value of the depth-`level` curve (level >= -1) at x.
  double level_value(double x, int level, double mu) const;

  /// CSV regeneration of the exponent tables "T2".."T6".
  void emit_table(std::ostream& out, const std::string& which) const;

 private:
  OmegaTable table_;
  double step_;
  std::size_t points_;
  mutable std::mutex mutex_;
  // Per mu: curves for depth 0, 1, ... built so far.
  mutable std::map<double, std::vector<std::unique_ptr<ExponentCurve>>> cache_;
};

/// Shared planner over the published table.
const Planner& default_planner();

}  // namespace direach
