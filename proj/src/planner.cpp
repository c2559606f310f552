#include "direach/planner.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace direach {

namespace {

constexpr double kDeltaTol = 0.0;  // bisect to the last representable bit
constexpr double kShapeTol = 1e-12;

// Bisection for the root of a decreasing function on [lo, hi].
template <typename F>
double bisect_decreasing(F f, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // no representable midpoint left
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void check_unit(double sigma) {
  if (!(sigma >= 0.0 && sigma <= 1.0)) {
    throw std::out_of_range("sigma " + std::to_string(sigma) + " outside [0, 1]");
  }
}

void check_mu(double mu) {
  if (!(mu >= 1.0 && mu <= 2.0)) {
    throw std::out_of_range("mu " + std::to_string(mu) + " outside [1, 2]");
  }
}

}  // namespace

OmegaTable::OmegaTable(std::vector<OmegaSample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw std::invalid_argument("omega table is empty");
  if (samples_.front().sigma > 0.0) samples_.insert(samples_.begin(), OmegaSample{0.0, 2.0});
  if (samples_.front().sigma < 0.0) throw std::invalid_argument("omega table: sigma below 0");
  if (samples_.back().sigma != 1.0) throw std::invalid_argument("omega table must end at sigma = 1");
  double prev_slope = -1.0;
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    const OmegaSample& a = samples_[i - 1];
    const OmegaSample& b = samples_[i];
    if (!(b.sigma > a.sigma)) throw std::invalid_argument("omega table: sigmas not increasing");
    if (b.omega < a.omega) throw std::invalid_argument("omega table: values decrease");
    const double slope = (b.omega - a.omega) / (b.sigma - a.sigma);
    if (slope < prev_slope - kShapeTol) throw std::invalid_argument("omega table: not convex");
    prev_slope = slope;
  }
}

OmegaTable OmegaTable::published() {
  return OmegaTable({{0.321334, 2.0},     {0.33, 2.0001},      {0.34, 2.0006},
                     {0.35, 2.001363},    {0.40, 2.009541},    {0.45, 2.023788},
                     {0.50, 2.042994},    {0.527661, 2.055322}, {0.55, 2.066134},
                     {0.60, 2.092631},    {0.65, 2.121734},    {0.70, 2.153048},
                     {0.75, 2.186210},    {0.80, 2.220929},    {0.85, 2.256984},
                     {0.90, 2.294209},    {0.95, 2.332440},    {1.00, 2.371552}});
}

OmegaTable OmegaTable::load(std::istream& in) {
  std::vector<OmegaSample> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    OmegaSample s;
    std::string rest;
    if (!(ss >> s.sigma >> s.omega) || (ss >> rest)) {
      throw std::invalid_argument("omega table: malformed line " + std::to_string(lineno));
    }
    samples.push_back(s);
  }
  return OmegaTable(std::move(samples));
}

OmegaTable OmegaTable::without_sample(double sigma) const {
  std::vector<OmegaSample> kept;
  for (const OmegaSample& s : samples_) {
    if (s.sigma != sigma) kept.push_back(s);
  }
  return OmegaTable(std::move(kept));
}

double OmegaTable::operator()(double sigma) const {
  check_unit(sigma);
  const auto it = std::lower_bound(samples_.begin(), samples_.end(), sigma,
                                   [](const OmegaSample& s, double x) { return s.sigma < x; });
  if (it->sigma == sigma) return it->omega;
  const OmegaSample& b = *it;
  const OmegaSample& a = *(it - 1);
  const double t = (sigma - a.sigma) / (b.sigma - a.sigma);
  return a.omega + t * (b.omega - a.omega);
}

double OmegaTable::dual_exponent() const {
  double alpha = 0.0;
  for (const OmegaSample& s : samples_) {
    if (s.omega <= 2.0) alpha = s.sigma;
  }
  return alpha;
}

double ExponentCurve::operator()(double sigma) const {
  const double x = std::clamp(sigma, 0.0, 1.0) / step;
  const auto last = static_cast<Eigen::Index>(values.size() - 1);
  const auto i = std::min(static_cast<Eigen::Index>(std::floor(x)), last);
  if (i == last) return values[last];
  const double t = x - static_cast<double>(i);
  return values[i] + t * (values[i + 1] - values[i]);
}

Planner::Planner(OmegaTable table, double step) : table_(std::move(table)), step_(step) {
  if (!(step > 0.0 && step <= 0.1)) throw std::invalid_argument("planner step must be in (0, 0.1]");
  points_ = static_cast<std::size_t>(std::llround(1.0 / step)) + 1;
  step_ = 1.0 / static_cast<double>(points_ - 1);
}

double Planner::g0(double sigma) const { return 1.0 + 2.0 / 3.0 * omega(sigma); }

double Planner::g0_mu(double sigma, double mu) const {
  check_mu(mu);
  return (1.0 + mu + 2.0 * omega(sigma)) / 3.0;
}

double Planner::gk_mu(double sigma, double mu, int k) const {
  check_unit(sigma);
  if (k < 0) throw std::invalid_argument("depth k must be >= 0");
  if (k == 0) return g0_mu(sigma, mu);
  return curve(k, mu)(sigma);
}

double Planner::level_value(double x, int level, double mu) const {
  if (level < 0) return mu + x;
  if (level == 0) return g0_mu(std::clamp(x, 0.0, 1.0), mu);
  return curve(level, mu)(x);
}

double Planner::balance_delta(double sigma, int level, double mu) const {
  check_unit(sigma);
  check_mu(mu);
  if (level < -1) throw std::invalid_argument("balance level must be >= -1");
  if (level >= 1) curve(level, mu);  // build outside the hot loop
  const double w = omega(sigma);
  auto f = [&](double d) { return level_value(1.0 - 2.0 * d, level, mu) - w - d; };
  if (f(0.0) <= 0.0) return 0.0;
  if (f(0.5) > 0.0) return 0.5;
  return bisect_decreasing(f, 0.0, 0.5, kDeltaTol);
}

const ExponentCurve& Planner::curve(int k, double mu) const {
  if (k < 0) throw std::invalid_argument("depth k must be >= 0");
  check_mu(mu);
  std::lock_guard lock(mutex_);
  auto& levels = cache_[mu];
  while (static_cast<int>(levels.size()) <= k) {
    auto c = std::make_unique<ExponentCurve>();
    c->k = static_cast<int>(levels.size());
    c->mu = mu;
    c->step = step_;
    c->values.resize(static_cast<Eigen::Index>(points_));
    if (c->k == 0) {
      for (std::size_t i = 0; i < points_; ++i) {
        const double s = std::min(1.0, static_cast<double>(i) * step_);
        c->values[static_cast<Eigen::Index>(i)] = (1.0 + mu + 2.0 * table_(s)) / 3.0;
      }
    } else {
      const ExponentCurve& prev = *levels.back();
      const auto prev_at = [&](double x) {
        return prev.k == 0 ? (1.0 + mu + 2.0 * table_(std::clamp(x, 0.0, 1.0))) / 3.0 : prev(x);
      };
      c->deltas.resize(static_cast<Eigen::Index>(points_));
      for (std::size_t i = 0; i < points_; ++i) {
        const double s = std::min(1.0, static_cast<double>(i) * step_);
        const double w = table_(s);
        auto f = [&](double d) { return prev_at(1.0 - 2.0 * d) - w - d; };
        double delta = 0.0;
        double value = 0.0;
        if (f(0.0) <= 0.0) {
          value = w;
        } else if (f(0.5) > 0.0) {
          delta = 0.5;
          value = prev_at(0.0);
        } else {
          delta = bisect_decreasing(f, 0.0, 0.5, kDeltaTol);
          value = w + delta;
        }
        c->values[static_cast<Eigen::Index>(i)] = value;
        c->deltas[static_cast<Eigen::Index>(i)] = delta;
      }
    }
    levels.push_back(std::move(c));
  }
  return *levels[static_cast<std::size_t>(k)];
}

FeasibilityInterval Planner::feasibility_interval(double sigma) const {
  FeasibilityInterval out;
  const double w = omega(sigma);
  out.lo = w + 0.5 - 1.5 * sigma;
  const double upper = 3.0 * table_.omega_one() - 2.0 * w - 1.0;
  out.capped = upper > 2.0;
  out.hi = std::min(2.0, upper);
  out.empty = out.lo >= out.hi - 1e-12;
  return out;
}

double Planner::sigma_tilde() const {
  // omega(s) - 1.5 (1 + s) is positive just above 1/3 and negative by 0.34.
  auto f = [&](double s) { return omega(s) - 1.5 * (1.0 + s); };
  return bisect_decreasing(f, 1.0 / 3.0, 0.34, 1e-13);
}

double Planner::sigma_k(int k, double mu) const {
  const double target = table_.omega_one();
  auto f = [&](double s) { return target - gk_mu(s, mu, k); };
  const double lo = sigma_tilde();
  if (f(1.0) >= 0.0) return 1.0;
  if (f(lo) <= 0.0) return lo;
  return bisect_decreasing(f, lo, 1.0, 1e-12);
}

void Planner::emit_table(std::ostream& out, const std::string& which) const {
  const auto old_flags = out.flags();
  const auto old_prec = out.precision();
  out << std::fixed << std::setprecision(6);
  if (which == "T2") {
    out << "sigma,naive,g0,square\n";
    std::vector<double> rows{0.335};
    for (int i = 34; i <= 53; ++i) rows.push_back(i / 100.0);
    for (double s : rows) {
      out << s << ',' << 2.0 + s << ',' << g0(s) << ',' << table_.omega_one() << '\n';
    }
  } else if (which == "T3") {
    out << "sigma,mu_lower\n";
    for (double s : {0.0, 0.34, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0}) {
      out << s << ',' << feasibility_interval(s).lo << '\n';
    }
  } else if (which == "T4") {
    out << "sigma,mu_lo,mu_hi,capped,empty\n";
    for (double s : {0.335, 0.34, 0.4, 0.5, 0.55, 0.6, 0.7, 0.8, 0.9, 0.99, 1.0}) {
      const FeasibilityInterval iv = feasibility_interval(s);
      out << s << ',' << iv.lo << ',' << iv.hi << ',' << (iv.capped ? 1 : 0) << ','
          << (iv.empty ? 1 : 0) << '\n';
    }
  } else if (which == "T5") {
    const std::vector<int> depths{0, 1, 3, 5, 7, 9};
    out << "sigma";
    for (int k : depths) out << ",g" << k;
    out << '\n';
    for (double s : {0.34, 0.36, 0.40, 0.44, 0.48, 0.52, 0.54, 0.56, 0.60, 0.64, 0.66,
                     0.68, 0.72, 0.76, 0.80, 0.84, 0.85, 0.88, 0.92, 0.93, 0.96, 0.97, 0.98}) {
      out << s;
      for (int k : depths) out << ',' << gk(s, k);
      out << '\n';
    }
  } else if (which == "T6") {
    out << "mu,sigma,g0_mu\n";
    const std::vector<std::pair<double, std::vector<double>>> rows{
        {1.95, {0.375, 0.4, 0.45, 0.5}},
        {1.9, {0.45, 0.5, 0.55, 0.6}},
        {1.75, {0.55, 0.6, 0.65, 0.7}},
        {1.525, {0.8, 0.85, 0.9}}};
    for (const auto& [mu, sigmas] : rows) {
      for (double s : sigmas) out << mu << ',' << s << ',' << g0_mu(s, mu) << '\n';
    }
  } else {
    out.flags(old_flags);
    out.precision(old_prec);
    throw std::invalid_argument("unknown table " + which + " (expected T2..T6)");
  }
  out.flags(old_flags);
  out.precision(old_prec);
}

const Planner& default_planner() {
  static const Planner planner;
  return planner;
}

}  // namespace direach
