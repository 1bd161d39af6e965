#include "mpps/counting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mpps/kratzel.hpp"

namespace mpps {

namespace {

void require_count(int n, const char* what) {
  if (n < 0) throw std::domain_error(std::string(what) + ": count must be >= 0");
}

void require_intensity(double lam_t, const char* what) {
  if (!(lam_t >= 0.0) || !std::isfinite(lam_t)) {
    throw std::domain_error(std::string(what) + ": lambda(t) must be >= 0");
  }
}

// log of |c| Z_{-c}^{-c alpha - total}(arg) / (beta^total Gamma(alpha)).
double log_kernel(const StacyParams& p, double total, double arg) {
  const double c = p.c(), a = p.alpha();
  return std::log(std::abs(c)) + log_kratzel(-c, -c * a - total, arg) - total * std::log(p.beta()) -
         log_gamma_fn(a);
}

}  // namespace

IntensityFn::IntensityFn(Map cumulative, Map inverse, std::string label)
    : cumulative_(std::move(cumulative)), inverse_(std::move(inverse)), label_(std::move(label)) {}

IntensityFn IntensityFn::power_law(double scale, double exponent) {
  if (!(scale > 0.0) || !std::isfinite(scale) || !(exponent > 0.0) || !std::isfinite(exponent)) {
    throw std::domain_error("IntensityFn: power law needs scale > 0 and exponent > 0");
  }
  std::ostringstream label;
  label.precision(17);
  label << scale << "*t^" << exponent;
  return IntensityFn([scale, exponent](double t) { return scale * std::pow(t, exponent); },
                     [scale, exponent](double s) { return std::pow(s / scale, 1.0 / exponent); },
                     label.str());
}

IntensityFn IntensityFn::custom(Map cumulative, Map inverse, std::string label) {
  if (!cumulative || !inverse) throw std::domain_error("IntensityFn: both maps are required");
  return IntensityFn(std::move(cumulative), std::move(inverse), std::move(label));
}

double IntensityFn::operator()(double t) const {
  if (!(t >= 0.0)) throw std::domain_error("IntensityFn: t must be >= 0");
  return cumulative_(t);
}

double IntensityFn::inverse(double s) const {
  if (!(s >= 0.0)) throw std::domain_error("IntensityFn: s must be >= 0");
  return inverse_(s);
}

TimeGrid::TimeGrid(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  if (lambdas_.empty()) throw std::domain_error("TimeGrid: at least one epoch is required");
  double prev = 0.0;
  for (double l : lambdas_) {
    if (!std::isfinite(l) || !(l > prev)) {
      throw std::domain_error("TimeGrid: epochs must be positive and strictly increasing");
    }
    prev = l;
  }
}

std::size_t SamplePath::count_at(double t) const {
  return static_cast<std::size_t>(std::upper_bound(arrivals.begin(), arrivals.end(), t) - arrivals.begin());
}

double mpstacy_log_pmf(const StacyParams& p, int n) {
  require_count(n, "mpstacy_pmf");
  const double k = n;
  return log_kernel(p, k, 1.0 / p.beta()) - log_gamma_fn(k + 1.0);
}

double mpstacy_pmf(const StacyParams& p, int n) { return std::exp(mpstacy_log_pmf(p, n)); }

double mpps_count_pmf(const StacyParams& p, double lam_t, int n) {
  require_count(n, "mpps_count_pmf");
  require_intensity(lam_t, "mpps_count_pmf");
  if (lam_t == 0.0) return n == 0 ? 1.0 : 0.0;
  // MPStacy with beta / lambda, written so that tiny lambda does not overflow.
  const double k = n;
  return std::exp(k * std::log(lam_t) - log_gamma_fn(k + 1.0) + log_kernel(p, k, lam_t / p.beta()));
}

double mpps_count_pmf(const StacyParams& p, const IntensityFn& lam, double t, int n) {
  if (!(t > 0.0)) throw std::domain_error("mpps_count_pmf: t must be > 0");
  return mpps_count_pmf(p, lam(t), n);
}

MeanVariance mpps_mean_var(const StacyParams& p, double lam_t) {
  require_intensity(lam_t, "mpps_mean_var");
  if (lam_t == 0.0) return {MomentValue::finite(0.0), MomentValue::finite(0.0)};
  const MomentValue m1 = stacy_moment(p, 1.0);
  if (!m1.is_finite()) return {MomentValue::infinite(), MomentValue::infinite()};
  const MomentValue m2 = stacy_moment(p, 2.0);
  MeanVariance out{MomentValue::finite(lam_t * m1.value()), MomentValue::infinite()};
  if (m2.is_finite()) {
    const double var_xi = m2.value() - m1.value() * m1.value();
    out.variance = MomentValue::finite(lam_t * m1.value() + lam_t * lam_t * var_xi);
  }
  return out;
}

double mpps_pgf(const StacyParams& p, double lam_t, double z) {
  require_intensity(lam_t, "mpps_pgf");
  if (!(z < 1.0)) throw std::domain_error("mpps_pgf: z must be < 1");
  const double arg = lam_t * (1.0 - z) / p.beta();
  if (arg == 0.0) return 1.0;
  return std::exp(log_kernel(p, 0.0, arg));
}

double conditional_xi_given_count_pdf(const StacyParams& p, double lam_t, int n, double x) {
  require_count(n, "conditional_xi_given_count_pdf");
  if (!(lam_t > 0.0) || !std::isfinite(lam_t)) {
    throw std::domain_error("conditional_xi_given_count_pdf: lambda(t) must be > 0");
  }
  if (!(x > 0.0)) return 0.0;
  const double a = p.alpha(), b = p.beta(), c = p.c();
  const double shape = c * a + n;
  const double log_num = shape * std::log(b) + (shape - 1.0) * std::log(x) - lam_t * x - std::pow(b * x, c);
  return std::exp(log_num - log_kratzel(-c, -shape, lam_t / b));
}

double regression_xi_given_count(const StacyParams& p, double lam_t, int n) {
  require_count(n, "regression_xi_given_count");
  if (!(lam_t > 0.0) || !std::isfinite(lam_t)) {
    throw std::domain_error("regression_xi_given_count: lambda(t) must be > 0");
  }
  const double c = p.c(), b = p.beta();
  const double shape = c * p.alpha() + n;
  const double arg = lam_t / b;
  return std::exp(log_kratzel(-c, -shape - 1.0, arg) - std::log(b) - log_kratzel(-c, -shape, arg));
}

MomentValue factorial_moment(const StacyParams& p, double lam_t, int k) {
  require_count(k, "factorial_moment");
  require_intensity(lam_t, "factorial_moment");
  if (k == 0) return MomentValue::finite(1.0);
  const MomentValue m = stacy_moment(p, k);
  if (!m.is_finite()) return m;
  return MomentValue::finite(std::pow(lam_t, k) * m.value());
}

CountVector increments_from_counts(std::span<const int> counts) {
  CountVector out;
  out.reserve(counts.size());
  int prev = 0;
  for (int k : counts) {
    if (k < prev) throw std::domain_error("increments_from_counts: counts must be nondecreasing and >= 0");
    out.push_back(k - prev);
    prev = k;
  }
  return out;
}

CountVector counts_from_increments(std::span<const int> increments) {
  CountVector out;
  out.reserve(increments.size());
  int total = 0;
  for (int m : increments) {
    if (m < 0) throw std::domain_error("counts_from_increments: increments must be >= 0");
    total += m;
    out.push_back(total);
  }
  return out;
}

double mixed_increments_pmf(const StacyParams& p, const TimeGrid& grid, std::span<const int> increments) {
  if (increments.size() != grid.size()) {
    throw std::domain_error("mixed_increments_pmf: increments and grid lengths differ");
  }
  const auto lambdas = grid.lambdas();
  // Powers and factorials stay in log space; they overflow for totals ~150.
  double log_terms = 0.0;
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < increments.size(); ++i) {
    const int m = increments[i];
    if (m < 0) return 0.0;
    const double mm = m;
    log_terms += mm * std::log(lambdas[i] - prev) - log_gamma_fn(mm + 1.0);
    total += mm;
    prev = lambdas[i];
  }
  return std::exp(log_terms + log_kernel(p, total, lambdas.back() / p.beta()));
}

double ordered_joint_pmf(const StacyParams& p, const TimeGrid& grid, std::span<const int> counts) {
  if (counts.size() != grid.size()) {
    throw std::domain_error("ordered_joint_pmf: counts and grid lengths differ");
  }
  int prev = 0;
  for (int k : counts) {
    if (k < prev) return 0.0;
    prev = k;
  }
  const CountVector increments = increments_from_counts(counts);
  return mixed_increments_pmf(p, grid, increments);
}

SamplePath simulate_path(const StacyParams& p, const IntensityFn& lam, std::size_t n_events,
                         RandomStream& rng) {
  if (n_events == 0) throw std::domain_error("simulate_path: n_events must be >= 1");
  SamplePath path;
  path.xi = stacy_draw(p, rng);
  path.arrivals.reserve(n_events);
  double operational = 0.0;
  for (std::size_t i = 0; i < n_events; ++i) {
    operational += rng.standard_exponential() / path.xi;
    path.arrivals.push_back(lam.inverse(operational));
  }
  path.horizon = path.arrivals.back();
  return path;
}

double superposition_pmf_check(const StacyParams& p, int s, double lam_t, int n) {
  if (s < 1) throw std::domain_error("superposition_pmf_check: s must be >= 1");
  return mpps_count_pmf(StacyParams(p.alpha(), p.beta() / s, p.c()), lam_t, n);
}

}  // namespace mpps
