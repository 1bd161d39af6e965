#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mpps/moment.hpp"
#include "mpps/random.hpp"
#include "mpps/stacy.hpp"

namespace mpps {

// Cumulative intensity lambda(t): continuous, strictly increasing, lambda(0) = 0.
// The process is a unit-rate Poisson process run on the clock xi * lambda(t).
class IntensityFn {
 public:
  using Map = std::function<double(double)>;

  /// lambda(t) = scale * t^exponent; scale > 0, exponent > 0.
  static IntensityFn power_law(double scale, double exponent);

  /// Any user-supplied (lambda, lambda^-1) pair. The caller guarantees the
  /// monotonicity and lambda(0) = 0 contract.
  static IntensityFn custom(Map cumulative, Map inverse, std::string label);

  double operator()(double t) const;
  double inverse(double s) const;
  const std::string& label() const { return label_; }

 private:
  IntensityFn(Map cumulative, Map inverse, std::string label);

  Map cumulative_;
  Map inverse_;
  std::string label_;
};

// Epochs lambda_1 < ... < lambda_n on the operational time scale, all > 0.
class TimeGrid {
 public:
  explicit TimeGrid(std::vector<double> lambdas);
  std::span<const double> lambdas() const { return lambdas_; }
  std::size_t size() const { return lambdas_.size(); }

 private:
  std::vector<double> lambdas_;
};

using CountVector = std::vector<int>;

struct SamplePath {
  double xi = 0.0;               // realized mixing value
  std::vector<double> arrivals;  // strictly increasing event times
  double horizon = 0.0;          // time of the last simulated event

  /// #{i : arrivals[i] <= t}
  std::size_t count_at(double t) const;
};

// ---- Single-time law ----

/// P(theta = n) for theta ~ MPStacy(alpha, beta, c).
double mpstacy_pmf(const StacyParams& p, int n);
double mpstacy_log_pmf(const StacyParams& p, int n);

/// P(N(t) = n) where lam_t = lambda(t) >= 0: MPStacy(alpha, beta / lambda(t), c).
double mpps_count_pmf(const StacyParams& p, double lam_t, int n);
double mpps_count_pmf(const StacyParams& p, const IntensityFn& lam, double t, int n);

/// Mean and variance of N(t). The variance follows the law of total
/// variance, lambda E xi + lambda^2 Var xi.
MeanVariance mpps_mean_var(const StacyParams& p, double lam_t);

/// E z^N(t) for z < 1.
double mpps_pgf(const StacyParams& p, double lam_t, double z);

/// Posterior density of xi given N(t) = n (lam_t > 0).
double conditional_xi_given_count_pdf(const StacyParams& p, double lam_t, int n, double x);

/// E(xi | N(t) = n).
double regression_xi_given_count(const StacyParams& p, double lam_t, int n);

/// E[N (N-1) ... (N-k+1)] = lambda^k E xi^k.
MomentValue factorial_moment(const StacyParams& p, double lam_t, int k);

// ---- Joint laws over several epochs ----

/// Joint pmf of cumulative counts (N_1..N_n) at the grid epochs. Zero for
/// decreasing or negative counts.
double ordered_joint_pmf(const StacyParams& p, const TimeGrid& grid, std::span<const int> counts);

/// Joint pmf of the increments (N_1, N_2 - N_1, ...).
double mixed_increments_pmf(const StacyParams& p, const TimeGrid& grid, std::span<const int> increments);

/// (k_1, k_2 - k_1, ...). Requires nondecreasing, nonnegative counts.
CountVector increments_from_counts(std::span<const int> counts);

/// (m_1, m_1 + m_2, ...). Requires nonnegative increments.
CountVector counts_from_increments(std::span<const int> increments);

// ---- Simulation ----

/// One trajectory: xi ~ Stacy, n_events i.i.d. Exp(xi) gaps on the
/// operational clock, mapped back through lambda^-1.
SamplePath simulate_path(const StacyParams& p, const IntensityFn& lam, std::size_t n_events,
                         RandomStream& rng);

/// Analytic side of the superposition identity: the sum of s conditionally
/// independent counts sharing xi is MPPS(alpha, beta / s, c).
double superposition_pmf_check(const StacyParams& p, int s, double lam_t, int n);

}  // namespace mpps
