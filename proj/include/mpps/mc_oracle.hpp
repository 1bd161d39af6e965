#pragma once

// Independent verification machinery. Nothing here calls into the Kratzel
// quadrature or the closed-form pmf routes it is used to check.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "mpps/moment.hpp"
#include "mpps/stacy.hpp"

namespace mpps {

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(n_samples)
  std::size_t n_samples = 0;
};

struct GofResult {
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;  // statistic <= threshold
  int degrees_of_freedom = 0;  // chi-square only
};

/// Sample mean with its standard error; needs at least two draws.
McEstimate mc_mean(std::span<const double> draws);

/// Unbiased sample variance with the large-sample standard error
/// sqrt((m4 - m2^2) / n).
McEstimate mc_variance(std::span<const double> draws);

/// integral_0^inf exp(log_f(x)) dx by composite Simpson in u = log x.
/// The u-range is located by a coarse scan and cut where the integrand is
/// 1e-20 of its largest scanned value. `panels` is rounded up to even.
double simpson_positive_axis(const std::function<double(double)>& log_f, std::size_t panels = 1u << 16);

/// P(N = n) for a Poisson(x lam_t) count mixed over Stacy(p), integrated by
/// brute force. Independent oracle for mpps_count_pmf.
double mixing_integral_pmf(const StacyParams& p, double lam_t, int n);

/// Stacy log-density written out independently of the stacy module.
double oracle_stacy_log_pdf(const StacyParams& p, double x);

/// Kolmogorov-Smirnov sup distance between the empirical cdf of sorted
/// draws and `cdf`. Unsorted input is a domain error.
GofResult ks_distance(std::span<const double> sorted_draws, const std::function<double(double)>& cdf,
                      double threshold);

/// Pearson chi-square. `expected` are bin probabilities; the mass not
/// covered by the bins forms a tail bin (merged into the last bin when its
/// expected count is below 5). Every other bin needs expected count >= 5.
GofResult chi_square_gof(std::span<const std::size_t> observed, std::span<const double> expected,
                         std::size_t n, double threshold);

/// Same statistic, judged against the 0.001 upper critical value for its
/// degrees of freedom.
GofResult chi_square_gof_0001(std::span<const std::size_t> observed, std::span<const double> expected,
                              std::size_t n);

/// Upper 0.001 critical value of chi-square with `dof` degrees of freedom.
double chi_square_critical_0001(int dof);

struct PooledBins {
  std::vector<std::size_t> observed;
  std::vector<double> expected;
};

/// Merges consecutive count values 0, 1, ... into bins holding at least
/// `min_expected` expected observations. Values past the end of `pmf` are
/// left for the tail bin of chi_square_gof.
PooledBins pool_count_bins(std::span<const double> pmf, std::span<const std::size_t> counts_by_value,
                           std::size_t n, double min_expected = 5.0);

struct SeriesSum {
  double sum = 0.0;
  int terms = 0;
};

/// Sums term(0) + term(1) + ... and stops once the index passes
/// mean + 10 sd (when finite) and the term drops below 1e-12 of the sum.
SeriesSum truncated_series(const std::function<double(int)>& term, const MeanVariance& count_moments,
                           int max_terms = 100000);

}  // namespace mpps
