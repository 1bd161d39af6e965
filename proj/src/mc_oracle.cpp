#include "mpps/mc_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mpps {

namespace {

// Upper 0.001 points of chi-square, dof 1..60.
constexpr std::array<double, 60> kChiSquare0001 = {
    10.8276, 13.8155, 16.2662, 18.4668, 20.5150, 22.4577, 24.3219, 26.1245, 27.8772, 29.5883,
    31.2641, 32.9095, 34.5282, 36.1233, 37.6973, 39.2524, 40.7902, 42.3124, 43.8202, 45.3147,
    46.7970, 48.2679, 49.7282, 51.1786, 52.6197, 54.0520, 55.4760, 56.8923, 58.3012, 59.7031,
    61.0983, 62.4872, 63.8701, 65.2472, 66.6188, 67.9852, 69.3465, 70.7029, 72.0547, 73.4020,
    74.7449, 76.0838, 77.4186, 78.7495, 80.0767, 81.4003, 82.7204, 84.0371, 85.3506, 86.6608,
    87.9680, 89.2722, 90.5734, 91.8718, 93.1675, 94.4605, 95.7510, 97.0388, 98.3242, 99.6072};

struct ChiSquare {
  double statistic;
  int dof;
};

ChiSquare pearson(std::span<const std::size_t> observed, std::span<const double> expected, std::size_t n) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw std::domain_error("chi_square_gof: observed and expected must be nonempty and equal length");
  }
  if (n == 0) throw std::domain_error("chi_square_gof: n must be positive");
  const double nn = static_cast<double>(n);
  double obs_sum = 0.0, exp_sum = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!(expected[i] >= 0.0)) throw std::domain_error("chi_square_gof: negative probability");
    obs_sum += static_cast<double>(observed[i]);
    exp_sum += expected[i];
  }
  if (exp_sum > 1.0 + 1e-9) throw std::domain_error("chi_square_gof: expected probabilities exceed 1");
  if (obs_sum > nn) throw std::domain_error("chi_square_gof: observed counts exceed n");

  std::vector<double> o(observed.begin(), observed.end());
  std::vector<double> e;
  e.reserve(expected.size() + 1);
  for (double p : expected) e.push_back(p * nn);
  const double tail_obs = nn - obs_sum;
  const double tail_exp = std::max(0.0, 1.0 - exp_sum) * nn;
  if (tail_exp >= 5.0) {
    o.push_back(tail_obs);
    e.push_back(tail_exp);
  } else {
    o.back() += tail_obs;
    e.back() += tail_exp;
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (e[i] < 5.0) throw std::domain_error("chi_square_gof: bin with expected count below 5");
    const double d = o[i] - e[i];
    stat += d * d / e[i];
  }
  return {stat, static_cast<int>(o.size()) - 1};
}

}  // namespace

McEstimate mc_mean(std::span<const double> draws) {
  if (draws.size() < 2) throw std::domain_error("mc_mean: at least two draws are required");
  const double n = static_cast<double>(draws.size());
  double mean = 0.0;
  for (double d : draws) mean += d;
  mean /= n;
  double ss = 0.0;
  for (double d : draws) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  return {mean, sd / std::sqrt(n), draws.size()};
}

McEstimate mc_variance(std::span<const double> draws) {
  if (draws.size() < 4) throw std::domain_error("mc_variance: at least four draws are required");
  const double n = static_cast<double>(draws.size());
  double mean = 0.0;
  for (double d : draws) mean += d;
  mean /= n;
  double m2 = 0.0, m4 = 0.0;
  for (double d : draws) {
    const double c2 = (d - mean) * (d - mean);
    m2 += c2;
    m4 += c2 * c2;
  }
  m2 /= n;
  m4 /= n;
  return {m2 * n / (n - 1.0), std::sqrt(std::max(0.0, m4 - m2 * m2) / n), draws.size()};
}

double simpson_positive_axis(const std::function<double(double)>& log_f, std::size_t panels) {
  if (panels < 2) panels = 2;
  if (panels % 2 == 1) ++panels;
  auto h_of_u = [&log_f](double u) {
    const double v = log_f(std::exp(u)) + u;
    return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
  };

  constexpr double kScanLo = -700.0, kScanHi = 700.0, kScanStep = 0.5;
  const int steps = static_cast<int>((kScanHi - kScanLo) / kScanStep);
  std::vector<double> scan(static_cast<std::size_t>(steps) + 1);
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= steps; ++i) {
    scan[static_cast<std::size_t>(i)] = h_of_u(kScanLo + i * kScanStep);
    best = std::max(best, scan[static_cast<std::size_t>(i)]);
  }
  if (!std::isfinite(best)) return 0.0;
  const double floor = best - 46.0;  // 1e-20 of the peak
  int first = 0, last = steps;
  while (first < steps && scan[static_cast<std::size_t>(first)] < floor) ++first;
  while (last > 0 && scan[static_cast<std::size_t>(last)] < floor) --last;
  const double lo = kScanLo + std::max(0, first - 1) * kScanStep;
  const double hi = kScanLo + std::min(steps, last + 1) * kScanStep;

  const double h = (hi - lo) / static_cast<double>(panels);
  double sum = 0.0;
  for (std::size_t i = 0; i <= panels; ++i) {
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    sum += w * std::exp(h_of_u(lo + static_cast<double>(i) * h) - best);
  }
  return std::exp(best) * sum * h / 3.0;
}

double oracle_stacy_log_pdf(const StacyParams& p, double x) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  const double a = p.alpha(), b = p.beta(), c = p.c();
  return std::log(std::fabs(c)) + c * a * std::log(b) + (c * a - 1.0) * std::log(x) - std::pow(b * x, c) -
         std::lgamma(a);
}

double mixing_integral_pmf(const StacyParams& p, double lam_t, int n) {
  if (n < 0) throw std::domain_error("mixing_integral_pmf: n must be >= 0");
  if (!(lam_t >= 0.0)) throw std::domain_error("mixing_integral_pmf: lambda must be >= 0");
  if (lam_t == 0.0) return n == 0 ? 1.0 : 0.0;
  const double nn = n;
  auto log_integrand = [&](double x) {
    const double mean = x * lam_t;
    return nn * std::log(mean) - mean - std::lgamma(nn + 1.0) + oracle_stacy_log_pdf(p, x);
  };
  return simpson_positive_axis(log_integrand, 1u << 16);
}

GofResult ks_distance(std::span<const double> sorted_draws, const std::function<double(double)>& cdf,
                      double threshold) {
  if (sorted_draws.empty()) throw std::domain_error("ks_distance: no draws");
  if (!std::is_sorted(sorted_draws.begin(), sorted_draws.end())) {
    throw std::domain_error("ks_distance: draws must be sorted ascending");
  }
  const double n = static_cast<double>(sorted_draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted_draws.size(); ++i) {
    const double f = cdf(sorted_draws[i]);
    const double below = static_cast<double>(i) / n;
    const double above = static_cast<double>(i + 1) / n;
    d = std::max({d, above - f, f - below});
  }
  return {d, threshold, d <= threshold, 0};
}

GofResult chi_square_gof(std::span<const std::size_t> observed, std::span<const double> expected,
                         std::size_t n, double threshold) {
  const ChiSquare r = pearson(observed, expected, n);
  return {r.statistic, threshold, r.statistic <= threshold, r.dof};
}

GofResult chi_square_gof_0001(std::span<const std::size_t> observed, std::span<const double> expected,
                              std::size_t n) {
  const ChiSquare r = pearson(observed, expected, n);
  const double threshold = chi_square_critical_0001(r.dof);
  return {r.statistic, threshold, r.statistic <= threshold, r.dof};
}

double chi_square_critical_0001(int dof) {
  if (dof < 1) throw std::domain_error("chi_square_critical_0001: dof must be >= 1");
  if (dof <= static_cast<int>(kChiSquare0001.size())) return kChiSquare0001[static_cast<std::size_t>(dof - 1)];
  // Wilson-Hilferty beyond the table.
  const double k = dof;
  const double z = 3.090232306167813;
  const double s = 2.0 / (9.0 * k);
  return k * std::pow(1.0 - s + z * std::sqrt(s), 3.0);
}

PooledBins pool_count_bins(std::span<const double> pmf, std::span<const std::size_t> counts_by_value,
                           std::size_t n, double min_expected) {
  const double nn = static_cast<double>(n);
  PooledBins out;
  double acc_e = 0.0;
  std::size_t acc_o = 0;
  for (std::size_t v = 0; v < pmf.size(); ++v) {
    acc_e += pmf[v];
    acc_o += v < counts_by_value.size() ? counts_by_value[v] : 0;
    if (acc_e * nn >= min_expected) {
      out.expected.push_back(acc_e);
      out.observed.push_back(acc_o);
      acc_e = 0.0;
      acc_o = 0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0) {
    if (out.expected.empty()) {
      out.expected.push_back(acc_e);
      out.observed.push_back(acc_o);
    } else {
      out.expected.back() += acc_e;
      out.observed.back() += acc_o;
    }
  }
  return out;
}

SeriesSum truncated_series(const std::function<double(int)>& term, const MeanVariance& count_moments,
                           int max_terms) {
  double min_index = 0.0;
  if (count_moments.mean.is_finite()) {
    min_index = count_moments.mean.value();
    if (count_moments.variance.is_finite()) min_index += 10.0 * std::sqrt(count_moments.variance.value());
  }
  SeriesSum out;
  for (int n = 0; n < max_terms; ++n) {
    const double t = term(n);
    out.sum += t;
    out.terms = n + 1;
    if (n > min_index && std::abs(t) < 1e-12 * std::abs(out.sum)) break;
  }
  return out;
}

}  // namespace mpps
