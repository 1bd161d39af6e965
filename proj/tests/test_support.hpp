#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mpps::testing {

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

inline std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Five-point Gauss-Legendre on [a, b]; never touches the endpoints.
inline double gauss_legendre_5(const std::function<double(double)>& f, double a, double b) {
  static constexpr std::array<double, 5> x = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                              0.9061798459386640};
  static constexpr std::array<double, 5> w = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                              0.2369268850561891, 0.2369268850561891};
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < 5; ++i) s += w[i] * f(mid + half * x[i]);
  return s * half;
}

// integral_0^t pdf on geometric panels shrinking towards 0, which copes with
// integrable power singularities at the origin. Stops once a panel adds less
// than 1e-14 of the running total.
inline double quadrature_cdf(const std::function<double(double)>& pdf, double t) {
  double sum = 0.0;
  for (double hi = t; hi > 1e-300; hi *= 0.9) {
    const double piece = gauss_legendre_5(pdf, 0.9 * hi, hi);
    sum += piece;
    if (piece < 1e-14 * sum) break;
  }
  return sum;
}

// Under a correct pdf the number of bins beyond 3 standard errors is roughly
// Binomial(bins, 0.0027); this is its 0.999 quantile for 200 bins.
inline constexpr int kMaxBinsBeyond3Se = 4;

struct HistogramCheck {
  int bins = 0;
  int outside = 0;           // bins further than `k_se` standard errors from the pdf
  double worst_z = 0.0;      // largest |observed - expected| / se
};

// Equal-width histogram of draws on [lo, hi) compared bin by bin with the
// probability the pdf assigns to each bin.
inline HistogramCheck histogram_vs_pdf(std::span<const double> draws, const std::function<double(double)>& pdf,
                                       double lo, double hi, int bins, double k_se) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  const double width = (hi - lo) / bins;
  for (double d : draws) {
    if (d < lo || d >= hi) continue;
    const auto i = std::min(static_cast<std::size_t>((d - lo) / width), counts.size() - 1);
    ++counts[i];
  }
  const double n = static_cast<double>(draws.size());
  HistogramCheck out;
  out.bins = bins;
  for (int i = 0; i < bins; ++i) {
    const double a = lo + i * width;
    const double p = gauss_legendre_5(pdf, a, a + width);
    const double se = std::sqrt(n * p * (1.0 - p));
    const double z = std::abs(static_cast<double>(counts[static_cast<std::size_t>(i)]) - n * p) / se;
    out.worst_z = std::max(out.worst_z, z);
    if (z > k_se) ++out.outside;
  }
  return out;
}

// Two-sample Kolmogorov-Smirnov distance between sorted samples.
inline double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  std::size_t i = 0, j = 0;
  double d = 0.0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace mpps::testing
