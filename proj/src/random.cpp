#include "mpps/random.hpp"

#include <cmath>
#include <stdexcept>

namespace mpps {

RandomStream::RandomStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RandomStream::uniform() {
  // (k + 0.5) / 2^53 for k in [0, 2^53): never exactly 0 or 1.
  const std::uint64_t k = engine_() >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double RandomStream::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * f;
  has_spare_ = true;
  return u * f;
}

double RandomStream::standard_exponential() { return -std::log1p(-uniform()); }

double RandomStream::log_gamma(double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw std::domain_error("gamma variate: shape must be positive and finite");
  }
  if (shape < 1.0) {
    // Boost: G(a) = G(a + 1) * U^(1/a).
    return log_gamma(shape + 1.0) + std::log(uniform()) / shape;
  }
  // Marsaglia & Tsang squeeze/rejection for shape >= 1.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return std::log(d * v);
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return std::log(d * v);
  }
}

double RandomStream::gamma(double shape) { return std::exp(log_gamma(shape)); }

std::uint64_t RandomStream::poisson(double mean) {
  if (!(mean >= 0.0) || !(mean < 0x1.0p62)) throw std::domain_error("poisson variate: mean must be in [0, 2^62)");
  std::uint64_t count = 0;
  // The k-th arrival of a unit-rate process is Gamma(k). If it lands before
  // `mean` the rest is a fresh Poisson; otherwise the earlier k - 1 arrivals
  // are uniform on [0, G_k].
  while (mean > 16.0) {
    const auto k = static_cast<std::uint64_t>(0.875 * mean);
    const double g = gamma(static_cast<double>(k));
    if (g < mean) {
      count += k;
      mean -= g;
    } else {
      return count + binomial(k - 1, mean / g);
    }
  }
  double t = standard_exponential();
  while (t < mean) {
    ++count;
    t += standard_exponential();
  }
  return count;
}

std::uint64_t RandomStream::binomial(std::uint64_t n, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("binomial variate: p must be in [0, 1]");
  std::uint64_t count = 0;
  while (n > 16) {
    // The a-th of n sorted uniforms is Beta(a, n + 1 - a).
    const std::uint64_t a = 1 + n / 2;
    const std::uint64_t b = n + 1 - a;
    const double ga = gamma(static_cast<double>(a));
    const double x = ga / (ga + gamma(static_cast<double>(b)));
    if (x >= p) {
      n = a - 1;
      p = p / x;
    } else {
      count += a;
      n = b - 1;
      p = (p - x) / (1.0 - x);
    }
  }
  for (std::uint64_t i = 0; i < n; ++i) count += uniform() < p ? 1 : 0;
  return count;
}

RandomStream RandomStream::split() {
  const std::uint64_t child = engine_() ^ 0x9e3779b97f4a7c15ULL;
  return RandomStream(child);
}

}  // namespace mpps
