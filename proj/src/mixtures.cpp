#include "mpps/mixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "mpps/kratzel.hpp"

namespace mpps {

namespace {

// log( |c| Z_{-c}^{-c alpha - k}(arg) / (beta^k Gamma(alpha)) ), the kernel
// shared by every mixed density in this file.
double log_mixed_kernel(const StacyParams& p, double k, double arg) {
  const double c = p.c(), a = p.alpha();
  return std::log(std::abs(c)) + log_kratzel(-c, -c * a - k, arg) - k * std::log(p.beta()) -
         log_gamma_fn(a);
}

double gamma_ratio(double num_arg, double den_arg) {
  return std::exp(log_gamma_fn(num_arg) - log_gamma_fn(den_arg));
}

}  // namespace

ErlangIndex::ErlangIndex(int n) : n_(n) {
  if (n < 1) throw std::domain_error("ErlangIndex: n must be >= 1");
}

double exp_stacy_pdf(const StacyParams& p, double t) {
  if (!(t > 0.0)) return 0.0;
  return std::exp(log_mixed_kernel(p, 1.0, t / p.beta()));
}

double exp_stacy_cdf(const StacyParams& p, double t) {
  if (!(t > 0.0)) return 0.0;
  if (std::isinf(t)) return 1.0;
  return 1.0 - stacy_laplace(p, t);
}

MomentValue exp_stacy_moment(const StacyParams& p, double z) {
  if (std::isnan(z) || z < -1.0) throw std::domain_error("exp_stacy_moment: z must be >= -1");
  const double shifted = p.alpha() - z / p.c();
  // z = -1 hits the pole of Gamma(z + 1); z/c >= alpha the pole of Gamma(alpha - z/c).
  if (z == -1.0 || !(shifted > 0.0)) return MomentValue::infinite();
  const double log_m = log_gamma_fn(z + 1.0) + z * std::log(p.beta()) + log_gamma_fn(shifted) -
                       log_gamma_fn(p.alpha());
  return MomentValue::finite(std::exp(log_m));
}

MeanVariance exp_stacy_mean_var(const StacyParams& p) {
  const double a = p.alpha(), b = p.beta(), c = p.c();
  MeanVariance out{exp_stacy_moment(p, 1.0), MomentValue::infinite()};
  if (a - 1.0 / c > 0.0 && a - 2.0 / c > 0.0) {
    const double g1 = gamma_fn(a - 1.0 / c);
    const double ga = gamma_fn(a);
    const double var = b * b / ga * (2.0 * gamma_fn(a - 2.0 / c) - g1 * g1 / ga);
    out.variance = MomentValue::finite(var);
  }
  return out;
}

std::vector<double> exp_stacy_sample(const StacyParams& p, std::size_t n, RandomStream& rng) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = stacy_draw(p, rng);
    const double eta = rng.standard_exponential();
    out.push_back(eta / xi);
  }
  return out;
}

double bivariate_exp_stacy_pdf(const StacyParams& p, double t, double x) {
  if (!(t > 0.0) || !(x > 0.0)) return 0.0;
  // x e^{-t x} is the Exp(x) density of tau given xi = x.
  return std::exp(std::log(x) - t * x + stacy_log_pdf(p, x));
}

double multivariate_exp_stacy_ii_pdf(const StacyParams& p, std::span<const double> times) {
  if (times.empty()) throw std::domain_error("multivariate_exp_stacy_ii_pdf: times must be nonempty");
  for (double t : times) {
    if (!(t > 0.0)) return 0.0;
  }
  // Summing in sorted order makes the value exactly permutation invariant.
  std::vector<double> sorted(times.begin(), times.end());
  std::sort(sorted.begin(), sorted.end());
  const double total = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  const double k = static_cast<double>(times.size());
  return std::exp(log_mixed_kernel(p, k, total / p.beta()));
}

double erlang_stacy_pdf(const StacyParams& p, ErlangIndex n, double t) {
  if (!(t > 0.0)) return 0.0;
  const double k = n.value();
  return std::exp((k - 1.0) * std::log(t) - log_gamma_fn(k) + log_mixed_kernel(p, k, t / p.beta()));
}

double erlang_stacy_cdf(const StacyParams& p, ErlangIndex n, double t) {
  if (!(t > 0.0)) return 0.0;
  if (std::isinf(t)) return 1.0;
  // P(T_n > t) = sum_{k < n} P(N(t) = k), N(t) mixed Poisson with mean xi t.
  double below = 0.0;
  for (int k = 0; k < n.value(); ++k) {
    const double kk = k;
    below += std::exp(kk * std::log(t) - log_gamma_fn(kk + 1.0) + log_mixed_kernel(p, kk, t / p.beta()));
  }
  return std::max(0.0, 1.0 - below);
}

MeanVariance erlang_stacy_mean_var(const StacyParams& p, ErlangIndex n) {
  const double a = p.alpha(), b = p.beta(), c = p.c();
  const double k = n.value();
  MeanVariance out{MomentValue::infinite(), MomentValue::infinite()};
  if (!(a - 1.0 / c > 0.0)) return out;
  out.mean = MomentValue::finite(k * b * gamma_ratio(a - 1.0 / c, a));
  if (a - 2.0 / c > 0.0) {
    const double ga = gamma_fn(a);
    const double g1 = gamma_fn(a - 1.0 / c);
    const double var = k * b * b / ga * ((k + 1.0) * gamma_fn(a - 2.0 / c) - k / ga * g1 * g1);
    out.variance = MomentValue::finite(var);
  }
  return out;
}

std::vector<double> erlang_stacy_sample(const StacyParams& p, ErlangIndex n, std::size_t m,
                                        RandomStream& rng) {
  std::vector<double> out;
  out.reserve(m);
  const double shape = n.value();
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = stacy_draw(p, rng);
    const double theta = rng.gamma(shape);
    out.push_back(theta / xi);
  }
  return out;
}

double conditional_xi_given_tau_pdf(const StacyParams& p, double t, double x) {
  if (!(t > 0.0)) throw std::domain_error("conditional_xi_given_tau_pdf: t must be > 0");
  if (!(x > 0.0)) return 0.0;
  const double a = p.alpha(), b = p.beta(), c = p.c();
  const double log_num = (c * a + 1.0) * std::log(b) + c * a * std::log(x) - t * x - std::pow(b * x, c);
  return std::exp(log_num - log_kratzel(-c, -c * a - 1.0, t / b));
}

double regression_xi_given_tau(const StacyParams& p, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::domain_error("regression_xi_given_tau: t must be >= 0");
  const double a = p.alpha(), b = p.beta(), c = p.c();
  const double arg = t / b;
  return std::exp(log_kratzel(-c, -c * a - 2.0, arg) - std::log(b) - log_kratzel(-c, -c * a - 1.0, arg));
}

double regression_tau_given_xi(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("regression_tau_given_xi: x must be > 0");
  return 1.0 / x;
}

}  // namespace mpps
