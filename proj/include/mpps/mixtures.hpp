#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mpps/moment.hpp"
#include "mpps/random.hpp"
#include "mpps/stacy.hpp"

namespace mpps {

// Index n >= 1 of an arrival (the n-th event time).
class ErlangIndex {
 public:
  explicit ErlangIndex(int n);
  int value() const { return n_; }

 private:
  int n_;
};

// ---- Exp-Stacy: tau = eta / xi, eta ~ Exp(1) independent of xi ~ Stacy ----

/// |c| Z_{-c}^{-c alpha - 1}(t / beta) / (beta Gamma(alpha)) for t > 0, else 0.
double exp_stacy_pdf(const StacyParams& p, double t);

/// P(tau <= t) = 1 - E exp(-t xi).
double exp_stacy_cdf(const StacyParams& p, double t);

/// E tau^z = Gamma(z+1) beta^z Gamma(alpha - z/c) / Gamma(alpha) for z > -1
/// and z/c < alpha; infinite otherwise. z < -1 is a domain error.
MomentValue exp_stacy_moment(const StacyParams& p, double z);

MeanVariance exp_stacy_mean_var(const StacyParams& p);

std::vector<double> exp_stacy_sample(const StacyParams& p, std::size_t n, RandomStream& rng);

/// Joint density of (tau, xi): x exp(-t x) times the Stacy density of xi.
double bivariate_exp_stacy_pdf(const StacyParams& p, double t, double x);

/// Joint density of k conditionally i.i.d. Exp(xi) inter-arrival times.
/// Depends on the times only through k and their sum; 0 if any t_i <= 0.
double multivariate_exp_stacy_ii_pdf(const StacyParams& p, std::span<const double> times);

// ---- Erlang-Stacy: T_n = theta_n / xi, theta_n ~ Gamma(n, 1) ----

double erlang_stacy_pdf(const StacyParams& p, ErlangIndex n, double t);

/// P(T_n <= t) = P(N(t) >= n) for the unit-intensity mixed Poisson count.
double erlang_stacy_cdf(const StacyParams& p, ErlangIndex n, double t);

MeanVariance erlang_stacy_mean_var(const StacyParams& p, ErlangIndex n);

std::vector<double> erlang_stacy_sample(const StacyParams& p, ErlangIndex n, std::size_t m,
                                        RandomStream& rng);

// ---- Conditionals and mean square regressions ----

/// Density of xi given tau = t (t > 0).
double conditional_xi_given_tau_pdf(const StacyParams& p, double t, double x);

/// E(xi | tau = t). t = 0 is accepted as the right limit when it exists.
double regression_xi_given_tau(const StacyParams& p, double t);

/// E(tau | xi = x) = 1 / x.
double regression_tau_given_xi(double x);

}  // namespace mpps
