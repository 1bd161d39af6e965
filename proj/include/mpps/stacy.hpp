#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mpps/moment.hpp"
#include "mpps/random.hpp"

namespace mpps {

// Stacy(alpha, beta; c) with density
//   |c| beta^(c alpha) x^(c alpha - 1) exp(-(beta x)^c) / Gamma(alpha),  x > 0.
// beta acts as a rate: Stacy(alpha, beta; 1) is Gamma(alpha, rate beta).
class StacyParams {
 public:
  // Throws std::domain_error unless alpha > 0, beta > 0, c != 0 (all finite).
  StacyParams(double alpha, double beta, double c);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  double c() const { return c_; }

  std::string to_string() const;

  friend bool operator==(const StacyParams&, const StacyParams&) = default;

 private:
  double alpha_;
  double beta_;
  double c_;
};

/// Density. At x == 0: 0 when c alpha > 1, |c| beta / Gamma(alpha) when
/// c alpha == 1, +inf when c alpha < 1 (c > 0). For c < 0 the density
/// vanishes at 0 for every alpha.
double stacy_pdf(const StacyParams& p, double x);

/// log density for x > 0; -inf for x <= 0.
double stacy_log_pdf(const StacyParams& p, double x);

double stacy_cdf(const StacyParams& p, double x);

/// E xi^delta = Gamma(alpha + delta/c) / (beta^delta Gamma(alpha)) when
/// delta/c > -alpha, infinite otherwise.
MomentValue stacy_moment(const StacyParams& p, double delta);

/// E exp(-t xi) for t > 0, through the Kratzel function.
double stacy_laplace(const StacyParams& p, double t);

/// One draw: xi = G^(1/c) / beta with G ~ Gamma(alpha, 1).
double stacy_draw(const StacyParams& p, RandomStream& rng);

std::vector<double> stacy_sample(const StacyParams& p, std::size_t n, RandomStream& rng);

/// Law of xi^delta: Stacy(alpha, beta^delta; c/delta). delta != 0.
StacyParams stacy_power_transform(const StacyParams& p, double delta);

/// Law of k xi: Stacy(alpha, beta/k; c). k > 0.
StacyParams stacy_scale(const StacyParams& p, double k);

}  // namespace mpps
