#include "mpps/stacy.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mpps/kratzel.hpp"

namespace mpps {

StacyParams::StacyParams(double alpha, double beta, double c) : alpha_(alpha), beta_(beta), c_(c) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) throw std::domain_error("Stacy: alpha must be > 0");
  if (!std::isfinite(beta) || !(beta > 0.0)) throw std::domain_error("Stacy: beta must be > 0");
  if (!std::isfinite(c) || c == 0.0) throw std::domain_error("Stacy: c must be nonzero");
}

std::string StacyParams::to_string() const {
  std::ostringstream os;
  os.precision(17);
  os << "Stacy(alpha=" << alpha_ << ", beta=" << beta_ << ", c=" << c_ << ")";
  return os.str();
}

double stacy_log_pdf(const StacyParams& p, double x) {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  const double a = p.alpha(), b = p.beta(), c = p.c();
  const double log_bx = std::log(b * x);
  // |c| beta^(c a) x^(c a - 1) = |c| (beta x)^(c a) / x
  return std::log(std::abs(c)) + c * a * log_bx - std::log(x) - std::exp(c * log_bx) - log_gamma_fn(a);
}

double stacy_pdf(const StacyParams& p, double x) {
  if (x < 0.0 || std::isnan(x)) return 0.0;
  if (x == 0.0) {
    const double ca = p.c() * p.alpha();
    if (p.c() < 0.0 || ca > 1.0) return 0.0;
    if (ca == 1.0) return std::abs(p.c()) * p.beta() / gamma_fn(p.alpha());
    return std::numeric_limits<double>::infinity();
  }
  return std::exp(stacy_log_pdf(p, x));
}

double stacy_cdf(const StacyParams& p, double x) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double y = std::pow(p.beta() * x, p.c());
  // For c < 0, (beta x)^c decreases in x, so the complement is taken.
  return p.c() > 0.0 ? regularized_lower_gamma(y, p.alpha()) : regularized_upper_gamma(y, p.alpha());
}

MomentValue stacy_moment(const StacyParams& p, double delta) {
  const double shifted = p.alpha() + delta / p.c();
  if (!(shifted > 0.0)) return MomentValue::infinite();
  if (delta == 0.0) return MomentValue::finite(1.0);
  const double log_m = log_gamma_fn(shifted) - delta * std::log(p.beta()) - log_gamma_fn(p.alpha());
  return MomentValue::finite(std::exp(log_m));
}

double stacy_laplace(const StacyParams& p, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::domain_error("stacy_laplace: t must be > 0");
  const double c = p.c(), a = p.alpha();
  const double log_z = log_kratzel(-c, -c * a, t / p.beta());
  return std::exp(std::log(std::abs(c)) + log_z - log_gamma_fn(a));
}

double stacy_draw(const StacyParams& p, RandomStream& rng) {
  // eta = G / beta^c ~ Gamma(alpha, rate beta^c) and xi = eta^(1/c).
  const double log_g = rng.log_gamma(p.alpha());
  return std::exp(log_g / p.c() - std::log(p.beta()));
}

std::vector<double> stacy_sample(const StacyParams& p, std::size_t n, RandomStream& rng) {
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(stacy_draw(p, rng));
  return out;
}

StacyParams stacy_power_transform(const StacyParams& p, double delta) {
  if (delta == 0.0 || !std::isfinite(delta)) {
    throw std::domain_error("stacy_power_transform: delta must be nonzero");
  }
  return StacyParams(p.alpha(), std::pow(p.beta(), delta), p.c() / delta);
}

StacyParams stacy_scale(const StacyParams& p, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw std::domain_error("stacy_scale: k must be > 0");
  return StacyParams(p.alpha(), p.beta() / k, p.c());
}

}  // namespace mpps
