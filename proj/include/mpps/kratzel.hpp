#pragma once

#include <cstddef>
#include <stdexcept>

namespace mpps {

// Thrown when an evaluation that must return a plain real cannot reach
// its tolerance; the raw QuadratureReport API never throws this.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gamma function for a > 0.
double gamma_fn(double a);

/// log Gamma(a) for a > 0 (Lanczos). Safe to call from many threads.
double log_gamma_fn(double a);

/// Lower incomplete gamma integral_0^x y^(a-1) e^(-y) dy. Argument order
/// follows the (x, a) convention used throughout this library.
double lower_incomplete_gamma(double x, double a);

/// Regularized lower incomplete gamma P = gamma(x, a) / Gamma(a).
double regularized_lower_gamma(double x, double a);

/// Regularized upper incomplete gamma Q = 1 - P, computed without cancellation.
double regularized_upper_gamma(double x, double a);

// One evaluation of the Kratzel function
//   Z_rho^nu(x) = int_0^inf y^(nu-1) exp(-(y^rho + x/y)) dy
//               = int_0^inf t^(-nu-1) exp(-(t^-rho + t x)) dt.
// Valid for rho > 0 with any real nu, and for rho <= 0 with nu < 0.
struct KratzelQuery {
  double rho = 0.0;
  double nu = 0.0;
  double x = 0.0;
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  std::size_t max_evaluations = 1'000'000;
};

struct QuadratureReport {
  double value = 0.0;
  double est_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
  // log(value); finite even when value over- or underflows a double.
  double log_value = 0.0;
};

// Which integral representation the quadrature path integrates.
enum class KratzelForm {
  automatic,   // y-form for rho > 0, t-form for rho <= 0
  direct,      // y^(nu-1) exp(-(y^rho + x/y))
  reciprocal,  // t^(-nu-1) exp(-(t^-rho + t x))
};

/// Checks the KratzelQuery invariants; throws std::domain_error.
void validate(const KratzelQuery& q);

/// Evaluates Z_rho^nu(x). Closed forms are used for rho == 0, rho == -1
/// and x == 0 (rho * nu > 0); every other query is integrated numerically
/// after locating the integrand's mode. x == 0 is refused unless
/// rho * nu > 0. rho == -1 additionally accepts x in (-1, 0).
QuadratureReport kratzel_z(const KratzelQuery& q);

/// Forces the quadrature path, skipping closed forms. Used to cross-check
/// the closed forms and the two integral representations against each other.
QuadratureReport kratzel_z_quadrature(const KratzelQuery& q, KratzelForm form = KratzelForm::automatic);

/// log Z_rho^nu(x) at default tolerances; throws ConvergenceError if the
/// quadrature budget is exhausted.
double log_kratzel(double rho, double nu, double x);

}  // namespace mpps
