#include "mpps/kratzel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

namespace mpps {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

void require_positive(double a, const char* what) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw std::domain_error(std::string(what) + ": argument must be positive and finite");
  }
}

// Lanczos approximation, g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double a) {
  if (a < 0.5) return lanczos_log_gamma(a + 1.0) - std::log(a);
  const double x = a - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + 7.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (x + 0.5) * std::log(t) - t + std::log(sum);
}

// P(a, x) by its power series; accurate for x < a + 1.
double lower_gamma_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < 100000; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - lanczos_log_gamma(a));
}

// Q(a, x) by modified Lentz continued fraction; accurate for x >= a + 1.
double upper_gamma_fraction(double a, double x) {
  constexpr double fpmin = kTiny / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - lanczos_log_gamma(a)) * h;
}

// ---------------------------------------------------------------------------
// Log-space integrand of the Kratzel function in u = log(variable).
// reciprocal: phi(u) = -nu u - exp(-rho u) - x exp(u)
// direct:     phi(u) =  nu u - exp( rho u) - x exp(-u)
// phi is strictly concave for every valid query that reaches quadrature.
// x exp(v) without overflowing the exponential when x is tiny.
double times_exp(double x, double v) { return x > 0.0 ? std::exp(std::log(x) + v) : x * std::exp(v); }

class LogIntegrand {
 public:
  LogIntegrand(double rho, double nu, double x, bool direct)
      : sign_(direct ? -1.0 : 1.0), rho_(rho), nu_(nu), x_(x) {}

  double value(double u) const {
    const double v = sign_ * u;
    return -nu_ * v - std::exp(-rho_ * v) - times_exp(x_, v);
  }
  double slope(double u) const {
    const double v = sign_ * u;
    return sign_ * (-nu_ + rho_ * std::exp(-rho_ * v) - times_exp(x_, v));
  }
  double curvature(double u) const {
    const double v = sign_ * u;
    return -rho_ * rho_ * std::exp(-rho_ * v) - times_exp(x_, v);
  }

 private:
  double sign_;
  double rho_;
  double nu_;
  double x_;
};

constexpr double kModeSearchLimit = 1.0e4;

// Root of the strictly decreasing slope; NaN if no sign change is found.
double locate_mode(const LogIntegrand& f) {
  double lo = 0.0;
  double hi = 0.0;
  const double s0 = f.slope(0.0);
  if (s0 == 0.0) return 0.0;
  double step = 1.0;
  if (s0 > 0.0) {
    hi = step;
    while (f.slope(hi) > 0.0) {
      lo = hi;
      step *= 2.0;
      hi = lo + step;
      if (hi > kModeSearchLimit) return std::numeric_limits<double>::quiet_NaN();
    }
  } else {
    lo = -step;
    while (f.slope(lo) < 0.0) {
      hi = lo;
      step *= 2.0;
      lo = hi - step;
      if (lo < -kModeSearchLimit) return std::numeric_limits<double>::quiet_NaN();
    }
  }
  // Safeguarded Newton inside [lo, hi].
  // Newton steps are unit-sized where one exponential dominates, so fall
  // back to bisection whenever a step fails to halve the previous one.
  double u = 0.5 * (lo + hi);
  double prev_step = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < 400; ++iter) {
    const double s = f.slope(u);
    if (s == 0.0) return u;
    if (s > 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    double next = u - s / f.curvature(u);
    if (!std::isfinite(next) || next <= lo || next >= hi || std::abs(next - u) > 0.5 * std::abs(prev_step)) {
      next = 0.5 * (lo + hi);
    }
    prev_step = next - u;
    if (std::abs(next - u) <= 1e-14 * (1.0 + std::abs(u)) || hi - lo <= 1e-14 * (1.0 + std::abs(u))) {
      return next;
    }
    u = next;
  }
  return u;
}

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename F>
Segment gauss_kronrod_15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> fv1{}, fv2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  const double result = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {a, b, result, err};
}

struct AdaptiveResult {
  double value;
  double error;
  std::size_t evaluations;
  bool converged;
};

// Globally adaptive GK15 over consecutive breakpoints.
template <typename F>
AdaptiveResult integrate_adaptive(const F& f, const std::vector<double>& breaks, double rel_tol,
                                  double abs_tol, std::size_t max_evaluations) {
  std::priority_queue<Segment> heap;
  std::size_t evals = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) {
      heap.push(gauss_kronrod_15(f, breaks[i], breaks[i + 1]));
      evals += 15;
    }
  }
  auto totals = [&heap]() {
    // The heap is small; a copy keeps the bookkeeping exact.
    double v = 0.0, e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::pair{v, e};
  };
  auto [value, error] = totals();
  auto met = [&] { return error <= std::max(abs_tol, rel_tol * std::abs(value)); };
  bool converged = met();
  while (evals + 30 <= max_evaluations && !heap.empty()) {
    if (converged) {
      // The running sums drift by rounding; confirm on exact totals.
      std::tie(value, error) = totals();
      if (met()) break;
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;  // no further resolution possible
    heap.pop();
    const Segment left = gauss_kronrod_15(f, worst.a, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.b);
    evals += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (heap.size() % 64 == 0) std::tie(value, error) = totals();
    converged = met();
  }
  std::tie(value, error) = totals();
  converged = met();
  return {value, error, evals, converged};
}

// phi(v0 + d) - phi(v0) in the offset d. The two exponential terms are held
// as a0 = exp(la) and x0 = sx exp(lx) so that neither underflows to a zero
// that later multiplies an overflowed exponential.
struct Centered {
  Centered(double rho_, double nu_, double la_, double sx_, double lx_)
      : rho(rho_), nu(nu_), la(la_), sx(sx_), lx(lx_) {
    cache();
  }

  double rho, nu, la, sx, lx;
  double a0 = 0.0, x0 = 0.0;

  void cache() {
    a0 = std::exp(la);
    x0 = sx * std::exp(lx);
  }
  double a_at(double d) const { return std::exp(la - rho * d); }
  double x_at(double d) const { return sx * std::exp(lx + d); }
  double value(double d) const {
    const double a = a0 > 0.0 ? a0 * std::expm1(-rho * d) : a_at(d);
    const double x = x0 != 0.0 ? x0 * std::expm1(d) : x_at(d);
    return -nu * d - a - x;
  }
  double slope(double d) const { return -nu + rho * a_at(d) - x_at(d); }
  double curvature(double d) const { return rho * rho * a_at(d) + x_at(d); }
  double third() const { return rho * rho * rho * a_at(0.0) - x_at(0.0); }
  double fourth() const { return -rho * rho * rho * rho * a_at(0.0) - x_at(0.0); }

  // Newton polish of a mode that is already accurate to a few ulps of v0.
  double refine_mode() const {
    double d = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double k = curvature(d);
      if (!(k > 0.0) || !std::isfinite(k)) break;
      const double step = slope(d) / k;
      if (!std::isfinite(step)) break;
      d += step;
      if (std::abs(step) <= kEps / std::sqrt(k)) break;
    }
    return value(d) >= 0.0 ? d : 0.0;
  }

  void recentre(double d) {
    la -= rho * d;
    lx += d;
    cache();
  }
};

// Beyond this curvature the peak is narrower than double precision can
// resolve around the mode and the Laplace error is below 1e-20.
constexpr double kLaplaceCurvature = 1e20;

// Truncate each tail where the integrand falls below this fraction of its peak.
constexpr double kTailCut = 41.446531673892822;  // -log(1e-18)

QuadratureReport closed_form(double log_value) {
  QuadratureReport r;
  r.log_value = log_value;
  r.value = std::exp(log_value);
  r.est_error = 4.0 * kEps * r.value;
  r.evaluations = 0;
  r.converged = true;
  return r;
}

}  // namespace

double gamma_fn(double a) {
  require_positive(a, "gamma_fn");
  return std::tgamma(a);
}

double log_gamma_fn(double a) {
  require_positive(a, "log_gamma_fn");
  return lanczos_log_gamma(a);
}

double regularized_lower_gamma(double x, double a) {
  require_positive(a, "regularized_lower_gamma");
  if (!(x >= 0.0)) throw std::domain_error("regularized_lower_gamma: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return 1.0 - upper_gamma_fraction(a, x);
}

double regularized_upper_gamma(double x, double a) {
  require_positive(a, "regularized_upper_gamma");
  if (!(x >= 0.0)) throw std::domain_error("regularized_upper_gamma: x must be >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - lower_gamma_series(a, x);
  return upper_gamma_fraction(a, x);
}

double lower_incomplete_gamma(double x, double a) {
  require_positive(a, "lower_incomplete_gamma");
  if (!(x >= 0.0)) throw std::domain_error("lower_incomplete_gamma: x must be >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    // Unregularized series avoids the Gamma(a) round trip.
    return lower_gamma_series(a, x) * std::exp(lanczos_log_gamma(a));
  }
  return std::tgamma(a) * (1.0 - upper_gamma_fraction(a, x));
}

void validate(const KratzelQuery& q) {
  if (!std::isfinite(q.rho) || !std::isfinite(q.nu) || !std::isfinite(q.x)) {
    throw std::domain_error("kratzel: rho, nu and x must be finite");
  }
  if (!(q.rel_tol > 0.0) || !(q.abs_tol > 0.0)) {
    throw std::domain_error("kratzel: tolerances must be strictly positive");
  }
  if (q.rho <= 0.0 && !(q.nu < 0.0)) {
    throw std::domain_error("kratzel: nu must be negative when rho <= 0");
  }
  const double x_floor = q.rho == -1.0 ? -1.0 : 0.0;
  if (q.rho == -1.0 ? !(q.x > x_floor) : !(q.x >= x_floor)) {
    throw std::domain_error("kratzel: x outside the domain of convergence");
  }
  if (q.x == 0.0 && !(q.rho * q.nu > 0.0)) {
    throw std::domain_error("kratzel: x = 0 requires rho * nu > 0");
  }
}

QuadratureReport kratzel_z_quadrature(const KratzelQuery& q, KratzelForm form) {
  validate(q);
  bool direct = false;
  switch (form) {
    case KratzelForm::automatic: direct = q.rho > 0.0; break;
    case KratzelForm::direct: direct = true; break;
    case KratzelForm::reciprocal: direct = false; break;
  }
  const LogIntegrand phi(q.rho, q.nu, q.x, direct);

  QuadratureReport report;
  const double mode = locate_mode(phi);
  if (!std::isfinite(mode)) {
    report.converged = false;
    report.value = std::numeric_limits<double>::quiet_NaN();
    report.log_value = report.value;
    report.est_error = std::numeric_limits<double>::infinity();
    return report;
  }
  // Re-centre at the mode. With v = sign * u = v0 + d the log-integrand is
  //   phi(v0) - nu d - a0 expm1(-rho d) - x0 expm1(d),
  // which keeps full relative precision in d however sharp the peak is.
  const double v0 = direct ? -mode : mode;
  Centered g{q.rho, q.nu, -q.rho * v0, q.x < 0.0 ? -1.0 : 1.0, std::log(std::abs(q.x)) + v0};
  double peak = phi.value(mode);
  const double shift = g.refine_mode();
  peak += g.value(shift);
  g.recentre(shift);

  const double curvature = g.curvature(0.0);
  if (curvature > kLaplaceCurvature) {
    // Laplace's method; the first correction is O(1 / curvature).
    const double a3 = g.third(), a4 = g.fourth();
    const double s3 = a3 / curvature / std::sqrt(curvature);
    const double s4 = a4 / curvature / curvature;
    const double correction = s4 / 8.0 + 5.0 * s3 * s3 / 24.0;
    report.log_value = peak + 0.5 * std::log(2.0 * std::numbers::pi / curvature) + std::log1p(correction);
    report.value = std::exp(report.log_value);
    report.est_error = report.value * std::abs(correction);
    report.evaluations = 1;
    report.converged = std::isfinite(report.log_value);
    return report;
  }

  // A nearly flat log-integrand has a huge Gaussian scale but a plateau of
  // only a few hundred units in u; start the tail search no wider than 1.
  double scale = 1.0 / std::sqrt(curvature);
  if (!std::isfinite(scale) || !(scale > 0.0)) scale = 1.0;
  scale = std::min(scale, 1.0);

  auto tail_end = [&](double direction) {
    double d = direction * scale;
    for (int k = 0; k < 200 && g.value(d) > -kTailCut; ++k) d *= 2.0;
    return d;
  };
  const double left = tail_end(-1.0);
  const double right = tail_end(+1.0);

  auto scaled = [&](double d) { return std::exp(g.value(d)); };
  // Absolute tolerance expressed in units of the peak; may be +inf, which
  // simply means the absolute criterion is met by any estimate.
  const double abs_scaled = q.abs_tol * std::exp(-peak);
  const AdaptiveResult r =
      integrate_adaptive(scaled, {left, 0.5 * left, 0.0, 0.5 * right, right}, q.rel_tol, abs_scaled, q.max_evaluations);

  report.evaluations = r.evaluations + 2;
  report.converged = r.converged && r.value > 0.0;
  report.log_value = peak + std::log(r.value);
  report.value = std::exp(report.log_value);
  report.est_error = r.error * std::exp(peak);
  return report;
}

QuadratureReport kratzel_z(const KratzelQuery& q) {
  validate(q);
  if (q.rho == 0.0) {
    // Z_0^nu(x) = x^nu Gamma(-nu) / e
    return closed_form(q.nu * std::log(q.x) + lanczos_log_gamma(-q.nu) - 1.0);
  }
  if (q.rho == -1.0) {
    // Z_-1^nu(x) = (1 + x)^nu Gamma(-nu)
    return closed_form(q.nu * std::log1p(q.x) + lanczos_log_gamma(-q.nu));
  }
  if (q.x == 0.0) {
    // Z_rho^nu(0) = Gamma(nu / rho) / |rho|
    return closed_form(lanczos_log_gamma(q.nu / q.rho) - std::log(std::abs(q.rho)));
  }
  return kratzel_z_quadrature(q, KratzelForm::automatic);
}

double log_kratzel(double rho, double nu, double x) {
  KratzelQuery q;
  q.rho = rho;
  q.nu = nu;
  q.x = x;
  // Callers divide and exponentiate; only relative accuracy matters.
  q.abs_tol = kTiny;
  const QuadratureReport r = kratzel_z(q);
  if (!r.converged) {
    throw ConvergenceError("Kratzel quadrature did not reach tolerance");
  }
  return r.log_value;
}

}  // namespace mpps
