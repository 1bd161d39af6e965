#include "mpps/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "mpps/commands.hpp"
#include "mpps/counting.hpp"
#include "mpps/kratzel.hpp"
#include "mpps/mc_oracle.hpp"
#include "mpps/mixtures.hpp"
#include "mpps/random.hpp"
#include "mpps/stacy.hpp"

namespace mpps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerances, one per criterion.
constexpr double kClosedFormTol = 1e-8;
constexpr double kZeroArgumentTol = 1e-10;
constexpr double kNormalizationTol = 1e-5;
constexpr double kReductionTol = 1e-10;
constexpr double kMomentTol = 1e-5;
constexpr double kPgfLaplaceTol = 1e-10;
constexpr double kPgfSeriesTol = 1e-6;
constexpr double kJointTol = 1e-5;
constexpr double kMassFloor = 1.0 - 1e-8;
constexpr double kKsThreshold = 0.005;
constexpr double kMcSigmas = 3.0;

constexpr std::size_t kQuadraturePanels = 1u << 12;
constexpr std::size_t kStacyKsDraws = 1'000'000;
constexpr std::size_t kMixedKsDraws = 200'000;
constexpr std::size_t kChiSquareDraws = 100'000;
constexpr std::size_t kVarianceDraws = 1'000'000;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Collects checks for one criterion; remembers the worst relative miss and
// the first failure.
class Tally {
 public:
  void close(double got, double want, double tol, const std::string& what) {
    const double err = want == 0.0 ? std::abs(got) : std::abs(got - want) / std::abs(want);
    record(std::isfinite(got) && err <= tol, err / tol, what + ": rel err " + fmt(err) + " (tol " + fmt(tol) + ")");
  }

  void at_most(double got, double limit, const std::string& what) {
    record(got <= limit, limit > 0.0 ? got / limit : 0.0, what + ": " + fmt(got) + " (limit " + fmt(limit) + ")");
  }

  void require(bool ok, const std::string& what) { record(ok, ok ? -0.5 : kInf, what); }

  bool pass() const { return failures_ == 0 && checks_ > 0; }

  std::string detail() const {
    if (failures_ > 0)
      return std::to_string(failures_) + " of " + std::to_string(checks_) + " checks failed; first: " + first_failure_;
    if (checks_ == 0) return "no checks ran";
    if (worst_ratio_ < 0.0) return "all " + std::to_string(checks_) + " checks hold";
    return std::to_string(checks_) + " checks; worst " + worst_;
  }

 private:
  void record(bool ok, double ratio, const std::string& what) {
    ++checks_;
    if (!ok) {
      if (failures_++ == 0) first_failure_ = what;
      return;
    }
    if (ratio >= worst_ratio_) {
      worst_ratio_ = ratio;
      worst_ = what;
    }
  }

  int checks_ = 0;
  int failures_ = 0;
  double worst_ratio_ = -1.0;
  std::string worst_ = "n/a";
  std::string first_failure_;
};

class Suite {
 public:
  explicit Suite(bool fault) : fault_(fault) {}

  // Parameters handed to code under test.
  StacyParams ut(const StacyParams& p) const { return fault_ ? StacyParams(p.alpha(), 1.1 * p.beta(), p.c()) : p; }

  void kratzel_closed_forms(Tally& t) const;
  void normalization(Tally& t) const;
  void reductions(Tally& t) const;
  void moments(Tally& t) const;
  void pgf_duality(Tally& t) const;
  void joint_laws(Tally& t) const;
  void monte_carlo(Tally& t) const;
  void overdispersion(Tally& t) const;
  void reproducibility(Tally& t) const;

 private:
  bool fault_;
};

std::vector<StacyParams> parameter_grid() {
  std::vector<StacyParams> out;
  for (double a : {0.5, 1.0, 2.0})
    for (double b : {1.0, 2.0})
      for (double c : {0.5, -0.5, 2.0, -2.0, 1.0}) out.emplace_back(a, b, c);
  return out;
}

double log_or_floor(double v) { return v > 0.0 ? std::log(v) : -kInf; }

// Repeated quadratures over the same density share its evaluations.
class CachedLog {
 public:
  explicit CachedLog(std::function<double(double)> f) : f_(std::move(f)) {}
  double operator()(double x) {
    auto [it, fresh] = cache_.try_emplace(x, 0.0);
    if (fresh) it->second = f_(x);
    return it->second;
  }

 private:
  std::function<double(double)> f_;
  std::map<double, double> cache_;
};

double integrate_density(const std::function<double(double)>& pdf) {
  return simpson_positive_axis([&](double x) { return log_or_floor(pdf(x)); }, kQuadraturePanels);
}

std::string label(const StacyParams& p) { return p.to_string(); }

KratzelQuery query(double rho, double nu, double x) {
  KratzelQuery q;
  q.rho = rho;
  q.nu = nu;
  q.x = x;
  return q;
}

void Suite::kratzel_closed_forms(Tally& t) const {
  std::mt19937_64 gen(101);
  std::uniform_real_distribution<double> nu_dist(-6.0, -0.05);
  std::uniform_real_distribution<double> x_minus_one(-0.95, 8.0);
  std::uniform_real_distribution<double> x_zero(0.05, 8.0);
  for (int i = 0; i < 100; ++i) {
    const double nu = nu_dist(gen), x = x_minus_one(gen);
    t.close(kratzel_z_quadrature(query(-1.0, nu, x)).value, std::pow(1.0 + x, nu) * std::tgamma(-nu), kClosedFormTol,
            "rho=-1 nu=" + fmt(nu) + " x=" + fmt(x));
  }
  for (int i = 0; i < 100; ++i) {
    const double nu = nu_dist(gen), x = x_zero(gen);
    t.close(kratzel_z_quadrature(query(0.0, nu, x)).value, std::pow(x, nu) * std::tgamma(-nu) / std::numbers::e,
            kClosedFormTol, "rho=0 nu=" + fmt(nu) + " x=" + fmt(x));
  }
  for (auto [rho, nu] : {std::pair{2.0, 3.0}, {-2.0, -3.0}, {0.5, 1.5}, {1.0, 0.25}, {-0.5, -4.0}, {3.0, 7.5}}) {
    t.close(kratzel_z_quadrature(query(rho, nu, 0.0)).value, std::tgamma(nu / rho) / std::abs(rho), kZeroArgumentTol,
            "x=0 rho=" + fmt(rho) + " nu=" + fmt(nu));
  }
}

void Suite::normalization(Tally& t) const {
  for (const StacyParams& p0 : parameter_grid()) {
    const StacyParams p = ut(p0);
    const std::string at = label(p0);
    t.close(integrate_density([&](double x) { return stacy_pdf(p, x); }), 1.0, kNormalizationTol, "stacy " + at);
    t.close(integrate_density([&](double x) { return exp_stacy_pdf(p, x); }), 1.0, kNormalizationTol,
            "exp-stacy " + at);
    for (int n : {1, 2, 3})
      t.close(integrate_density([&](double x) { return erlang_stacy_pdf(p, ErlangIndex(n), x); }), 1.0,
              kNormalizationTol, "erlang-stacy n=" + std::to_string(n) + " " + at);
    for (double tau : {0.5, 2.0})
      t.close(integrate_density([&](double x) { return conditional_xi_given_tau_pdf(p, tau, x); }), 1.0,
              kNormalizationTol, "xi|tau=" + fmt(tau) + " " + at);
    for (int n : {0, 3})
      t.close(integrate_density([&](double x) { return conditional_xi_given_count_pdf(p, 1.0, n, x); }), 1.0,
              kNormalizationTol, "xi|N=" + std::to_string(n) + " " + at);
  }
}

void Suite::reductions(Tally& t) const {
  for (auto [a, b] : {std::pair{0.5, 1.0}, {2.0, 1.5}, {3.0, 0.7}}) {
    const StacyParams p(a, b, 1.0);
    for (double x : {0.1, 1.0, 4.0}) {
      const double gamma_pdf = std::exp(a * std::log(b) + (a - 1) * std::log(x) - b * x - std::lgamma(a));
      t.close(stacy_pdf(ut(p), x), gamma_pdf, kReductionTol, "gamma pdf " + label(p) + " x=" + fmt(x));
    }
    for (double d : {1.0, 2.0})
      t.close(stacy_moment(ut(p), d).value(), std::exp(std::lgamma(a + d) - std::lgamma(a)) / std::pow(b, d),
              kReductionTol, "gamma moment " + label(p) + " d=" + fmt(d));
  }
  for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {0.5, 2.0}, {3.0, 1.5}}) {
    const StacyParams p(a, b, 1.0);
    for (double s : {0.2, 1.0, 5.0}) {
      t.close(exp_stacy_pdf(ut(p), s), a * std::pow(b, a) / std::pow(s + b, a + 1), kReductionTol,
              "pareto pdf " + label(p) + " t=" + fmt(s));
      t.close(exp_stacy_cdf(ut(p), s), 1.0 - std::pow(b / (s + b), a), kReductionTol,
              "pareto cdf " + label(p) + " t=" + fmt(s));
      t.close(regression_xi_given_tau(ut(p), s), (a + 1) / (s + b), kReductionTol,
              "regression " + label(p) + " t=" + fmt(s));
    }
    for (int n : {1, 2, 4})
      for (double s : {0.3, 1.0, 6.0}) {
        const double beta_prime = std::exp(std::lgamma(a + n) - std::lgamma(a) - std::lgamma(n) + a * std::log(b) +
                                           (n - 1) * std::log(s) - (a + n) * std::log(s + b));
        t.close(erlang_stacy_pdf(ut(p), ErlangIndex(n), s), beta_prime, kReductionTol,
                "beta-prime n=" + std::to_string(n) + " " + label(p) + " t=" + fmt(s));
      }
    for (int n = 0; n <= 10; ++n) {
      const double nb = std::exp(std::lgamma(a + n) - std::lgamma(a) - std::lgamma(n + 1.0) + a * std::log(b / (1 + b)) -
                                 n * std::log1p(b));
      t.close(mpstacy_pmf(ut(p), n), nb, kReductionTol, "negative binomial " + label(p) + " n=" + std::to_string(n));
      t.close(regression_xi_given_count(ut(p), 1.5, n), (a + n) / (1.5 + b), kReductionTol,
              "count regression " + label(p) + " n=" + std::to_string(n));
    }
  }
  const StacyParams note(3, 1, 1);
  const MeanVariance mv = erlang_stacy_mean_var(ut(note), ErlangIndex(2));
  t.close(mv.mean.value(), 1.0, kReductionTol, "E T2 at (3,1,1)");
  t.close(mv.variance.value(), 2.0, kReductionTol, "D T2 at (3,1,1)");
  t.close(erlang_stacy_pdf(ut(note), ErlangIndex(2), 1.0), 0.375, kReductionTol, "T2 density at t=1");
}

void Suite::moments(Tally& t) const {
  for (const StacyParams& p : parameter_grid()) {
    const std::string at = label(p);
    const StacyParams q = ut(p);
    for (double d : {-1.0, 0.5, 1.0, 2.0}) {
      const MomentValue m = stacy_moment(q, d);
      if (!m.is_finite()) {
        t.require(p.alpha() + d / p.c() <= 0.0, "stacy moment wrongly infinite " + at + " d=" + fmt(d));
        continue;
      }
      const double oracle =
          simpson_positive_axis([&](double x) { return d * std::log(x) + oracle_stacy_log_pdf(p, x); });
      t.close(m.value(), oracle, kMomentTol, "stacy moment " + at + " d=" + fmt(d));
    }

    CachedLog exp_pdf([&](double s) { return log_or_floor(exp_stacy_pdf(p, s)); });
    for (double z : {-0.5, 0.5, 1.0, 2.0}) {
      const MomentValue m = exp_stacy_moment(q, z);
      if (!m.is_finite()) {
        t.require(!(z > -1.0 && p.alpha() - z / p.c() > 0.0), "exp-stacy moment wrongly infinite " + at);
        continue;
      }
      const double oracle =
          simpson_positive_axis([&](double s) { return z * std::log(s) + exp_pdf(s); }, kQuadraturePanels);
      t.close(m.value(), oracle, kMomentTol, "exp-stacy moment " + at + " z=" + fmt(z));
    }

    const MeanVariance mv = erlang_stacy_mean_var(q, ErlangIndex(2));
    if (mv.mean.is_finite()) {
      CachedLog pdf([&](double s) { return log_or_floor(erlang_stacy_pdf(p, ErlangIndex(2), s)); });
      const double m1 = simpson_positive_axis([&](double s) { return std::log(s) + pdf(s); }, kQuadraturePanels);
      t.close(mv.mean.value(), m1, kMomentTol, "erlang mean " + at);
      if (mv.variance.is_finite()) {
        const double m2 = simpson_positive_axis([&](double s) { return 2.0 * std::log(s) + pdf(s); }, kQuadraturePanels);
        t.close(mv.variance.value(), m2 - m1 * m1, kMomentTol, "erlang variance " + at);
      }
    } else {
      t.require(!stacy_moment(p, -1.0).is_finite(), "erlang mean wrongly infinite " + at);
    }

    const double lam = 1.5;
    for (int k : {1, 2, 3}) {
      const MomentValue f = factorial_moment(q, lam, k);
      if (!f.is_finite()) {
        t.require(!stacy_moment(p, k).is_finite(), "factorial moment wrongly infinite " + at);
        continue;
      }
      // The series only settles when the pmf tail is light enough.
      if (!stacy_moment(p, k + 2.0).is_finite()) continue;
      double falling = 1.0;
      const double oracle = truncated_series(
                                [&](int n) {
                                  falling = 1.0;
                                  for (int j = 0; j < k; ++j) falling *= n - j;
                                  return falling * mpps_count_pmf(p, lam, n);
                                },
                                mpps_mean_var(p, lam))
                                .sum;
      t.close(f.value(), oracle, kMomentTol, "factorial moment " + at + " k=" + std::to_string(k));
    }
  }
  t.require(!exp_stacy_mean_var(ut({1, 1, 1})).mean.is_finite(), "Pareto alpha=1 mean tagged infinite");
  t.require(!exp_stacy_moment(ut({1, 2, 1}), 1.0).is_finite(), "Pareto alpha=1 first moment tagged infinite");
  t.require(!stacy_moment(ut({1, 1, -1}), 1.0).is_finite(), "Frechet mean tagged infinite");
  t.require(!mpps_mean_var(ut({1, 1, -1}), 1.0).mean.is_finite(), "mixed Poisson over Frechet mean tagged infinite");
}

void Suite::pgf_duality(Tally& t) const {
  const auto grid = parameter_grid();
  std::mt19937_64 gen(202);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  std::uniform_real_distribution<double> lam_dist(0.1, 4.0), z_dist(-1.0, 0.95);
  for (int i = 0; i < 20; ++i) {
    const StacyParams& p = grid[pick(gen)];
    const double lam = lam_dist(gen), z = z_dist(gen);
    const std::string at = label(p) + " lambda=" + fmt(lam) + " z=" + fmt(z);
    const double g = mpps_pgf(ut(p), lam, z);
    t.close(g, stacy_laplace(p, lam * (1.0 - z)), kPgfLaplaceTol, "pgf vs laplace " + at);
    const double s =
        truncated_series([&](int n) { return std::pow(z, n) * mpps_count_pmf(p, lam, n); }, mpps_mean_var(p, lam)).sum;
    t.close(g, s, kPgfSeriesTol, "pgf vs series " + at);
  }
}

void Suite::joint_laws(Tally& t) const {
  const std::vector<double> epochs{0.5, 1.0, 2.0};
  const StacyParams bij(1, 1, 2);
  for (std::size_t n = 1; n <= 3; ++n) {
    const TimeGrid g(std::vector<double>(epochs.begin(), epochs.begin() + static_cast<long>(n)));
    std::vector<int> k(n, 0);
    std::function<void(std::size_t, int)> walk = [&](std::size_t i, int lo) {
      if (i == n) {
        const CountVector m = increments_from_counts(k);
        const bool round_trip = counts_from_increments(m) == CountVector(k.begin(), k.end());
        const bool same = mixed_increments_pmf(ut(bij), g, m) == ordered_joint_pmf(ut(bij), g, k);
        t.require(round_trip && same, "bijection at n=" + std::to_string(n));
        return;
      }
      for (int v = lo; v <= 6; ++v) {
        k[i] = v;
        walk(i + 1, v);
      }
    };
    walk(0, 0);
  }

  const TimeGrid two({1.0, 2.0});
  for (double c : {1.0, 2.0}) {
    const StacyParams p(1, 1, c);
    for (int k1 = 0; k1 <= 6; ++k1)
      for (int k2 = k1; k2 <= 6; ++k2) {
        const double oracle = simpson_positive_axis([&](double x) {
          return k1 * std::log(x) - x - std::lgamma(k1 + 1.0) + (k2 - k1) * std::log(x) - x -
                 std::lgamma(k2 - k1 + 1.0) + oracle_stacy_log_pdf(p, x);
        });
        const std::vector<int> k{k1, k2};
        t.close(ordered_joint_pmf(ut(p), two, k), oracle, kJointTol,
                "ordered joint " + label(p) + " k=(" + std::to_string(k1) + "," + std::to_string(k2) + ")");
      }
  }

  double mass = 0.0;
  const int cutoff = 50;
  for (int m1 = 0; m1 <= cutoff; ++m1)
    for (int m2 = 0; m1 + m2 <= cutoff; ++m2) mass += mixed_increments_pmf(ut({1, 1, 1}), two, std::vector<int>{m1, m2});
  t.at_most(kMassFloor - mass, 0.0, "mass deficit of increments up to total 50");
}

GofResult count_gof(std::span<const std::uint64_t> draws, const std::function<double(int)>& pmf) {
  const std::size_t n = draws.size();
  std::vector<double> probs;
  double covered = 0.0;
  for (int k = 0; covered < 1.0 - 1e-9 && k < 100000; ++k) {
    probs.push_back(pmf(k));
    covered += probs.back();
  }
  std::vector<std::size_t> by_value(probs.size(), 0);
  for (std::uint64_t d : draws)
    if (d < by_value.size()) ++by_value[d];
  PooledBins bins = pool_count_bins(probs, by_value, n);
  while (bins.expected.size() > 1 && bins.expected.back() * static_cast<double>(n) < 5.0) {
    bins.expected.pop_back();
    bins.observed.pop_back();
  }
  return chi_square_gof_0001(bins.observed, bins.expected, n);
}

void Suite::monte_carlo(Tally& t) const {
  {
    const StacyParams p(0.5, 2, -0.5);
    RandomStream rng(301);
    std::vector<double> d = stacy_sample(ut(p), kStacyKsDraws, rng);
    std::sort(d.begin(), d.end());
    t.at_most(ks_distance(d, [&](double x) { return stacy_cdf(p, x); }, kKsThreshold).statistic, kKsThreshold,
              "stacy KS " + label(p));
  }
  {
    const StacyParams p(2, 1, -0.5);
    RandomStream rng(302);
    std::vector<double> d = exp_stacy_sample(ut(p), kMixedKsDraws, rng);
    std::sort(d.begin(), d.end());
    t.at_most(ks_distance(d, [&](double x) { return exp_stacy_cdf(p, x); }, kKsThreshold).statistic, kKsThreshold,
              "exp-stacy KS " + label(p));
  }
  {
    const StacyParams p(0.5, 2, 2);
    RandomStream rng(303);
    std::vector<double> d = erlang_stacy_sample(ut(p), ErlangIndex(2), kMixedKsDraws, rng);
    std::sort(d.begin(), d.end());
    t.at_most(ks_distance(d, [&](double x) { return erlang_stacy_cdf(p, ErlangIndex(2), x); }, kKsThreshold).statistic,
              kKsThreshold, "erlang-stacy n=2 KS " + label(p));
  }
  {
    const StacyParams p(0.5, 2, 1);
    const IntensityFn square = IntensityFn::power_law(1.0, 2.0);
    RandomStream rng(304);
    std::vector<std::uint64_t> counts;
    counts.reserve(kChiSquareDraws);
    bool censored = false;
    for (std::size_t i = 0; i < kChiSquareDraws; ++i) {
      const SamplePath path = simulate_path(ut(p), square, 60, rng);
      censored = censored || path.horizon <= 1.0;
      counts.push_back(path.count_at(1.0));
    }
    t.require(!censored, "60 events always reach t=1");
    const GofResult g = count_gof(counts, [&](int n) { return mpps_count_pmf(p, square(1.0), n); });
    t.at_most(g.statistic, g.threshold, "simulate_path N(1) chi-square dof " + std::to_string(g.degrees_of_freedom));
  }
  for (int s : {2, 3}) {
    const StacyParams p(1, 2, 1);
    RandomStream rng(310 + static_cast<std::uint64_t>(s));
    std::vector<std::uint64_t> sums(kChiSquareDraws);
    for (auto& total : sums) {
      const double xi = stacy_draw(p, rng);
      total = 0;
      for (int j = 0; j < s; ++j) total += rng.poisson(xi);
    }
    const GofResult g = count_gof(sums, [&](int n) { return superposition_pmf_check(ut(p), s, 1.0, n); });
    t.at_most(g.statistic, g.threshold, "superposition s=" + std::to_string(s) + " chi-square");
  }
}

void Suite::overdispersion(Tally& t) const {
  for (const StacyParams& p : parameter_grid())
    for (double lam : {1e-3, 0.5, 1.0, 7.0}) {
      const MeanVariance m = mpps_mean_var(ut(p), lam);
      if (m.mean.is_finite() && m.variance.is_finite())
        t.require(m.variance.value() >= m.mean.value(), "variance >= mean " + label(p) + " lambda=" + fmt(lam));
    }
  std::uint64_t seed = 401;
  for (auto [p, lam] : {std::pair{StacyParams(1, 1, 1), 3.0}, {StacyParams(1, 1, 1), 1.0}, {StacyParams(2, 1, 2), 2.0}}) {
    RandomStream rng(seed++);
    std::vector<double> counts(kVarianceDraws);
    for (double& n : counts) n = static_cast<double>(rng.poisson(lam * stacy_draw(p, rng)));
    const McEstimate v = mc_variance(counts);
    const double exact = mpps_mean_var(ut(p), lam).variance.value();
    t.at_most(std::abs(v.value - exact) / v.std_error, kMcSigmas,
              "variance z-score " + label(p) + " lambda=" + fmt(lam));
  }
}

void Suite::reproducibility(Tally& t) const {
  for (double c : {-0.5, 0.5, 1.0}) {
    RunConfig cfg;
    cfg.command = Command::simulate;
    cfg.target = Target::mpps;
    cfg.params = ut(StacyParams(0.5, 2, c));
    cfg.intensity = {1.0, 2.0};
    cfg.seed = 20240611;
    cfg.paths = 15;
    cfg.events_per_path = 100;
    const Table a = cmd_simulate(cfg);
    std::ostringstream first, second;
    write_table(first, cfg, a);
    write_table(second, cfg, cmd_simulate(cfg));
    const std::string at = "c=" + fmt(c);
    t.require(first.str() == second.str(), "byte-identical output " + at);
    t.require(a.rows.size() == 1500, "1500 event rows " + at);
    bool increasing = true;
    for (std::size_t i = 1; i < a.rows.size(); ++i) {
      if (std::get<std::int64_t>(a.rows[i][0]) != std::get<std::int64_t>(a.rows[i - 1][0])) continue;
      increasing = increasing && std::get<double>(a.rows[i][2]) > std::get<double>(a.rows[i - 1][2]);
    }
    t.require(increasing, "strictly increasing times " + at);
  }
}

}  // namespace

bool AcceptanceReport::all_pass() const {
  return !criteria.empty() && std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.pass; });
}

nlohmann::ordered_json AcceptanceReport::to_json() const {
  nlohmann::ordered_json j;
  j["all_pass"] = all_pass();
  auto list = nlohmann::ordered_json::array();
  for (const CriterionResult& c : criteria)
    list.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}});
  j["criteria"] = std::move(list);
  return j;
}

std::string format_result_line(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.1f s", r.seconds);
  return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + " (" + secs +
         "): " + r.detail;
}

AcceptanceReport run_acceptance(const AcceptanceOptions& options) {
  const Suite suite(options.inject_fault);
  using Step = void (Suite::*)(Tally&) const;
  const std::vector<std::tuple<int, const char*, Step>> steps = {
      {1, "Kratzel closed forms", &Suite::kratzel_closed_forms},
      {2, "normalization", &Suite::normalization},
      {3, "c=1 reductions", &Suite::reductions},
      {4, "moment identities", &Suite::moments},
      {5, "pgf duality", &Suite::pgf_duality},
      {6, "joint-law consistency", &Suite::joint_laws},
      {7, "Monte-Carlo distributional checks", &Suite::monte_carlo},
      {8, "overdispersion", &Suite::overdispersion},
      {9, "simulation reproducibility", &Suite::reproducibility},
  };
  AcceptanceReport report;
  for (const auto& [id, name, step] : steps) {
    if (!options.only.empty() && std::find(options.only.begin(), options.only.end(), id) == options.only.end()) continue;
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    Tally tally;
    try {
      (suite.*step)(tally);
      r.pass = tally.pass();
      r.detail = tally.detail();
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (options.on_result) options.on_result(r);
    report.criteria.push_back(std::move(r));
  }
  return report;
}

}  // namespace mpps
