#include "mpps/mixtures.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>

#include "doctest.h"
#include "mpps/mc_oracle.hpp"
#include "test_support.hpp"

using namespace mpps;
using mpps::testing::rel_err;
using mpps::testing::sorted;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<StacyParams> parameter_grid() {
  std::vector<StacyParams> out;
  for (auto [a, b] : {std::pair{1.0, 1.0}, {1.0, 2.0}, {2.0, 1.0}, {0.5, 1.0}})
    for (double c : {2.0, -2.0, 0.5, -0.5}) out.emplace_back(a, b, c);
  return out;
}

double log_or_floor(double v) { return v > 0.0 ? std::log(v) : -kInf; }

}  // namespace

TEST_CASE("exp_stacy_pdf examples") {
  CHECK(rel_err(exp_stacy_pdf({1, 1, 1}, 1.0), 0.25) < 1e-13);
  CHECK(exp_stacy_pdf({2, 3, 1}, 0.0) == 0.0);
  CHECK(rel_err(exp_stacy_pdf({2, 3, 1}, 1e-9), 2.0 / 3.0) < 1e-6);
  CHECK(exp_stacy_pdf({2, 3, 1}, -1.0) == 0.0);
}

TEST_CASE("exp_stacy_pdf against a histogram of eta / xi") {
  const StacyParams p(1, 1, 2);
  RandomStream rng(31);
  std::vector<double> draws;
  draws.reserve(1'000'000);
  for (int i = 0; i < 1'000'000; ++i) draws.push_back(rng.standard_exponential() / stacy_draw(p, rng));
  const auto h = testing::histogram_vs_pdf(draws, [&](double t) { return exp_stacy_pdf(p, t); }, 0.0, 5.0, 200, 3.0);
  CAPTURE(h.worst_z);
  CHECK(h.outside <= testing::kMaxBinsBeyond3Se);
}

TEST_CASE("exp_stacy_moment") {
  CHECK(rel_err(exp_stacy_moment({3, 1, 1}, 1.0).value(), 0.5) < 1e-13);
  CHECK_FALSE(exp_stacy_moment({1, 1, 1}, 1.0).is_finite());
  CHECK_FALSE(exp_stacy_moment({1, 1, 1}, -1.0).is_finite());
  CHECK_THROWS_AS(exp_stacy_moment({1, 1, 1}, -1.5), std::domain_error);
  const MeanVariance mv = exp_stacy_mean_var({3, 1, 1});
  CHECK(rel_err(mv.mean.value(), 0.5) < 1e-13);
  CHECK(rel_err(mv.variance.value(), 0.75) < 1e-12);
  const double second = exp_stacy_moment({3, 1, 1}, 2.0).value();
  CHECK(rel_err(second - 0.25, 0.75) < 1e-12);
}

TEST_CASE("exp_stacy_sample") {
  RandomStream rng(41);
  CHECK(exp_stacy_sample({1, 1, 1}, 0, rng).empty());

  SUBCASE("mean of Pareto draws") {
    const McEstimate m = mc_mean(exp_stacy_sample({3, 1, 1}, 1'000'000, rng));
    CHECK(std::abs(m.value - 0.5) < 3.0 * m.std_error);
  }

  SUBCASE("closed-route cdf agrees with the integrated pdf") {
    for (const StacyParams& p : {StacyParams(1, 2, 1), StacyParams(2, 1, -0.5), StacyParams(0.5, 1, 2)}) {
      for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
        CAPTURE(p.to_string());
        CAPTURE(t);
        const double q = testing::quadrature_cdf([&](double s) { return exp_stacy_pdf(p, s); }, t);
        CHECK(std::abs(exp_stacy_cdf(p, t) - q) < 1e-9);
      }
    }
  }

  SUBCASE("KS against the cdf") {
    const StacyParams p(1, 2, 1);
    const auto draws = sorted(exp_stacy_sample(p, 1'000'000, rng));
    const auto ks = ks_distance(draws, [&](double t) { return exp_stacy_cdf(p, t); }, 0.002);
    CAPTURE(ks.statistic);
    CHECK(ks.pass);
  }

  SUBCASE("determinism") {
    RandomStream a(8), b(8);
    CHECK(exp_stacy_sample({0.7, 1.1, -2}, 500, a) == exp_stacy_sample({0.7, 1.1, -2}, 500, b));
  }
}

TEST_CASE("bivariate Exp-Stacy-I density") {
  CHECK(bivariate_exp_stacy_pdf({1, 1, 1}, 0.0, 1.0) == 0.0);
  CHECK(bivariate_exp_stacy_pdf({1, 1, 1}, 1.0, -1.0) == 0.0);
  CHECK(rel_err(bivariate_exp_stacy_pdf({1, 1, 1}, 1.0, 1.0), 0.1353352832366127) < 1e-13);

  for (const StacyParams& p : {StacyParams(1, 1, 2), StacyParams(0.5, 2, -0.5)}) {
    for (double t : {0.3, 1.0, 4.0}) {
      CAPTURE(p.to_string());
      CAPTURE(t);
      const double marginal =
          simpson_positive_axis([&](double x) { return log_or_floor(bivariate_exp_stacy_pdf(p, t, x)); });
      CHECK(rel_err(marginal, exp_stacy_pdf(p, t)) < 1e-6);
      // The other margin is the mixing law itself.
      const double x = 0.8;
      const double xi_margin =
          simpson_positive_axis([&](double s) { return log_or_floor(bivariate_exp_stacy_pdf(p, s, x)); });
      CHECK(rel_err(xi_margin, stacy_pdf(p, x)) < 1e-6);
    }
  }
}

TEST_CASE("multivariate Exp-Stacy-II density") {
  const std::vector<double> ones{1.0, 1.0};
  CHECK(rel_err(multivariate_exp_stacy_ii_pdf({1, 1, 1}, ones), 2.0 / 27.0) < 1e-13);
  CHECK_THROWS_AS(multivariate_exp_stacy_ii_pdf({1, 1, 1}, std::vector<double>{}), std::domain_error);
  CHECK(multivariate_exp_stacy_ii_pdf({1, 1, 1}, std::vector<double>{1.0, 0.0}) == 0.0);

  const StacyParams p(1.3, 0.7, -1.5);
  for (double t : {0.05, 0.9, 6.0}) {
    const std::vector<double> single{t};
    CHECK(rel_err(multivariate_exp_stacy_ii_pdf(p, single), exp_stacy_pdf(p, t)) < 1e-12);
  }

  std::vector<double> times{0.1, 2.7, 0.3333, 1e-3};
  const double base = multivariate_exp_stacy_ii_pdf(p, times);
  std::sort(times.begin(), times.end());
  do {
    CHECK(multivariate_exp_stacy_ii_pdf(p, times) == base);
  } while (std::next_permutation(times.begin(), times.end()));

  // Pareto-type closed form for c = 1: alpha (alpha+1) ... beta^alpha / (beta + sum)^(alpha+k).
  const std::vector<double> three{0.4, 1.1, 2.0};
  const double a = 2.5, b = 1.5, s = 3.5;
  CHECK(rel_err(multivariate_exp_stacy_ii_pdf({a, b, 1}, three),
                a * (a + 1) * (a + 2) * std::pow(b, a) / std::pow(b + s, a + 3)) < 1e-11);
}

TEST_CASE("marginalizing Exp-Stacy-II over trailing times") {
  for (const StacyParams& p : {StacyParams(1, 1, 2), StacyParams(2, 1, -0.5), StacyParams(0.5, 2, 0.5)}) {
    CAPTURE(p.to_string());
    const double t1 = 0.6, t2 = 1.7;
    const std::vector<double> pair{t1, t2};
    const double over_t3 = simpson_positive_axis(
        [&](double t3) {
          const std::vector<double> v{t1, t2, t3};
          return log_or_floor(multivariate_exp_stacy_ii_pdf(p, v));
        },
        1u << 12);
    CHECK(rel_err(over_t3, multivariate_exp_stacy_ii_pdf(p, pair)) < 1e-5);
    const double over_t2 = simpson_positive_axis(
        [&](double s) {
          const std::vector<double> v{t1, s};
          return log_or_floor(multivariate_exp_stacy_ii_pdf(p, v));
        },
        1u << 12);
    CHECK(rel_err(over_t2, exp_stacy_pdf(p, t1)) < 1e-5);
  }
}

TEST_CASE("exp_stacy_pdf integrates to one over the parameter grid") {
  for (const StacyParams& p : parameter_grid()) {
    CAPTURE(p.to_string());
    const double total = simpson_positive_axis([&](double t) { return log_or_floor(exp_stacy_pdf(p, t)); }, 1u << 13);
    CHECK(rel_err(total, 1.0) < 1e-6);
  }
}

TEST_CASE("scaling of the mixed densities") {
  for (const StacyParams& p : parameter_grid()) {
    for (double k : {0.3, 2.0, 7.5}) {
      const StacyParams pk(p.alpha(), k * p.beta(), p.c());
      for (double t : {0.2, 1.0, 3.0}) {
        CHECK(rel_err(exp_stacy_pdf(pk, t), exp_stacy_pdf(p, t / k) / k) < 1e-10);
        CHECK(rel_err(erlang_stacy_pdf(pk, ErlangIndex(3), t), erlang_stacy_pdf(p, ErlangIndex(3), t / k) / k) < 1e-10);
      }
    }
  }
}

// Memoizes a log-density so repeated moment quadratures share the
// expensive Kratzel evaluations (the coarse scan grid is identical).
class CachedLog {
 public:
  explicit CachedLog(std::function<double(double)> f) : f_(std::move(f)) {}
  double operator()(double t) {
    auto [it, fresh] = cache_.try_emplace(t, 0.0);
    if (fresh) it->second = f_(t);
    return it->second;
  }

 private:
  std::function<double(double)> f_;
  std::map<double, double> cache_;
};

TEST_CASE("moment formulas against quadrature") {
  for (const StacyParams& p : parameter_grid()) {
    CAPTURE(p.to_string());
    CachedLog log_pdf([&](double t) { return log_or_floor(exp_stacy_pdf(p, t)); });
    for (double z : {-0.5, 0.5, 1.0, 2.0}) {
      const MomentValue m = exp_stacy_moment(p, z);
      if (!m.is_finite()) continue;
      CAPTURE(z);
      const double q = simpson_positive_axis([&](double t) { return z * std::log(t) + log_pdf(t); }, 1u << 12);
      CHECK(rel_err(m.value(), q) < 1e-5);
    }
    for (int n : {1, 2, 4}) {
      const MeanVariance mv = erlang_stacy_mean_var(p, ErlangIndex(n));
      if (!mv.mean.is_finite()) continue;
      CAPTURE(n);
      CachedLog pdf([&](double t) { return log_or_floor(erlang_stacy_pdf(p, ErlangIndex(n), t)); });
      const double m1 = simpson_positive_axis([&](double t) { return std::log(t) + pdf(t); }, 1u << 12);
      CHECK(rel_err(mv.mean.value(), m1) < 1e-5);
      if (mv.variance.is_finite()) {
        const double m2 = simpson_positive_axis([&](double t) { return 2.0 * std::log(t) + pdf(t); }, 1u << 12);
        CHECK(rel_err(mv.variance.value(), m2 - m1 * m1) < 1e-5);
      }
    }
  }
}

TEST_CASE("erlang_stacy_pdf") {
  for (const StacyParams& p : parameter_grid())
    for (double t : {0.01, 0.4, 2.0, 9.0})
      CHECK(rel_err(erlang_stacy_pdf(p, ErlangIndex(1), t), exp_stacy_pdf(p, t)) < 1e-12);
  CHECK(rel_err(erlang_stacy_pdf({3, 1, 1}, ErlangIndex(2), 1.0), 0.375) < 1e-12);
  CHECK(erlang_stacy_pdf({3, 1, 1}, ErlangIndex(2), 0.0) == 0.0);
  CHECK_THROWS_AS(ErlangIndex(0), std::domain_error);

  SUBCASE("histogram of Gamma(3) / xi") {
    const StacyParams p(1, 2, 0.5);
    RandomStream rng(53);
    const auto draws = erlang_stacy_sample(p, ErlangIndex(3), 1'000'000, rng);
    const auto h = testing::histogram_vs_pdf(
        draws, [&](double t) { return erlang_stacy_pdf(p, ErlangIndex(3), t); }, 0.0, 10.0, 200, 3.0);
    CAPTURE(h.worst_z);
    CAPTURE(h.outside);
    CHECK(h.outside <= testing::kMaxBinsBeyond3Se);
  }

  SUBCASE("cdf against integrated pdf") {
    for (const StacyParams& p : {StacyParams(2, 1, 2), StacyParams(0.5, 2, -0.5)}) {
      for (double t : {0.3, 4.0}) {
        const double q = testing::quadrature_cdf([&](double s) { return erlang_stacy_pdf(p, ErlangIndex(3), s); }, t);
        CHECK(std::abs(erlang_stacy_cdf(p, ErlangIndex(3), t) - q) < 1e-9);
      }
    }
  }
}

TEST_CASE("erlang_stacy_mean_var") {
  const MeanVariance mv = erlang_stacy_mean_var({3, 1, 1}, ErlangIndex(2));
  CHECK(rel_err(mv.mean.value(), 1.0) < 1e-12);
  CHECK(rel_err(mv.variance.value(), 2.0) < 1e-12);
  const MeanVariance inf = erlang_stacy_mean_var({1, 1, 1}, ErlangIndex(1));
  CHECK_FALSE(inf.mean.is_finite());
  CHECK_FALSE(inf.variance.is_finite());

  SUBCASE("Monte-Carlo") {
    const StacyParams p(2, 1, 2);
    RandomStream rng(61);
    const auto draws = erlang_stacy_sample(p, ErlangIndex(3), 1'000'000, rng);
    const MeanVariance exact = erlang_stacy_mean_var(p, ErlangIndex(3));
    const McEstimate m = mc_mean(draws);
    const McEstimate v = mc_variance(draws);
    CAPTURE(m.value);
    CAPTURE(v.value);
    CHECK(std::abs(m.value - exact.mean.value()) < 3.0 * m.std_error);
    CHECK(std::abs(v.value - exact.variance.value()) < 3.0 * v.std_error);
  }
}

TEST_CASE("erlang_stacy_sample") {
  RandomStream rng(71);
  CHECK(erlang_stacy_sample({1, 1, 1}, ErlangIndex(2), 0, rng).empty());
  RandomStream a(4), b(4);
  CHECK(erlang_stacy_sample({1, 1, 1}, ErlangIndex(2), 300, a) ==
        erlang_stacy_sample({1, 1, 1}, ErlangIndex(2), 300, b));

  SUBCASE("Gamma over Stacy equals a sum of exponentials sharing xi") {
    const StacyParams p(1.5, 1, -1);
    const int n = 3;
    const auto gamma_route = sorted(erlang_stacy_sample(p, ErlangIndex(n), 1'000'000, rng));
    std::vector<double> sum_route;
    sum_route.reserve(1'000'000);
    for (int i = 0; i < 1'000'000; ++i) {
      const double xi = stacy_draw(p, rng);
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += rng.standard_exponential() / xi;
      sum_route.push_back(s);
    }
    const double d = testing::ks_two_sample(gamma_route, sorted(std::move(sum_route)));
    CAPTURE(d);
    CHECK(d < 0.002);
  }
}

TEST_CASE("conditional law of xi given tau") {
  // c = 1: Gamma(alpha + 1, rate t + beta)
  const double a = 2.0, b = 1.0, t = 1.0;
  for (double x : {0.05, 0.5, 1.0, 2.5, 7.0}) {
    const double gamma_pdf = std::pow(t + b, a + 1) * std::pow(x, a) * std::exp(-(t + b) * x) / std::tgamma(a + 1);
    CHECK(std::abs(conditional_xi_given_tau_pdf({a, b, 1}, t, x) - gamma_pdf) < 1e-10);
  }
  CHECK(conditional_xi_given_tau_pdf({1, 1, 2}, 0.5, 0.0) == 0.0);
  CHECK(conditional_xi_given_tau_pdf({1, 1, 2}, 0.5, -2.0) == 0.0);
  CHECK_THROWS_AS(conditional_xi_given_tau_pdf({1, 1, 2}, 0.0, 1.0), std::domain_error);
  const double total = simpson_positive_axis(
      [](double x) { return log_or_floor(conditional_xi_given_tau_pdf({1, 1, 2}, 0.5, x)); });
  CHECK(rel_err(total, 1.0) < 1e-6);
}

TEST_CASE("regression of xi on tau") {
  CHECK(rel_err(regression_xi_given_tau({2, 1, 1}, 1.0), 1.5) < 1e-12);
  CHECK(rel_err(regression_xi_given_tau({1, 2, 1}, 0.0), 1.0) < 1e-12);

  const StacyParams p(1, 1, -0.5);
  const double first = simpson_positive_axis(
      [&](double x) { return std::log(x) + log_or_floor(conditional_xi_given_tau_pdf(p, 0.8, x)); });
  CHECK(rel_err(regression_xi_given_tau(p, 0.8), first) < 1e-6);

  // Only checked on a grid, and only as a warning.
  for (const StacyParams& q : {StacyParams(1, 1, -0.5), StacyParams(2, 1, 2), StacyParams(0.5, 2, 0.5)}) {
    double prev = kInf;
    bool monotone = true;
    for (int i = 0; i < 20; ++i) {
      const double tt = std::pow(10.0, -2.0 + 4.0 * i / 19.0);
      const double r = regression_xi_given_tau(q, tt);
      CHECK(r > 0.0);
      monotone = monotone && r <= prev;
      prev = r;
    }
    CAPTURE(q.to_string());
    WARN(monotone);
  }
}

TEST_CASE("regression of tau on xi") {
  CHECK(regression_tau_given_xi(1.0) == 1.0);
  CHECK(regression_tau_given_xi(2.0) == 0.5);
  CHECK_THROWS_AS(regression_tau_given_xi(0.0), std::domain_error);
  CHECK_THROWS_AS(regression_tau_given_xi(-3.0), std::domain_error);

  RandomStream rng(81);
  std::vector<double> draws(1'000'000);
  for (double& d : draws) d = rng.standard_exponential() / 4.0;
  const McEstimate m = mc_mean(draws);
  CHECK(std::abs(m.value - regression_tau_given_xi(4.0)) < 3.0 * m.std_error);
}
