#include "mpps/stacy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "mpps/mc_oracle.hpp"

using namespace mpps;

namespace {

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::vector<StacyParams> parameter_grid() {
  std::vector<StacyParams> out;
  for (double c : {-2.0, -0.5, 0.5, 1.0, 2.0})
    for (double a : {0.5, 1.0, 2.0})
      for (double b : {1.0, 2.0}) out.emplace_back(a, b, c);
  return out;
}

double central_difference(const StacyParams& p, double x) {
  const double h = 1e-5 * x;
  return (stacy_cdf(p, x + h) - stacy_cdf(p, x - h)) / (2.0 * h);
}

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(StacyParams(0.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(StacyParams(1.0, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(StacyParams(1.0, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(StacyParams(std::nan(""), 1.0, 1.0), std::domain_error);
}

TEST_CASE("stacy_pdf examples") {
  CHECK(rel_err(stacy_pdf({1, 1, 1}, 1.0), 0.36787944117144233) < 1e-14);
  CHECK(rel_err(stacy_pdf({1, 1, 2}, 1.0), 0.73575888234288467) < 1e-14);
  const StacyParams frechet_like(1.7, 0.8, -1.3);
  CHECK(std::abs(stacy_pdf(frechet_like, 2.0) - central_difference(frechet_like, 2.0)) < 1e-6);
  CHECK(stacy_pdf({1, 1, 1}, -0.3) == 0.0);
}

TEST_CASE("stacy_pdf at the origin") {
  CHECK(stacy_pdf({2, 1, 1}, 0.0) == 0.0);                                  // c alpha > 1
  CHECK(rel_err(stacy_pdf({1, 3, 1}, 0.0), 3.0) < 1e-14);                   // c alpha == 1
  CHECK(stacy_pdf({0.5, 1, 1}, 0.0) == std::numeric_limits<double>::infinity());  // c alpha < 1
  CHECK(stacy_pdf({0.5, 1, -2}, 0.0) == 0.0);  // exp(-(beta x)^c) kills the pole for c < 0
}

TEST_CASE("stacy_cdf examples") {
  CHECK(rel_err(stacy_cdf({1, 1, 1}, 1.0), 0.63212055882855767) < 1e-14);
  CHECK(rel_err(stacy_cdf({1, 1, -1}, 1.0), 0.36787944117144233) < 1e-14);
  CHECK(stacy_cdf({2.5, 0.3, 1.5}, 0.0) == 0.0);
  CHECK(stacy_cdf({2.5, 0.3, -1.5}, 0.0) == 0.0);
  CHECK(stacy_cdf({2.5, 0.3, 1.5}, -4.0) == 0.0);
}

TEST_CASE("stacy_moment examples") {
  CHECK(stacy_moment({1, 1, 2}, 2.0).value() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_FALSE(stacy_moment({1, 1, -1}, 1.0).is_finite());
  CHECK(stacy_moment({1, 1, -1}, 1.0).value() == std::numeric_limits<double>::infinity());
  CHECK(stacy_moment({2, 3, 1}, 1.0).value() == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("stacy_laplace") {
  CHECK(rel_err(stacy_laplace({1, 1, 1}, 1.0), 0.5) < 1e-13);
  CHECK(rel_err(stacy_laplace({2, 1, 1}, 1.0), 0.25) < 1e-13);
  CHECK(stacy_laplace({1.5, 2, -0.7}, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(stacy_laplace({1, 1, 1}, 0.0), std::domain_error);

  SUBCASE("Monte-Carlo transform of Weibull(2)") {
    const StacyParams p(1, 1, 2);
    RandomStream rng(101);
    std::vector<double> f;
    for (double xi : stacy_sample(p, 1'000'000, rng)) f.push_back(std::exp(-0.7 * xi));
    const McEstimate mc = mc_mean(f);
    CHECK(std::abs(stacy_laplace(p, 0.7) - mc.value) < 3.0 * mc.std_error);
  }
}

TEST_CASE("stacy_sample") {
  RandomStream rng(5);
  CHECK(stacy_sample({1, 1, 1}, 0, rng).empty());

  SUBCASE("exponential mean") {
    const auto draws = stacy_sample({1, 1, 1}, 1'000'000, rng);
    // Var xi = E xi^2 - (E xi)^2 = 2 - 1
    const double sigma = 1.0;
    CHECK(std::abs(mc_mean(draws).value - 1.0) < 3.0 * sigma / 1000.0);
    CHECK(std::all_of(draws.begin(), draws.end(), [](double x) { return x > 0.0; }));
  }

  SUBCASE("seed determinism") {
    RandomStream a(99), b(99);
    CHECK(stacy_sample({0.5, 2, -0.5}, 1000, a) == stacy_sample({0.5, 2, -0.5}, 1000, b));
  }

  SUBCASE("tiny shapes stay positive and finite") {
    RandomStream r(3);
    for (double x : stacy_sample({0.01, 1, -0.5}, 10000, r)) {
      CHECK(x > 0.0);
    }
  }
}

TEST_CASE("power transform") {
  CHECK(stacy_power_transform({2, 3, 1}, 1.0) == StacyParams(2, 3, 1));
  CHECK(stacy_power_transform({2, 3, 1}, 2.0) == StacyParams(2, 9, 0.5));
  const StacyParams inv = stacy_power_transform({1, 1, 2}, -1.0);
  CHECK(inv == StacyParams(1, 1, -2));
  CHECK_THROWS_AS(stacy_power_transform({1, 1, 2}, 0.0), std::domain_error);

  RandomStream rng(11);
  std::vector<double> recip;
  for (double x : stacy_sample({1, 1, 2}, 1'000'000, rng)) recip.push_back(1.0 / x);
  const auto ks = ks_distance(sorted(recip), [&](double x) { return stacy_cdf(inv, x); }, 0.002);
  CHECK(ks.pass);
}

TEST_CASE("scaling") {
  CHECK(stacy_scale({1.5, 2, -1}, 1.0) == StacyParams(1.5, 2, -1));
  CHECK(stacy_scale({1, 2, 1}, 2.0) == StacyParams(1, 1, 1));
  CHECK_THROWS_AS(stacy_scale({1, 2, 1}, 0.0), std::domain_error);

  const StacyParams base(0.7, 1.3, 1.6);
  const StacyParams scaled = stacy_scale(base, 3.0);
  RandomStream rng(12);
  std::vector<double> draws;
  for (double x : stacy_sample(base, 1'000'000, rng)) draws.push_back(3.0 * x);
  CHECK(ks_distance(sorted(draws), [&](double x) { return stacy_cdf(scaled, x); }, 0.002).pass);
}

TEST_CASE("density integrates to one over the parameter grid") {
  for (const StacyParams& p : parameter_grid()) {
    CAPTURE(p.to_string());
    const double total = simpson_positive_axis([&](double x) { return stacy_log_pdf(p, x); });
    CHECK(rel_err(total, 1.0) < 1e-8);
  }
}

TEST_CASE("cdf derivative matches pdf") {
  for (const StacyParams& p : parameter_grid()) {
    for (double x : {0.2, 0.7, 1.0, 1.9, 3.3}) {
      CAPTURE(p.to_string());
      CAPTURE(x);
      CHECK(std::abs(central_difference(p, x) - stacy_pdf(p, x)) < 1e-6);
    }
  }
}

TEST_CASE("c = 1 is the Gamma law") {
  for (double a : {0.5, 1.0, 2.0, 4.5})
    for (double b : {0.5, 1.0, 2.0})
      for (double x : {0.1, 0.8, 2.0, 6.0}) {
        const double gamma_pdf = std::pow(b, a) * std::pow(x, a - 1.0) * std::exp(-b * x) / std::tgamma(a);
        CHECK(rel_err(stacy_pdf({a, b, 1.0}, x), gamma_pdf) < 1e-12);
      }
}

TEST_CASE("moment formula against quadrature") {
  for (const StacyParams& p : parameter_grid()) {
    for (double delta : {-1.0, 0.5, 1.0, 2.0, 3.0}) {
      const MomentValue m = stacy_moment(p, delta);
      if (!m.is_finite()) {
        CHECK(p.alpha() + delta / p.c() <= 0.0);
        continue;
      }
      CAPTURE(p.to_string());
      CAPTURE(delta);
      const double q = simpson_positive_axis([&](double x) { return delta * std::log(x) + stacy_log_pdf(p, x); });
      CHECK(rel_err(m.value(), q) < 1e-6);
    }
  }
}

TEST_CASE("sampler matches cdf (KS)") {
  RandomStream rng(2024);
  for (const StacyParams& p : {StacyParams(0.5, 2, -0.5), StacyParams(2, 1, 2), StacyParams(1, 1, 1)}) {
    CAPTURE(p.to_string());
    const auto draws = sorted(stacy_sample(p, 1'000'000, rng));
    const auto ks = ks_distance(draws, [&](double x) { return stacy_cdf(p, x); }, 0.002);
    CAPTURE(ks.statistic);
    CHECK(ks.pass);
  }
}
