#pragma once

#include <cstdint>
#include <random>

namespace mpps {

// Seeded random stream. All variates are produced by code in this class
// on top of the raw 64-bit Mersenne Twister output, so a seed yields the
// same sequence on every platform (std:: distributions are
// implementation-defined). Not thread-safe: use one stream per thread.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  // Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double standard_normal();
  // Exp(1) by inversion, -log(1 - U).
  double standard_exponential();
  // Gamma(shape, 1) variate; shape > 0.
  double gamma(double shape);
  // log of a Gamma(shape, 1) variate. Stays finite for tiny shapes where
  // the variate itself underflows.
  double log_gamma(double shape);

  // Poisson(mean) count, exact for any finite mean below 2^62. Large means
  // are split through Gamma-distributed arrival times.
  std::uint64_t poisson(double mean);
  // Binomial(n, p) count by recursive Beta splitting.
  std::uint64_t binomial(std::uint64_t n, double p);

  // Derive an independent child stream (e.g. one per worker).
  RandomStream split();

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mpps
