#pragma once

#include <limits>
#include <ostream>

namespace mpps {

// Expectation that is either a finite real or divergent (+infinity).
// Every moment-style result in the library uses this type so that
// "undefined moment" propagates without exceptions.
class MomentValue {
 public:
  static constexpr MomentValue finite(double value) { return MomentValue(value, true); }
  static constexpr MomentValue infinite() {
    return MomentValue(std::numeric_limits<double>::infinity(), false);
  }

  constexpr bool is_finite() const { return finite_; }
  // +inf when the moment diverges.
  constexpr double value() const { return value_; }

  friend constexpr bool operator==(const MomentValue&, const MomentValue&) = default;

 private:
  constexpr MomentValue(double value, bool finite) : value_(value), finite_(finite) {}

  double value_;
  bool finite_;
};

struct MeanVariance {
  MomentValue mean;
  MomentValue variance;
};

inline std::ostream& operator<<(std::ostream& os, const MomentValue& m) {
  if (!m.is_finite()) return os << "inf";
  return os << m.value();
}

}  // namespace mpps
