#pragma once

#include <cmath>
#include <compare>
#include <limits>

#include "mpg/errors.hpp"

namespace mpg {

/// Absolute tolerance for comparisons of capacity values, payoffs and
/// argmax ties. Stored values are never rounded; only comparisons use it.
inline constexpr double kTolerance = 1e-9;

/// A real number extended with -infinity, the value range of the max-plus
/// integral. Invariants: the payload is either finite or -inf, never NaN or
/// +inf. Arithmetic follows the absorbing conventions -inf + c = -inf and
/// max(-inf, v) = v, which IEEE doubles already provide.
class ExtendedReal {
 public:
  ExtendedReal() = default;  // finite zero

  static ExtendedReal finite(double v) {
    if (!std::isfinite(v)) throw invalid_argument("ExtendedReal::finite requires a finite value");
    return ExtendedReal(v);
  }

  static ExtendedReal neg_infinity() {
    return ExtendedReal(-std::numeric_limits<double>::infinity());
  }

  /// Accepts a finite double or -inf.
  static ExtendedReal from_raw(double v) {
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity())
      throw invalid_argument("ExtendedReal payload must be finite or -inf");
    return ExtendedReal(v);
  }

  /// ln with the structural convention ln(0) = -inf. Only an exactly stored
  /// zero maps to -inf; tiny positive values stay finite.
  static ExtendedReal log_of(double w) {
    if (w < 0.0 || std::isnan(w)) throw invalid_argument("log_of requires a non-negative value");
    if (w == 0.0) return neg_infinity();
    return ExtendedReal(std::log(w));
  }

  bool is_finite() const { return std::isfinite(v_); }
  double raw() const { return v_; }

  /// Finite payload accessor.
  double value() const {
    if (!is_finite()) throw invalid_argument("ExtendedReal is -inf");
    return v_;
  }

  ExtendedReal operator+(double c) const { return ExtendedReal(v_ + c); }

  friend ExtendedReal max(ExtendedReal a, ExtendedReal b) { return a.v_ >= b.v_ ? a : b; }

  auto operator<=>(const ExtendedReal&) const = default;

  /// Exact on -inf, toleranced on finite values.
  bool approx_equal(const ExtendedReal& o, double tol = kTolerance) const {
    if (!is_finite() || !o.is_finite()) return v_ == o.v_;
    return std::abs(v_ - o.v_) <= tol;
  }

 private:
  explicit ExtendedReal(double v) : v_(v) {}

  double v_ = 0.0;
};

}  // namespace mpg
