#pragma once

#include <cmath>
#include <complex>
#include <compare>

namespace confplan {

/// Reduces an angle measured in turns to [0, 1).
inline double wrap_turns(double theta) {
  double r = theta - std::floor(theta);
  if (r >= 1.0) r = 0.0;  // theta = -tiny rounds up to exactly 1
  return r;
}

/// Signed representative of a turn difference in [-1/2, 1/2).
inline double signed_turn_difference(double to, double from) {
  double d = wrap_turns(to - from);
  return d >= 0.5 ? d - 1.0 : d;
}

/// A point of the annulus S^1 x R. The circle is R/Z, so theta is measured
/// in turns and the circumference is 1.
struct AnnulusPoint {
  double theta = 0.0;
  double height = 0.0;

  AnnulusPoint() = default;
  AnnulusPoint(double th, double h) : theta(wrap_turns(th)), height(h) {}

  auto operator<=>(const AnnulusPoint&) const = default;
};

/// Flat product metric on S^1 x R.
inline double distance(const AnnulusPoint& a, const AnnulusPoint& b) {
  double dt = std::abs(signed_turn_difference(a.theta, b.theta));
  return std::hypot(dt, a.height - b.height);
}

/// A point of the complex plane.
struct PlanePoint {
  double re = 0.0;
  double im = 0.0;

  PlanePoint() = default;
  PlanePoint(double r, double i) : re(r), im(i) {}
  explicit PlanePoint(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> z() const { return {re, im}; }

  auto operator<=>(const PlanePoint&) const = default;
};

inline double distance(const PlanePoint& a, const PlanePoint& b) {
  return std::hypot(a.re - b.re, a.im - b.im);
}

}  // namespace confplan
