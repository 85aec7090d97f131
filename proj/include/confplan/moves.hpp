#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

#include "confplan/point.hpp"

namespace confplan {

/// Primitive motion of annulus points. Each track moves with constant
/// angular velocity (dtheta turns over the move) while its height
/// interpolates linearly. Fiberwise-linear moves keep dtheta at the tiny
/// signed gap between tolerance-merged angles; arc slides travel a positive
/// arc to the next fiber.
struct AnnulusMove {
  using point_type = AnnulusPoint;
  enum class Kind { FiberwiseLinear, ArcSlide };

  Kind kind = Kind::FiberwiseLinear;
  std::vector<AnnulusPoint> from;
  std::vector<AnnulusPoint> to;
  std::vector<double> dtheta;

  static AnnulusMove identity(std::vector<AnnulusPoint> pts);
  /// Shortest signed angular gap per track; used inside a fiber.
  static AnnulusMove fiberwise(std::vector<AnnulusPoint> from, std::vector<AnnulusPoint> to);
  /// dtheta[i] is the travelled arc for track i (0 for resting tracks).
  static AnnulusMove arc_slide(std::vector<AnnulusPoint> from, std::vector<AnnulusPoint> to,
                               std::vector<double> dtheta);

  /// Positions at local time s in [0, 1]; exact endpoints at s = 0 and 1.
  std::vector<AnnulusPoint> eval(double s) const;
  /// Upper bound on any track's speed per unit of local time.
  double speed_bound() const;
  std::string_view kind_name() const;
};

/// Primitive motion of plane points.
///   Linear, RadialSlide: z(s) = (1-s) from + s target
///   Rotation:            z(s) = from * exp(i angle s)
///   ArcEqualize:         z(s) = from * exp(i rate[k] s) per track
/// An optional compensation phi(s) turns the raw motion into
/// exp(-i phi(s)) * z(s). phi is tabulated at increasing knots in [0, 1] and
/// interpolated linearly; with `orientation_lift` set, the interpolant only
/// selects the branch and phi(s) is the exact lift of arg delta(raw(s)) / 6,
/// delta = prod (z_i - z_j)^2 / |...|.
struct PlaneMove {
  using point_type = PlanePoint;
  enum class Kind { Linear, Rotation, RadialSlide, ArcEqualize };

  Kind kind = Kind::Linear;
  std::vector<PlanePoint> from;
  std::vector<PlanePoint> to;
  std::vector<PlanePoint> target;  // Linear / RadialSlide
  double angle = 0.0;              // Rotation
  std::vector<double> rate;        // ArcEqualize
  std::vector<double> knots;
  std::vector<double> compensation;
  bool orientation_lift = false;
  std::complex<double> lift_origin{1.0, 0.0};

  static PlaneMove identity(std::vector<PlanePoint> pts);
  static PlaneMove linear(std::vector<PlanePoint> from, std::vector<PlanePoint> target,
                          Kind kind = Kind::Linear);
  static PlaneMove rotation(std::vector<PlanePoint> from, double angle);
  static PlaneMove arc_equalize(std::vector<PlanePoint> from, std::vector<double> rate);

  /// Uncompensated position at local time s.
  std::vector<PlanePoint> raw(double s) const;
  double compensation_at(double s) const;

  /// Installs a compensation table and recomputes the terminal positions.
  /// knots must start at 0, end at 1 and increase strictly.
  void set_compensation(std::vector<double> knots, std::vector<double> phi, bool orientation_lift = false);
  /// Replaces the terminal positions by `exact`, which must agree with the
  /// formula at s = 1 up to `slack`; throws ChainBreak otherwise.
  void snap_end(std::vector<PlanePoint> exact, double slack = 1e-9);

  std::vector<PlanePoint> eval(double s) const;
  double speed_bound() const;
  std::string_view kind_name() const;
};

}  // namespace confplan
