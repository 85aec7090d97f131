#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "confplan/configuration.hpp"
#include "confplan/path.hpp"
#include "confplan/tolerances.hpp"

/// Four-rule motion planner for three unordered points in the plane.
///
/// Pairs are split by two dichotomies: whether each configuration is
/// collinear (L) or a proper triangle (T), and whether the two
/// configurations share the orientation delta = Delta/|Delta| (P) or not
/// (N). Non-cooriented pairs are first made cooriented by rotating x
/// clockwise about the origin. Both factors are then retracted, preserving
/// delta, onto the canonical circles L_R (origin plus an antipodal unit
/// pair) and T_R (inscribed equilateral triangle). The resulting pair lies
/// on a finite union of S^1-orbits, each of which is pushed into the
/// diagonal by an explicit rotation or linear move.
///
/// Orientation conventions: clockwise means the negative mathematical
/// direction, i.e. multiplication by exp(-i phi) with phi > 0.
namespace confplan::disc3 {

using Config = PlaneConfiguration;
using Path = PlanePath;
using Tracks = std::vector<PlanePoint>;

/// (z1-z2)^2 (z2-z3)^2 (z3-z1)^2.
std::complex<double> discriminant(std::span<const PlanePoint> pts);
inline std::complex<double> discriminant(const Config& c) { return discriminant(c.points()); }

struct Orientation {
  std::complex<double> delta;  // unit modulus
};

Orientation orientation(std::span<const PlanePoint> pts);
inline Orientation orientation(const Config& c) { return orientation(c.points()); }

/// Normalized triangle area |Im((z2-z1) conj(z3-z1))| / diameter^2 below tau_geom.
bool is_collinear(std::span<const PlanePoint> pts, const Tolerances& tol = {});
inline bool is_collinear(const Config& c, const Tolerances& tol = {}) { return is_collinear(c.points(), tol); }

enum class StratumIndex { E0, E1, E2, E3 };
enum class Component { LL, TL, LT, TT };  // first letter: x, second: y

struct Stratum {
  StratumIndex index = StratumIndex::E0;
  Component component = Component::LL;
  bool oriented = true;  // P (cooriented) or N

  bool operator==(const Stratum&) const = default;
  std::string to_string() const;
};

/// Index of the stratum determined by (component, oriented).
StratumIndex stratum_index(Component component, bool oriented);

Stratum stratum(const Config& x, const Config& y, const Tolerances& tol = {});

struct CanonicalForm {
  enum class Kind { LR, TR };
  Kind kind = Kind::LR;
  double phase = 0.0;  // direction of the line mod pi, or of a vertex mod 2 pi / 3
};

struct Retraction {
  Path path;
  CanonicalForm form;
};

/// r_L: translate the middle point to the origin, then slide the outer
/// points along the line to distance 1. Two segments.
Retraction retract_line(std::span<const PlanePoint> pts, const Tolerances& tol = {});
inline Retraction retract_line(const Config& c, const Tolerances& tol = {}) { return retract_line(c.points(), tol); }

/// r_T: centroid to origin, radial projection to the unit circle, then the
/// two-phase arc equalization; the last three stages are rotated back
/// continuously so that delta never changes. Four segments.
Retraction retract_triangle(std::span<const PlanePoint> pts, const Tolerances& tol = {});
inline Retraction retract_triangle(const Config& c, const Tolerances& tol = {}) {
  return retract_triangle(c.points(), tol);
}

/// The clockwise angle alpha in (0, 2 pi) with delta(y) = exp(-i alpha) delta(x).
double coorientation_gap(const Orientation& x, const Orientation& y);

/// Rotates x by exp(-i alpha s / 6), s in [0, 1]. Requires a non-cooriented pair.
Path coorient(std::span<const PlanePoint> x, const Config& y, const Tolerances& tol = {});
inline Path coorient(const Config& x, const Config& y, const Tolerances& tol = {}) {
  return coorient(x.points(), y, tol);
}

/// Relative angle of two cooriented canonical configurations (clockwise
/// rotation carrying the first onto the second): in {0, pi/3, 2pi/3} for
/// lines, {0, pi/3} for triangles. Mixed pairs return the angle between the
/// line and its parallel triangle side (0 on the orbit).
double orbit_angle(std::span<const PlanePoint> xhat, std::span<const PlanePoint> yhat, const Tolerances& tol = {});

struct PairDeformation {
  Path hx;
  Path hy;
};

/// Deformation of a cooriented pair of canonical forms into the diagonal.
PairDeformation align_terminal(std::span<const PlanePoint> xhat, std::span<const PlanePoint> yhat,
                               const Tolerances& tol = {});

/// gamma(t) = Hx(2t) on [0, 1/2], Hy(2 - 2t) on [1/2, 1]. Throws
/// MidpointMismatch unless Hx(1) and Hy(1) coincide exactly.
Path pair_deformation_to_path(const PairDeformation& h);

struct Plan {
  Path path;
  Stratum stratum;
  PairDeformation deformation;
};

Plan plan(const Config& x, const Config& y, const Tolerances& tol = {});

/// Rotation of every point about the origin by `angle` radians.
Tracks rotate(std::span<const PlanePoint> pts, double angle);

}  // namespace confplan::disc3
