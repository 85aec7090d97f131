#include "confplan/moves.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "confplan/error.hpp"

namespace confplan {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorCode::SizeMismatch, what);
}

std::complex<double> unit(double phi) { return std::polar(1.0, phi); }

std::complex<double> orientation_of(const std::vector<PlanePoint>& pts) {
  std::complex<double> d(1.0, 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const auto w = pts[i].z() - pts[j].z();
      d *= w * w / std::norm(w);
    }
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// AnnulusMove

AnnulusMove AnnulusMove::identity(std::vector<AnnulusPoint> pts) {
  AnnulusMove m;
  m.kind = Kind::FiberwiseLinear;
  m.dtheta.assign(pts.size(), 0.0);
  m.to = pts;
  m.from = std::move(pts);
  return m;
}

AnnulusMove AnnulusMove::fiberwise(std::vector<AnnulusPoint> from, std::vector<AnnulusPoint> to) {
  require_same_size(from.size(), to.size(), "fiberwise move endpoints differ in size");
  AnnulusMove m;
  m.kind = Kind::FiberwiseLinear;
  m.dtheta.resize(from.size());
  for (std::size_t i = 0; i < from.size(); ++i)
    m.dtheta[i] = signed_turn_difference(to[i].theta, from[i].theta);
  m.from = std::move(from);
  m.to = std::move(to);
  return m;
}

AnnulusMove AnnulusMove::arc_slide(std::vector<AnnulusPoint> from, std::vector<AnnulusPoint> to,
                                   std::vector<double> dtheta) {
  require_same_size(from.size(), to.size(), "arc slide endpoints differ in size");
  require_same_size(from.size(), dtheta.size(), "arc slide needs one arc per track");
  AnnulusMove m;
  m.kind = Kind::ArcSlide;
  m.from = std::move(from);
  m.to = std::move(to);
  m.dtheta = std::move(dtheta);
  return m;
}

std::vector<AnnulusPoint> AnnulusMove::eval(double s) const {
  if (s <= 0.0) return from;
  if (s >= 1.0) return to;
  std::vector<AnnulusPoint> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from[i] == to[i]) {
      out[i] = from[i];
      continue;
    }
    out[i] = AnnulusPoint(from[i].theta + s * dtheta[i],
                          (1.0 - s) * from[i].height + s * to[i].height);
  }
  return out;
}

double AnnulusMove::speed_bound() const {
  double v = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i)
    v = std::max(v, std::hypot(dtheta[i], to[i].height - from[i].height));
  return v;
}

std::string_view AnnulusMove::kind_name() const {
  return kind == Kind::ArcSlide ? "arc-slide" : "fiberwise-linear";
}

// ---------------------------------------------------------------------------
// PlaneMove

PlaneMove PlaneMove::identity(std::vector<PlanePoint> pts) {
  return linear(pts, pts, Kind::Linear);
}

PlaneMove PlaneMove::linear(std::vector<PlanePoint> from, std::vector<PlanePoint> target,
                            Kind kind) {
  require_same_size(from.size(), target.size(), "linear move endpoints differ in size");
  PlaneMove m;
  m.kind = kind;
  m.from = std::move(from);
  m.to = target;
  m.target = std::move(target);
  return m;
}

PlaneMove PlaneMove::rotation(std::vector<PlanePoint> from, double angle) {
  PlaneMove m;
  m.kind = Kind::Rotation;
  m.from = std::move(from);
  m.angle = angle;
  m.to = m.raw(1.0);
  return m;
}

PlaneMove PlaneMove::arc_equalize(std::vector<PlanePoint> from, std::vector<double> rate) {
  require_same_size(from.size(), rate.size(), "arc equalization needs one rate per track");
  PlaneMove m;
  m.kind = Kind::ArcEqualize;
  m.from = std::move(from);
  m.rate = std::move(rate);
  m.to = m.raw(1.0);
  return m;
}

std::vector<PlanePoint> PlaneMove::raw(double s) const {
  std::vector<PlanePoint> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    switch (kind) {
      case Kind::Linear:
      case Kind::RadialSlide:
        out[i] = PlanePoint((1.0 - s) * from[i].z() + s * target[i].z());
        break;
      case Kind::Rotation:
        out[i] = PlanePoint(from[i].z() * unit(angle * s));
        break;
      case Kind::ArcEqualize:
        out[i] = PlanePoint(from[i].z() * unit(rate[i] * s));
        break;
    }
  }
  return out;
}

double PlaneMove::compensation_at(double s) const {
  if (compensation.empty()) return 0.0;
  s = std::clamp(s, 0.0, 1.0);
  auto it = std::upper_bound(knots.begin(), knots.end(), s);
  double base;
  if (it == knots.end()) {
    base = compensation.back();
  } else {
    const auto j = static_cast<std::size_t>(it - knots.begin()) - 1;
    const double f = (s - knots[j]) / (knots[j + 1] - knots[j]);
    base = (1.0 - f) * compensation[j] + f * compensation[j + 1];
  }
  if (!orientation_lift) return base;
  const double exact = std::arg(orientation_of(raw(s)) / lift_origin);
  return base + std::remainder(exact - 6.0 * base, 2.0 * std::numbers::pi) / 6.0;
}

void PlaneMove::set_compensation(std::vector<double> t, std::vector<double> phi, bool lift) {
  require_same_size(t.size(), phi.size(), "one compensation value per knot");
  if (t.size() < 2 || t.front() != 0.0 || t.back() != 1.0)
    throw Error(ErrorCode::InvalidArgument, "compensation knots must span [0, 1]");
  for (std::size_t j = 1; j < t.size(); ++j)
    if (!(t[j] > t[j - 1])) throw Error(ErrorCode::InvalidArgument, "compensation knots must increase");
  knots = std::move(t);
  compensation = std::move(phi);
  orientation_lift = lift;
  lift_origin = orientation_of(raw(0.0));
  auto end = raw(1.0);
  const auto r = unit(-compensation_at(1.0));
  for (auto& p : end) p = PlanePoint(p.z() * r);
  to = std::move(end);
}

void PlaneMove::snap_end(std::vector<PlanePoint> exact, double slack) {
  require_same_size(exact.size(), from.size(), "snapped endpoint differs in size");
  auto formula = raw(1.0);
  const auto r = unit(-compensation_at(1.0));
  for (std::size_t i = 0; i < exact.size(); ++i) {
    if (std::abs(formula[i].z() * r - exact[i].z()) > slack)
      throw Error(ErrorCode::ChainBreak, "snapped endpoint disagrees with the motion formula");
  }
  to = std::move(exact);
}

std::vector<PlanePoint> PlaneMove::eval(double s) const {
  if (s <= 0.0) return from;
  if (s >= 1.0) return to;
  auto out = raw(s);
  if (!compensation.empty()) {
    const auto r = unit(-compensation_at(s));
    for (auto& p : out) p = PlanePoint(p.z() * r);
  }
  return out;
}

double PlaneMove::speed_bound() const {
  double v = 0.0;
  double radius = 0.0;
  for (std::size_t i = 0; i < from.size(); ++i) {
    const double r0 = std::abs(from[i].z());
    switch (kind) {
      case Kind::Linear:
      case Kind::RadialSlide:
        v = std::max(v, std::abs(target[i].z() - from[i].z()));
        radius = std::max({radius, r0, std::abs(target[i].z())});
        break;
      case Kind::Rotation:
        v = std::max(v, std::abs(angle) * r0);
        radius = std::max(radius, r0);
        break;
      case Kind::ArcEqualize:
        v = std::max(v, std::abs(rate[i]) * r0);
        radius = std::max(radius, r0);
        break;
    }
  }
  if (compensation.size() >= 2) {
    double dphi = 0.0;
    for (std::size_t j = 1; j < compensation.size(); ++j)
      dphi = std::max(dphi, std::abs(compensation[j] - compensation[j - 1]) / (knots[j] - knots[j - 1]));
    v += dphi * radius;
  }
  return v;
}

std::string_view PlaneMove::kind_name() const {
  switch (kind) {
    case Kind::Linear: return "plane-linear";
    case Kind::Rotation: return "rotation-about-origin";
    case Kind::RadialSlide: return "radial-slide";
    case Kind::ArcEqualize: return "arc-equalize";
  }
  return "plane-linear";
}

}  // namespace confplan
