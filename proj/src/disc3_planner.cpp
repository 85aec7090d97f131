#include "confplan/disc3_planner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>

namespace confplan::disc3 {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using cplx = std::complex<double>;

void require_three(std::span<const PlanePoint> pts) {
  if (pts.size() != 3) throw Error(ErrorCode::SizeMismatch, "the disc planner handles exactly three points");
}

// Representative of a in [0, period).
double wrap_mod(double a, double period) {
  double r = std::fmod(a, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

// Representative of a in [-period/2, period/2).
double wrap_centered(double a, double period) {
  double r = wrap_mod(a + 0.5 * period, period) - 0.5 * period;
  return r;
}

Tracks to_tracks(std::span<const PlanePoint> pts) { return {pts.begin(), pts.end()}; }

Path single(PlaneMove move, std::string label) {
  return Path({{std::move(move), 1.0, false, {}, std::move(label)}});
}

// Angular rotation compensating the drift of delta along the raw motion of
// `move`: phi(s) = (unwrapped arg of delta(raw(s)) / delta(raw(0))) / 6.
// The table starts on a uniform grid of `steps` intervals; an interval is
// bisected while delta turns by pi/8 or more across it or its midpoint
// disagrees with the straight lift.
void compensate(PlaneMove& move, std::size_t steps) {
  constexpr double kGuard = kPi / 8.0;
  constexpr int kMaxDepth = 48;
  std::vector<double> knots{0.0};
  std::vector<double> phi{0.0};
  double acc = 0.0;

  auto delta_at = [&](double s) { return orientation(move.raw(s)).delta; };
  auto refine = [&](auto&& self, double s0, double s1, cplx d0, cplx d1, int depth) -> void {
    const double step = std::arg(d1 / d0);
    const double sm = 0.5 * (s0 + s1);
    const cplx dm = delta_at(sm);
    const double split = std::arg(dm / d0) + std::arg(d1 / dm);
    if (std::abs(step) < kGuard && std::abs(split - step) < 1e-9) {
      acc += step;
      knots.push_back(s1);
      phi.push_back(acc / 6.0);
      return;
    }
    if (depth >= kMaxDepth || !(sm > s0 && sm < s1))
      throw Error(ErrorCode::LiftUnwrapFailure, "arg delta cannot be unwrapped along the motion");
    self(self, s0, sm, d0, dm, depth + 1);
    self(self, sm, s1, dm, d1, depth + 1);
  };

  cplx prev = delta_at(0.0);
  for (std::size_t j = 1; j <= steps; ++j) {
    const double s0 = static_cast<double>(j - 1) / static_cast<double>(steps);
    const double s1 = static_cast<double>(j) / static_cast<double>(steps);
    const cplx cur = delta_at(s1);
    refine(refine, s0, s1, prev, cur, 0);
    prev = cur;
  }
  knots.back() = 1.0;
  move.set_compensation(std::move(knots), std::move(phi), true);
}

struct Arcs {
  std::array<std::size_t, 3> order;  // track indices sorted by angle (counterclockwise)
  std::array<double, 3> angle;       // angle of order[r] in [0, 2 pi)
  std::array<double, 3> length;      // arc r runs from order[r] to order[r+1]
};

Arcs arcs_of(std::span<const PlanePoint> pts) {
  Arcs a;
  std::array<double, 3> ang;
  for (std::size_t i = 0; i < 3; ++i) ang[i] = wrap_mod(std::arg(pts[i].z()), kTwoPi);
  a.order = {0, 1, 2};
  std::sort(a.order.begin(), a.order.end(), [&](std::size_t p, std::size_t q) { return ang[p] < ang[q]; });
  for (std::size_t r = 0; r < 3; ++r) a.angle[r] = ang[a.order[r]];
  a.length[0] = a.angle[1] - a.angle[0];
  a.length[1] = a.angle[2] - a.angle[1];
  a.length[2] = kTwoPi - (a.angle[2] - a.angle[0]);
  return a;
}

// First equalization phase: if exactly one arc is minimal, open it
// symmetrically until it ties with the next smallest arc.
std::vector<double> phase_one_rates(std::span<const PlanePoint> pts, double tie) {
  const Arcs a = arcs_of(pts);
  std::vector<double> rate(3, 0.0);
  const auto mit = std::min_element(a.length.begin(), a.length.end());
  const auto m = static_cast<std::size_t>(mit - a.length.begin());
  double second = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < 3; ++r)
    if (r != m) second = std::min(second, a.length[r]);
  if (second - a.length[m] <= tie) return rate;  // two minimal arcs already
  const double d = (2.0 / 3.0) * (second - a.length[m]);
  rate[a.order[m]] = -0.5 * d;
  rate[a.order[(m + 1) % 3]] = 0.5 * d;
  return rate;
}

// Second phase: close the strictly longest arc YZ symmetrically until every
// arc is a third of the circle. The vertex X off that arc stays put and the
// targets are placed exactly 2 pi / 3 away from it.
std::vector<double> phase_two_rates(std::span<const PlanePoint> pts) {
  const Arcs a = arcs_of(pts);
  std::vector<double> rate(3, 0.0);
  const auto j = static_cast<std::size_t>(std::max_element(a.length.begin(), a.length.end()) - a.length.begin());
  const std::size_t y = j, z = (j + 1) % 3, x = (j + 2) % 3;
  const double target_y = a.angle[x] + 2.0 * kPi / 3.0;
  const double target_z = a.angle[x] - 2.0 * kPi / 3.0;
  rate[a.order[y]] = wrap_centered(target_y - a.angle[y], kTwoPi);
  rate[a.order[z]] = wrap_centered(target_z - a.angle[z], kTwoPi);
  return rate;
}

// Outer pair (a, b) and middle index m of a collinear triple.
struct LineFrame {
  std::size_t a, b, m;
  cplx u;  // unit direction from a to b
};

LineFrame line_frame(std::span<const PlanePoint> pts) {
  LineFrame f{0, 1, 2, {1.0, 0.0}};
  double best = -1.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double d = distance(pts[i], pts[j]);
      if (d > best) {
        best = d;
        f.a = i;
        f.b = j;
      }
    }
  f.m = 3 - f.a - f.b;
  f.u = (pts[f.b].z() - pts[f.a].z()) / best;
  return f;
}

double line_direction(std::span<const PlanePoint> line) {
  const auto f = line_frame(line);
  return wrap_mod(std::arg(f.u), kPi);
}

double triangle_phase(std::span<const PlanePoint> tri) {
  return wrap_mod(std::arg(tri[0].z()), 2.0 * kPi / 3.0);
}

// Index pair of the triangle side parallel (mod pi) to direction `dir`.
std::optional<std::pair<std::size_t, std::size_t>> parallel_side(std::span<const PlanePoint> tri, double dir,
                                                                 double tol, double* mismatch = nullptr) {
  std::optional<std::pair<std::size_t, std::size_t>> hit;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      const double side = std::arg(tri[j].z() - tri[i].z());
      const double diff = wrap_centered(side - dir, kPi);
      if (std::abs(diff) < std::abs(best)) best = diff;
      if (std::abs(diff) < tol) {
        if (hit) return std::nullopt;  // not unique
        hit = std::make_pair(i, j);
      }
    }
  if (mismatch) *mismatch = best;
  return hit;
}

// Assigns every point of `from` to the nearest point of `onto`.
Tracks match_nearest(std::span<const PlanePoint> from, std::span<const PlanePoint> onto) {
  Tracks out(from.size());
  std::vector<bool> used(onto.size(), false);
  for (std::size_t i = 0; i < from.size(); ++i) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < onto.size(); ++j) {
      const double d = distance(from[i], onto[j]);
      if (!used[j] && d < bd) {
        bd = d;
        best = j;
      }
    }
    used[best] = true;
    out[i] = onto[best];
  }
  return out;
}

// Moves the triangle onto the line: the vertex opposite the parallel side
// to the origin, the side's endpoints to the outer points.
PlaneMove triangle_onto_line(std::span<const PlanePoint> tri, std::span<const PlanePoint> line, const Tolerances& tol) {
  const double dir = line_direction(line);
  const auto side = parallel_side(tri, dir, tol.tau_geom);
  if (!side) throw Error(ErrorCode::NoParallelSide, "no unique triangle side parallel to the line");
  const auto [i, j] = *side;
  const std::size_t opposite = 3 - i - j;

  const auto f = line_frame(line);
  Tracks target(3);
  target[opposite] = line[f.m];
  const std::array<PlanePoint, 2> outer{line[f.a], line[f.b]};
  const bool i_to_a = distance(tri[i], outer[0]) + distance(tri[j], outer[1]) <=
                      distance(tri[i], outer[1]) + distance(tri[j], outer[0]);
  target[i] = i_to_a ? outer[0] : outer[1];
  target[j] = i_to_a ? outer[1] : outer[0];
  return PlaneMove::linear(to_tracks(tri), std::move(target));
}

void require_separated(const Config& c) {
  if (min_separation(c) < kMinInputSeparation)
    throw Error(ErrorCode::InsufficientSeparation, "input points closer than 1e-7");
}

}  // namespace

std::complex<double> discriminant(std::span<const PlanePoint> pts) {
  require_three(pts);
  const cplx a = pts[0].z() - pts[1].z();
  const cplx b = pts[1].z() - pts[2].z();
  const cplx c = pts[2].z() - pts[0].z();
  return a * a * b * b * c * c;
}

Orientation orientation(std::span<const PlanePoint> pts) {
  const cplx d = discriminant(pts);
  const double r = std::abs(d);
  if (!(r > 0.0)) throw Error(ErrorCode::DuplicatePoint, "discriminant vanishes");
  return {d / r};
}

bool is_collinear(std::span<const PlanePoint> pts, const Tolerances& tol) {
  require_three(pts);
  const cplx e1 = pts[1].z() - pts[0].z();
  const cplx e2 = pts[2].z() - pts[0].z();
  const double area = std::abs((e1 * std::conj(e2)).imag());
  const double diam2 = std::max({std::norm(e1), std::norm(e2), std::norm(pts[2].z() - pts[1].z())});
  return area / diam2 < tol.tau_geom;
}

std::string Stratum::to_string() const {
  static constexpr const char* kIndex[] = {"E0", "E1", "E2", "E3"};
  static constexpr const char* kComp[] = {"LL", "TL", "LT", "TT"};
  return std::string(kIndex[static_cast<int>(index)]) + " (" + (oriented ? "P" : "N") + "," +
         kComp[static_cast<int>(component)] + ")";
}

StratumIndex stratum_index(Component component, bool oriented) {
  int collinear_factors = component == Component::LL ? 2 : (component == Component::TT ? 0 : 1);
  // E_i collects the pairs with (number of triangle factors) + [N] = i.
  int i = (2 - collinear_factors) + (oriented ? 0 : 1);
  return static_cast<StratumIndex>(i);
}

Stratum stratum(const Config& x, const Config& y, const Tolerances& tol) {
  const bool lx = is_collinear(x, tol);
  const bool ly = is_collinear(y, tol);
  Stratum s;
  s.component = lx ? (ly ? Component::LL : Component::LT) : (ly ? Component::TL : Component::TT);
  s.oriented = std::abs(orientation(x).delta - orientation(y).delta) < tol.tau_geom;
  s.index = stratum_index(s.component, s.oriented);
  return s;
}

Tracks rotate(std::span<const PlanePoint> pts, double angle) {
  const cplx r = std::polar(1.0, angle);
  Tracks out;
  for (const auto& p : pts) out.emplace_back(p.z() * r);
  return out;
}

Retraction retract_line(std::span<const PlanePoint> pts, const Tolerances& tol) {
  require_three(pts);
  if (!is_collinear(pts, tol)) throw Error(ErrorCode::PreconditionViolated, "r_L needs a collinear configuration");
  const auto f = line_frame(pts);
  const cplx centre = pts[f.m].z();

  Tracks shifted(3);
  for (std::size_t i = 0; i < 3; ++i) shifted[i] = PlanePoint(pts[i].z() - centre);
  PlaneMove translate = PlaneMove::linear(to_tracks(pts), shifted);

  Tracks target = shifted;
  target[f.a] = PlanePoint(-f.u);
  target[f.b] = PlanePoint(f.u);
  target[f.m] = PlanePoint(0.0, 0.0);
  PlaneMove slide = PlaneMove::linear(shifted, std::move(target), PlaneMove::Kind::RadialSlide);

  Path path({{std::move(translate), 1.0, false, {}, "retract_line:translate"},
             {std::move(slide), 1.0, false, {}, "retract_line:slide"}});
  return {std::move(path), {CanonicalForm::Kind::LR, wrap_mod(std::arg(f.u), kPi)}};
}

Retraction retract_triangle(std::span<const PlanePoint> pts, const Tolerances& tol) {
  require_three(pts);
  if (is_collinear(pts, tol)) throw Error(ErrorCode::PreconditionViolated, "r_T needs a proper triangle");

  const cplx centroid = (pts[0].z() + pts[1].z() + pts[2].z()) / 3.0;
  Tracks centred(3);
  for (std::size_t i = 0; i < 3; ++i) centred[i] = PlanePoint(pts[i].z() - centroid);
  PlaneMove translate = PlaneMove::linear(to_tracks(pts), centred);

  Tracks projected(3);
  for (std::size_t i = 0; i < 3; ++i) projected[i] = PlanePoint(centred[i].z() / std::abs(centred[i].z()));
  PlaneMove radial = PlaneMove::linear(centred, std::move(projected), PlaneMove::Kind::RadialSlide);
  compensate(radial, tol.lift_steps);

  PlaneMove widen = PlaneMove::arc_equalize(radial.to, phase_one_rates(radial.to, tol.tau_geom));
  compensate(widen, tol.lift_steps);

  PlaneMove close = PlaneMove::arc_equalize(widen.to, phase_two_rates(widen.to));
  compensate(close, tol.lift_steps);

  const double phase = triangle_phase(close.to);
  Path path({{std::move(translate), 1.0, false, {}, "retract_triangle:translate"},
             {std::move(radial), 1.0, false, {}, "retract_triangle:radial"},
             {std::move(widen), 1.0, false, {}, "retract_triangle:equalize-1"},
             {std::move(close), 1.0, false, {}, "retract_triangle:equalize-2"}});
  return {std::move(path), {CanonicalForm::Kind::TR, phase}};
}

double coorientation_gap(const Orientation& x, const Orientation& y) {
  double a = -std::arg(y.delta / x.delta);
  if (a <= 0.0) a += kTwoPi;
  return a;
}

Path coorient(std::span<const PlanePoint> x, const Config& y, const Tolerances& tol) {
  require_three(x);
  const auto dx = orientation(x);
  const auto dy = orientation(y);
  if (std::abs(dx.delta - dy.delta) < tol.tau_geom)
    throw Error(ErrorCode::PreconditionViolated, "pair is already cooriented");
  const double alpha = coorientation_gap(dx, dy);
  return single(PlaneMove::rotation(to_tracks(x), -alpha / 6.0), "coorient");
}

double orbit_angle(std::span<const PlanePoint> xhat, std::span<const PlanePoint> yhat, const Tolerances& tol) {
  const bool lx = is_collinear(xhat, tol);
  const bool ly = is_collinear(yhat, tol);
  // Same-kind results land in [-pi/6, 5pi/6) resp. [-pi/6, pi/2) so that
  // every orbit value sits well inside the range.
  if (lx && ly) return wrap_centered(line_direction(xhat) - line_direction(yhat) - kPi / 3.0, kPi) + kPi / 3.0;
  if (!lx && !ly) {
    constexpr double period = 2.0 * kPi / 3.0;
    return wrap_centered(triangle_phase(xhat) - triangle_phase(yhat) - kPi / 6.0, period) + kPi / 6.0;
  }
  double mismatch = 0.0;
  parallel_side(lx ? yhat : xhat, line_direction(lx ? xhat : yhat), tol.tau_geom, &mismatch);
  return mismatch;
}

PairDeformation align_terminal(std::span<const PlanePoint> xhat, std::span<const PlanePoint> yhat,
                               const Tolerances& tol) {
  require_three(xhat);
  require_three(yhat);
  const bool lx = is_collinear(xhat, tol);
  const bool ly = is_collinear(yhat, tol);
  const Tracks xs = to_tracks(xhat), ys = to_tracks(yhat);

  if (lx == ly) {
    // Same kind: rotate x clockwise by the relative orbit angle.
    const double rel = orbit_angle(xhat, yhat, tol);
    PlaneMove turn = PlaneMove::rotation(xs, -rel);
    turn.snap_end(match_nearest(turn.to, ys), 1e-6);
    return {single(std::move(turn), "align:rotate"), single(PlaneMove::identity(ys), "align:rest")};
  }
  if (!lx) return {single(triangle_onto_line(xs, ys, tol), "align:triangle-to-line"),
                   single(PlaneMove::identity(ys), "align:rest")};
  return {single(PlaneMove::identity(xs), "align:rest"), single(triangle_onto_line(ys, xs, tol), "align:triangle-to-line")};
}

Path pair_deformation_to_path(const PairDeformation& h) { return join(h.hx, h.hy.reversed(), 0.5); }

Plan plan(const Config& x, const Config& y, const Tolerances& tol) {
  tol.validate();
  if (x.size() != 3 || y.size() != 3) throw Error(ErrorCode::SizeMismatch, "the disc planner handles exactly three points");
  require_separated(x);
  require_separated(y);

  const Stratum st = stratum(x, y, tol);
  std::vector<Path::Segment> hx, hy;
  auto append = [](std::vector<Path::Segment>& dst, const Path& p, const char* who) {
    for (const auto& s : p.segments()) {
      dst.push_back(s);
      dst.back().weight = 1.0;
      dst.back().label = std::string(who) + " " + s.label;
    }
  };

  Tracks xt = to_tracks(x.points());
  if (!st.oriented) {
    Path rot = coorient(xt, y, tol);
    xt = rot.evaluate_tracks(1.0);
    append(hx, rot, "x");
  }
  const bool lx = st.component == Component::LL || st.component == Component::LT;
  const bool ly = st.component == Component::LL || st.component == Component::TL;

  Retraction rx = lx ? retract_line(xt, tol) : retract_triangle(xt, tol);
  Retraction ry = ly ? retract_line(y.points(), tol) : retract_triangle(y.points(), tol);
  append(hx, rx.path, "x");
  append(hy, ry.path, "y");

  auto tail = align_terminal(rx.path.evaluate_tracks(1.0), ry.path.evaluate_tracks(1.0), tol);
  append(hx, tail.hx, "x");
  append(hy, tail.hy, "y");

  PairDeformation h{Path(std::move(hx)), Path(std::move(hy))};
  Path path = pair_deformation_to_path(h);
  return {std::move(path), st, std::move(h)};
}

}  // namespace confplan::disc3
