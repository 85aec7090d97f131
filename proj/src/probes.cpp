#include "confplan/probes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <numeric>

#include "confplan/braid.hpp"

namespace confplan::probes {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

template <class P>
std::vector<std::size_t> nearest_pairing(std::span<const P> a, std::span<const P> b) {
  std::vector<std::size_t> map(a.size());
  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      double d = distance(a[i], b[j]);
      if (d < bd) {
        bd = d;
        best = j;
      }
    }
    if (used[best]) throw Error(ErrorCode::InvalidArgument, "start configurations cannot be paired by proximity");
    used[best] = true;
    map[i] = best;
  }
  return map;
}

template <class P>
double pointwise_displacement(const Configuration<P>& a, const Configuration<P>& b) {
  auto map = nearest_pairing<P>(a.points(), b.points());
  double d = 0.0;
  for (std::size_t i = 0; i < map.size(); ++i) d = std::max(d, distance(a[i], b[map[i]]));
  return d;
}

}  // namespace

template <class Move>
double path_deviation(const PathPlan<Move>& a, const PathPlan<Move>& b, std::size_t samples) {
  using P = typename Move::point_type;
  const auto a0 = a.evaluate_tracks(0.0);
  const auto b0 = b.evaluate_tracks(0.0);
  const auto map = nearest_pairing<P>(a0, b0);
  samples = std::max<std::size_t>(samples, 2);
  double dev = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double t = static_cast<double>(s) / static_cast<double>(samples - 1);
    const auto pa = a.evaluate_tracks(t);
    const auto pb = b.evaluate_tracks(t);
    for (std::size_t i = 0; i < map.size(); ++i) dev = std::max(dev, distance(pa[i], pb[map[i]]));
  }
  return dev;
}

template double path_deviation(const AnnulusPath&, const AnnulusPath&, std::size_t);
template double path_deviation(const PlanePath&, const PlanePath&, std::size_t);

std::size_t ContinuityReport::within(double factor) const {
  return static_cast<std::size_t>(std::count_if(ratios.begin(), ratios.end(), [&](double r) { return r < factor; }));
}

ContinuityReport continuity_probe(const annulus::Config& x, const annulus::Config& y, double h, std::size_t trials,
                                  Rng& rng, const Tolerances& tol) {
  ContinuityReport rep;
  const auto base = annulus::plan(x, y, tol);
  const auto fd = annulus::fiber_decomposition(x, y, tol);
  auto fiber_of = [&](double theta) {
    std::size_t best = 0;
    double gap = 1.0;
    for (std::size_t i = 0; i < fd.k(); ++i) {
      double g = std::abs(signed_turn_difference(theta, fd.angles[i]));
      if (g < gap) {
        gap = g;
        best = i;
      }
    }
    return best;
  };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    // Shared fibers move together so that the degree cannot change.
    std::vector<double> shift(fd.k());
    for (auto& s : shift) s = rng.uniform(-0.5 * h, 0.5 * h);
    auto perturb = [&](const annulus::Config& c) {
      std::vector<AnnulusPoint> pts;
      for (const auto& p : c.points())
        pts.emplace_back(p.theta + shift[fiber_of(p.theta)], p.height + rng.uniform(-0.5 * h, 0.5 * h));
      return annulus::Config::canonicalize(std::move(pts));
    };
    const auto xp = perturb(x);
    const auto yp = perturb(y);
    if (annulus::classify(xp, yp, tol) != base.stratum) {
      ++rep.escapes;
      continue;
    }
    const auto moved = annulus::plan(xp, yp, tol);
    const double dev = path_deviation(base.path, moved.path, tol.n_time_samples);
    ++rep.accepted;
    rep.max_deviation = std::max(rep.max_deviation, dev);
    rep.ratios.push_back(h > 0.0 ? dev / h : (dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity()));
  }
  return rep;
}

ContinuityReport continuity_probe(const disc3::Config& x, const disc3::Config& y, double h, std::size_t trials,
                                  Rng& rng, const Tolerances& tol) {
  ContinuityReport rep;
  const auto base = disc3::plan(x, y, tol);

  auto perturb = [&](const disc3::Config& c) {
    std::vector<PlanePoint> pts;
    if (disc3::is_collinear(c, tol)) {
      const cplx u = (c[2].z() - c[0].z()) / std::abs(c[2].z() - c[0].z());
      const cplx normal = u * cplx(0.0, 1.0) * rng.uniform(-h / 3.0, h / 3.0);
      for (const auto& p : c.points()) pts.emplace_back(p.z() + normal + u * rng.uniform(-h / 3.0, h / 3.0));
    } else {
      for (const auto& p : c.points()) pts.emplace_back(p.re + rng.uniform(-h / 3.0, h / 3.0), p.im + rng.uniform(-h / 3.0, h / 3.0));
    }
    return disc3::Config::canonicalize(std::move(pts));
  };

  for (std::size_t trial = 0; trial < trials; ++trial) {
    const auto xp = perturb(x);
    auto yp = perturb(y);
    if (base.stratum.oriented) {
      const double angle = std::arg(disc3::orientation(xp).delta / disc3::orientation(yp).delta) / 6.0;
      yp = disc3::Config::canonicalize(disc3::rotate(yp.points(), angle));
    }
    if (disc3::stratum(xp, yp, tol) != base.stratum) {
      ++rep.escapes;
      continue;
    }
    const auto moved = disc3::plan(xp, yp, tol);
    const double dev = path_deviation(base.path, moved.path, tol.n_time_samples);
    const double input = std::max(pointwise_displacement(x, xp), pointwise_displacement(y, yp));
    ++rep.accepted;
    rep.max_deviation = std::max(rep.max_deviation, dev);
    rep.ratios.push_back(input > 0.0 ? dev / input : (dev == 0.0 ? 0.0 : std::numeric_limits<double>::infinity()));
  }
  return rep;
}

std::array<bool, 4> disc_predicates(const disc3::Config& x, const disc3::Config& y, const Tolerances& tol) {
  const bool lx = disc3::is_collinear(x, tol), ly = disc3::is_collinear(y, tol);
  const bool tx = !lx, ty = !ly;
  const bool p = std::abs(disc3::orientation(x).delta - disc3::orientation(y).delta) < tol.tau_geom;
  const bool nn = !p;
  const bool ll = lx && ly, tt = tx && ty, mixed = (tx && ly) || (lx && ty);
  return {p && ll, (nn && ll) || (p && mixed), (nn && mixed) || (p && tt), nn && tt};
}

PartitionReport partition_check(Surface surface, std::size_t n, std::size_t trials, std::uint64_t seed,
                                const Tolerances& tol) {
  PartitionReport rep;
  rep.trials = trials;
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    if (surface == Surface::Annulus) {
      const auto [x, y] = random_annulus_pair(n, rng);
      const int k = annulus::degree(x, y, tol);
      if (k < 1 || k > static_cast<int>(2 * n)) ++rep.out_of_range;
      ++rep.histogram[std::to_string(k)];
    } else {
      const auto [x, y] = random_disc_pair(rng);
      const auto preds = disc_predicates(x, y, tol);
      const auto held = std::count(preds.begin(), preds.end(), true);
      const auto st = disc3::stratum(x, y, tol);
      if (held != 1 || !preds[static_cast<std::size_t>(st.index)]) {
        ++rep.unlabeled;
        continue;
      }
      ++rep.histogram["E" + std::to_string(static_cast<int>(st.index))];
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Winding cross-check

namespace {

// S^1 x R -> C^*: (theta, h) -> exp(h / 8) exp(2 pi i (theta + h / 7 pi)). The
// shear keeps points of one fiber off a common ray through the hole, where
// every projection would see them collide.
cplx embed_point(const AnnulusPoint& p) {
  return std::polar(std::exp(p.height / 8.0), 2.0 * kPi * (p.theta + p.height / (7.0 * kPi)));
}

// Projection direction chosen away from any rational angle.
const cplx kFrame = std::polar(1.0, -1.0 / kPi);

struct Strands {
  std::array<cplx, 3> z;  // two tracks, then the hole at the origin
};

Strands strands_at(const AnnulusPath& loop, double t) {
  const auto pts = loop.evaluate_tracks(t);
  return {{embed_point(pts[0]), embed_point(pts[1]), cplx(0.0, 0.0)}};
}

std::array<int, 3> order_at(const Strands& s) {
  std::array<int, 3> o{0, 1, 2};
  std::sort(o.begin(), o.end(), [&](int a, int b) { return (s.z[a] * kFrame).real() < (s.z[b] * kFrame).real(); });
  return o;
}

class CrossingReader {
 public:
  explicit CrossingReader(const AnnulusPath& loop) : loop_(loop) {}

  std::vector<int> read(std::size_t grid) {
    double t0 = 0.0;
    auto o0 = order_at(strands_at(loop_, t0));
    initial_ = o0;
    for (std::size_t j = 1; j <= grid; ++j) {
      const double t1 = static_cast<double>(j) / static_cast<double>(grid);
      const auto o1 = order_at(strands_at(loop_, t1));
      resolve(t0, t1, o0, o1, 0);
      t0 = t1;
      o0 = o1;
    }
    return letters_;
  }

  // Strand name (= initial projected position) of each track and the hole.
  std::array<int, 3> names() const {
    std::array<int, 3> n{};
    for (int p = 0; p < 3; ++p) n[initial_[p]] = p;
    return n;
  }

 private:
  void resolve(double t0, double t1, const std::array<int, 3>& o0, const std::array<int, 3>& o1, int depth) {
    if (o0 == o1) return;
    int at = -1;
    for (int i = 0; i < 2; ++i) {
      auto swapped = o0;
      std::swap(swapped[i], swapped[i + 1]);
      if (swapped == o1) at = i;
    }
    const bool single = at >= 0;
    if ((single && t1 - t0 < 1e-7) || depth > 60) {
      if (!single) throw Error(ErrorCode::InvalidArgument, "could not isolate a projection crossing");
      const auto s = strands_at(loop_, 0.5 * (t0 + t1));
      const int left = o0[at], right = o0[at + 1];
      const double above = (s.z[right] * kFrame).imag() - (s.z[left] * kFrame).imag();
      letters_.push_back(above > 0.0 ? at + 1 : -(at + 1));
      return;
    }
    const double tm = 0.5 * (t0 + t1);
    const auto om = order_at(strands_at(loop_, tm));
    resolve(t0, tm, o0, om, depth + 1);
    resolve(tm, t1, om, o1, depth + 1);
  }

  const AnnulusPath& loop_;
  std::array<int, 3> initial_{};
  std::vector<int> letters_;
};

double winding(const AnnulusPath& loop, int a, int b, std::size_t grid) {
  auto diff = [&](double t) {
    const auto s = strands_at(loop, t);
    return s.z[a] - s.z[b];
  };
  std::function<double(double, double, cplx, cplx, int)> integrate = [&](double t0, double t1, cplx w0, cplx w1,
                                                                         int depth) -> double {
    const double step = std::arg(w1 / w0);
    if (std::abs(step) < kPi / 8.0 || depth > 50) return step;
    const double tm = 0.5 * (t0 + t1);
    const cplx wm = diff(tm);
    return integrate(t0, tm, w0, wm, depth + 1) + integrate(tm, t1, wm, w1, depth + 1);
  };
  double total = 0.0;
  cplx w0 = diff(0.0);
  for (std::size_t j = 1; j <= grid; ++j) {
    const double t0 = static_cast<double>(j - 1) / static_cast<double>(grid);
    const double t1 = static_cast<double>(j) / static_cast<double>(grid);
    const cplx w1 = diff(t1);
    total += integrate(t0, t1, w0, w1, 0);
    w0 = w1;
  }
  return total / (2.0 * kPi);
}

}  // namespace

bool WindingCheck::agree() const {
  auto same = [](std::int64_t psi, double w) { return std::abs(static_cast<double>(psi) - w) < 1e-6; };
  return same(psi_points, winding_points) && same(psi_hole[0], winding_hole[0]) && same(psi_hole[1], winding_hole[1]);
}

WindingCheck annulus_loop_cross_check(const annulus::Config& x, const annulus::Config& y, const Tolerances& tol) {
  if (x.size() != 2 || y.size() != 2) throw Error(ErrorCode::SizeMismatch, "the winding cross-check uses two points");
  const auto there = annulus::plan(x, y, tol).path;
  const auto back = annulus::plan(y, x, tol).path;
  AnnulusPath loop = join(there, back, 0.5);
  WindingCheck out;
  if (loop.evaluate_tracks(1.0) != loop.evaluate_tracks(0.0)) {
    loop = join(loop, loop, 0.5);
    out.loops = 2;
  }
  if (loop.evaluate_tracks(1.0) != loop.evaluate_tracks(0.0))
    throw Error(ErrorCode::NotPure, "closed loop does not return every point to its start");

  constexpr std::size_t kGrid = 1 << 14;
  CrossingReader reader(loop);
  const auto letters = reader.read(kGrid);
  out.crossings = letters.size();
  const braid::BraidWord word(3, letters);
  const auto psi = braid::linking_matrix(word);
  const auto name = reader.names();
  out.psi_points = psi.at(name[0], name[1]);
  out.psi_hole = {psi.at(name[0], name[2]), psi.at(name[1], name[2])};

  out.winding_points = winding(loop, 0, 1, kGrid);
  out.winding_hole = {winding(loop, 0, 2, kGrid), winding(loop, 1, 2, kGrid)};
  return out;
}

}  // namespace confplan::probes
