#include "confplan/sampling.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "confplan/disc3_planner.hpp"

namespace confplan {

namespace {

template <class P, class Draw>
Configuration<P> draw_separated(std::size_t n, Draw&& draw) {
  std::vector<P> pts;
  pts.reserve(n);
  while (pts.size() < n) {
    P p = draw();
    bool ok = true;
    for (const auto& q : pts)
      if (distance(p, q) < kSampleSeparation) ok = false;
    if (ok) pts.push_back(p);
  }
  return Configuration<P>::canonicalize(std::move(pts));
}

PlanePoint point_in_disc(Rng& rng, double radius) {
  // Rejection from the bounding square keeps the draw uniform.
  for (;;) {
    const double a = rng.uniform(-radius, radius);
    const double b = rng.uniform(-radius, radius);
    if (a * a + b * b < radius * radius) return {a, b};
  }
}

}  // namespace

AnnulusConfiguration random_annulus_configuration(std::size_t n, Rng& rng) {
  return draw_separated<AnnulusPoint>(n, [&] {
    const double th = rng.uniform();
    const double h = rng.uniform(-kSampleHeight, kSampleHeight);
    return AnnulusPoint(th, h);
  });
}

PlaneConfiguration random_disc_configuration(std::size_t n, Rng& rng) {
  return draw_separated<PlanePoint>(n, [&] { return point_in_disc(rng, kSampleRadius); });
}

AnnulusConfiguration random_annulus_configuration(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_annulus_configuration(n, rng);
}

PlaneConfiguration random_disc_configuration(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_disc_configuration(n, rng);
}

std::pair<AnnulusConfiguration, AnnulusConfiguration> random_annulus_pair(std::size_t n, Rng& rng) {
  const std::size_t pool_size = 1 + rng.index(2 * n);
  std::vector<double> pool(pool_size);
  for (auto& a : pool) a = rng.uniform();
  auto draw = [&] {
    return draw_separated<AnnulusPoint>(n, [&] {
      const double h = rng.uniform(-kSampleHeight, kSampleHeight);
      return AnnulusPoint(pool[rng.index(pool_size)], h);
    });
  };
  auto x = draw();
  auto y = draw();
  return {std::move(x), std::move(y)};
}

PlaneConfiguration random_collinear_triple(Rng& rng) {
  for (;;) {
    const PlanePoint c = point_in_disc(rng, 0.7 * kSampleRadius);
    const auto u = std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
    std::vector<PlanePoint> pts;
    for (int i = 0; i < 3; ++i) pts.emplace_back(c.z() + rng.uniform(-3.0, 3.0) * u);
    bool ok = true;
    for (const auto& p : pts)
      if (std::abs(p.z()) >= kSampleRadius) ok = false;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j)
        if (distance(pts[i], pts[j]) < kSampleSeparation) ok = false;
    if (ok) return PlaneConfiguration::canonicalize(std::move(pts));
  }
}

std::pair<PlaneConfiguration, PlaneConfiguration> random_disc_pair(Rng& rng) {
  auto factor = [&] { return rng.chance(0.25) ? random_collinear_triple(rng) : random_disc_configuration(3, rng); };
  auto x = factor();
  auto y = factor();
  if (rng.chance(0.5)) {
    const double angle = std::arg(disc3::orientation(x).delta / disc3::orientation(y).delta) / 6.0;
    y = PlaneConfiguration::canonicalize(disc3::rotate(y.points(), angle));
  }
  return {std::move(x), std::move(y)};
}

}  // namespace confplan
