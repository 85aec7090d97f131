#pragma once

#include <cstdint>
#include <random>
#include <utility>

#include "confplan/configuration.hpp"

namespace confplan {

enum class Surface { Annulus, Disc };

/// The one random source of the project: std::mt19937_64 (whose output
/// sequence is fixed by the standard) with hand-written mappings, so that
/// seeds reproduce across standard libraries.
///   uniform()      = (next() >> 11) * 2^-53          in [0, 1)
///   uniform(a, b)  = a + (b - a) * uniform()
///   index(n)       = next() % n                      (bias below 2^-40 for n < 2^24)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  int integer(int lo, int hi) { return lo + static_cast<int>(index(static_cast<std::size_t>(hi - lo + 1))); }
  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 eng_;
};

inline constexpr double kSampleSeparation = 1e-3;
inline constexpr double kSampleHeight = 10.0;  // annulus heights in [-10, 10]
inline constexpr double kSampleRadius = 10.0;  // disc points in |z| < 10

/// Generic draws: annulus angles uniform on the circle, disc points uniform
/// in the disc of radius 10. Min separation >= 1e-3 by rejection.
AnnulusConfiguration random_annulus_configuration(std::size_t n, Rng& rng);
PlaneConfiguration random_disc_configuration(std::size_t n, Rng& rng);

/// Seeded convenience form; deterministic per (n, seed).
AnnulusConfiguration random_annulus_configuration(std::size_t n, std::uint64_t seed);
PlaneConfiguration random_disc_configuration(std::size_t n, std::uint64_t seed);

/// Stratum-covering pair draws. Generic draws almost surely land in the
/// top stratum (all 2n angles distinct; two cooriented-free triangles), so
/// the pair samplers first pick the structure and then the geometry:
///  - annulus: a pool of K angles (K uniform in 1..2n) shared by both
///    configurations, each point picking its angle from the pool;
///  - disc: each factor is collinear with probability 1/4, and with
///    probability 1/2 y is rotated about the origin to be cooriented with x.
std::pair<AnnulusConfiguration, AnnulusConfiguration> random_annulus_pair(std::size_t n, Rng& rng);
std::pair<PlaneConfiguration, PlaneConfiguration> random_disc_pair(Rng& rng);

/// Three collinear points inside the sampling disc.
PlaneConfiguration random_collinear_triple(Rng& rng);

}  // namespace confplan
