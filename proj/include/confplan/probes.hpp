#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "confplan/annulus_planner.hpp"
#include "confplan/disc3_planner.hpp"
#include "confplan/sampling.hpp"

/// Property drivers: stratum coverage, per-stratum continuity, and the
/// winding-number cross-check between planned annulus loops and braid
/// linking numbers.
namespace confplan::probes {

/// Sup over n_time_samples uniform times of the largest track displacement
/// between two paths. Tracks are paired by nearest start point; the pairing
/// must be a bijection (throws InvalidArgument otherwise).
template <class Move>
double path_deviation(const PathPlan<Move>& a, const PathPlan<Move>& b, std::size_t samples);

struct ContinuityReport {
  std::size_t accepted = 0;
  std::size_t escapes = 0;          // perturbed pair left the stratum; excluded
  double max_deviation = 0.0;
  std::vector<double> ratios;       // deviation / perturbation size, accepted trials only

  std::size_t within(double factor) const;
};

/// Plans (x, y) and `trials` perturbations of it of size at most h that
/// stay inside the same stratum (same degree and psi class; same fibers are
/// kept shared), and records how far the planned paths move.
ContinuityReport continuity_probe(const annulus::Config& x, const annulus::Config& y, double h, std::size_t trials,
                                  Rng& rng, const Tolerances& tol = {});

/// Disc version: collinear factors are perturbed along their line plus a
/// common normal offset, triangles freely; cooriented pairs are re-cooriented
/// by a small rotation of y. Ratios use the realized input displacement.
ContinuityReport continuity_probe(const disc3::Config& x, const disc3::Config& y, double h, std::size_t trials,
                                  Rng& rng, const Tolerances& tol = {});

struct PartitionReport {
  std::map<std::string, std::size_t> histogram;
  std::size_t trials = 0;
  std::size_t unlabeled = 0;        // pairs where zero or several predicates held
  std::size_t out_of_range = 0;     // annulus degree outside 1..2n
  std::size_t distinct_labels() const { return histogram.size(); }
};

/// Annulus: labels are degrees "1".."2n". Disc: "E0".."E3".
PartitionReport partition_check(Surface surface, std::size_t n, std::size_t trials, std::uint64_t seed,
                                const Tolerances& tol = {});

/// The four defining predicates of E0..E3 evaluated independently.
std::array<bool, 4> disc_predicates(const disc3::Config& x, const disc3::Config& y, const Tolerances& tol = {});

/// Two independent readings of the closed annulus loop x -> y -> x (n = 2;
/// repeated once more if the loop swaps the points). The annulus is drawn
/// in the punctured plane by a sheared exponential chart, the hole becoming a
/// third, fixed strand.
///   braid side:   crossings of the projection to a generic line give a
///                 pure 3-strand word, fed to linking_matrix;
///   winding side: arg of pairwise differences integrated along the loop.
struct WindingCheck {
  int loops = 1;
  std::size_t crossings = 0;
  std::int64_t psi_points = 0;      // linking of the two moving points
  std::array<std::int64_t, 2> psi_hole{};
  double winding_points = 0.0;
  std::array<double, 2> winding_hole{};

  bool agree() const;
};

WindingCheck annulus_loop_cross_check(const annulus::Config& x, const annulus::Config& y, const Tolerances& tol = {});

}  // namespace confplan::probes
