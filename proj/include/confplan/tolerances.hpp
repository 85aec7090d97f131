#pragma once

#include <cstddef>

namespace confplan {

/// Numerical knobs shared by both planners.
struct Tolerances {
  double tau_angle = 1e-9;        // fiber grouping on the circle
  double tau_geom = 1e-9;         // collinearity, coorientation, parallel sides
  std::size_t n_time_samples = 1024;
  std::size_t lift_steps = 4096;  // arg-unwrap resolution for the triangle retraction

  /// Throws Error(InvalidArgument) unless every field is strictly positive.
  void validate() const;
};

/// Inputs closer than this are rejected by the planners.
inline constexpr double kMinInputSeparation = 1e-7;

}  // namespace confplan
