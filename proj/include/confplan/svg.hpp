#pragma once

#include <string>

#include "confplan/io.hpp"

namespace confplan::svg {

/// Trajectory plot of a sampled path: one polyline per track, colored from
/// blue (t = 0) to red (t = 1), start marked by a dot and goal by a square.
/// The annulus is drawn as the strip [0, 1) x [hmin, hmax] whose vertical
/// edges are identified (dashed); tracks are unwrapped across the seam and
/// drawn once per neighboring sheet, clipped to the strip.
std::string render(const io::SampledPath& s, const std::string& title = "");

}  // namespace confplan::svg
