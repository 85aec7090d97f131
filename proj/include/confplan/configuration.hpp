#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "confplan/error.hpp"
#include "confplan/point.hpp"

namespace confplan {

/// Minimum pairwise distance of an ordered list of points (+inf for n < 2).
template <class P>
double min_pairwise_distance(std::span<const P> pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, distance(pts[i], pts[j]));
  return best;
}

/// An unordered configuration of pairwise-distinct points. The points are
/// kept in lexicographic order, so two configurations describe the same
/// unordered set exactly when their point lists compare equal.
template <class P>
class Configuration {
 public:
  using point_type = P;

  Configuration() = default;

  /// Sorts the points; throws DuplicatePoint if two coincide exactly.
  static Configuration canonicalize(std::vector<P> pts) {
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
      throw Error(ErrorCode::DuplicatePoint, "configuration has coincident points");
    Configuration c;
    c.pts_ = std::move(pts);
    return c;
  }

  std::span<const P> points() const { return pts_; }
  const P& operator[](std::size_t i) const { return pts_[i]; }
  std::size_t size() const { return pts_.size(); }

  bool operator==(const Configuration&) const = default;

 private:
  std::vector<P> pts_;
};

using AnnulusConfiguration = Configuration<AnnulusPoint>;
using PlaneConfiguration = Configuration<PlanePoint>;

template <class P>
double min_separation(const Configuration<P>& c) {
  return min_pairwise_distance<P>(c.points());
}

}  // namespace confplan
