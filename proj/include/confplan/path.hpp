#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "confplan/configuration.hpp"
#include "confplan/error.hpp"
#include "confplan/moves.hpp"
#include "confplan/tolerances.hpp"

namespace confplan {

/// Largest displacement of any track between two ordered point lists.
template <class P>
double track_distance(std::span<const P> a, std::span<const P> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::SizeMismatch, "track lists differ in size");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, distance(a[i], b[i]));
  return d;
}

/// A trajectory built from primitive moves. Points are followed as tracks:
/// track i keeps its identity across segments, which is what the crossing
/// and winding probes need. Segment s occupies the global time interval of
/// length weight[s]; consecutive segments chain exactly (bitwise equal
/// tracks), which the constructor verifies.
template <class Move>
class PathPlan {
 public:
  using point_type = typename Move::point_type;
  using config_type = Configuration<point_type>;
  using tracks_type = std::vector<point_type>;

  struct Segment {
    Move move;
    double weight = 1.0;
    bool reversed = false;
    std::vector<std::size_t> perm;  // track i reads move point perm[i]; empty means identity
    std::string label;

    tracks_type eval(double s) const {
      auto pts = move.eval(reversed ? 1.0 - s : s);
      if (perm.empty()) return pts;
      tracks_type out(pts.size());
      for (std::size_t i = 0; i < perm.size(); ++i) out[i] = pts[perm[i]];
      return out;
    }
  };

  explicit PathPlan(std::vector<Segment> segments) : segs_(std::move(segments)) {
    if (segs_.empty()) throw Error(ErrorCode::InvalidArgument, "path needs at least one segment");
    double total = 0.0;
    for (const auto& s : segs_) {
      if (!(s.weight > 0.0)) throw Error(ErrorCode::InvalidArgument, "segment weights must be positive");
      total += s.weight;
    }
    cum_.assign(segs_.size() + 1, 0.0);
    for (std::size_t k = 0; k < segs_.size(); ++k) {
      segs_[k].weight /= total;
      cum_[k + 1] = cum_[k] + segs_[k].weight;
    }
    cum_.back() = 1.0;
    for (std::size_t k = 0; k + 1 < segs_.size(); ++k) {
      if (segs_[k].eval(1.0) != segs_[k + 1].eval(0.0))
        throw Error(ErrorCode::ChainBreak, "segment " + std::to_string(k) + " does not chain");
    }
    start_ = config_type::canonicalize(segs_.front().eval(0.0));
    goal_ = config_type::canonicalize(segs_.back().eval(1.0));
  }

  static PathPlan constant(const config_type& c) {
    return PathPlan({Segment{Move::identity({c.points().begin(), c.points().end()}), 1.0, false, {}, "constant"}});
  }

  const config_type& start() const { return start_; }
  const config_type& goal() const { return goal_; }
  std::span<const Segment> segments() const { return segs_; }
  std::size_t track_count() const { return start_.size(); }

  /// Global time at which segment k starts.
  double segment_start(std::size_t k) const { return cum_[k]; }

  tracks_type evaluate_tracks(double t) const {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::TimeOutOfRange, "t must lie in [0, 1]");
    if (t == 1.0) return segs_.back().eval(1.0);
    auto it = std::upper_bound(cum_.begin(), cum_.end(), t);
    std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cum_.begin()) - 1, segs_.size() - 1);
    double s = t == cum_[k] ? 0.0 : std::clamp((t - cum_[k]) / segs_[k].weight, 0.0, 1.0);
    return segs_[k].eval(s);
  }

  /// Configuration at global time t (canonical order).
  config_type evaluate(double t) const { return config_type::canonicalize(evaluate_tracks(t)); }

  /// The same trajectory traversed backwards.
  PathPlan reversed() const {
    std::vector<Segment> out(segs_.rbegin(), segs_.rend());
    for (auto& s : out) s.reversed = !s.reversed;
    return PathPlan(std::move(out));
  }

  /// Bound on track speed per unit of global time.
  double max_speed() const {
    double v = 0.0;
    for (const auto& s : segs_) v = std::max(v, s.move.speed_bound() / s.weight);
    return v;
  }

 private:
  std::vector<Segment> segs_;
  std::vector<double> cum_;
  config_type start_;
  config_type goal_;
};

/// Concatenates a and b (b must start where a ends, as unordered sets). a
/// occupies the fraction `split` of the global time. Tracks of b are
/// renamed to continue the tracks of a; throws MidpointMismatch if the
/// junction is not an exact set equality.
template <class Move>
PathPlan<Move> join(const PathPlan<Move>& a, const PathPlan<Move>& b, double split = 0.5) {
  using Segment = typename PathPlan<Move>::Segment;
  if (!(split > 0.0 && split < 1.0)) throw Error(ErrorCode::InvalidArgument, "split must lie in (0, 1)");
  const auto a_end = a.evaluate_tracks(1.0);
  const auto b_start = b.evaluate_tracks(0.0);
  if (a_end.size() != b_start.size()) throw Error(ErrorCode::SizeMismatch, "joined paths differ in size");
  std::vector<std::size_t> map(a_end.size());
  std::vector<bool> used(b_start.size(), false);
  for (std::size_t i = 0; i < a_end.size(); ++i) {
    auto it = std::find(b_start.begin(), b_start.end(), a_end[i]);
    if (it == b_start.end() || used[static_cast<std::size_t>(it - b_start.begin())])
      throw Error(ErrorCode::MidpointMismatch, "paths do not meet exactly");
    map[i] = static_cast<std::size_t>(it - b_start.begin());
    used[map[i]] = true;
  }
  std::vector<Segment> segs;
  for (const auto& s : a.segments()) {
    segs.push_back(s);
    segs.back().weight = s.weight * split;
  }
  for (const auto& s : b.segments()) {
    Segment t = s;
    t.weight = s.weight * (1.0 - split);
    std::vector<std::size_t> perm(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) perm[i] = s.perm.empty() ? map[i] : s.perm[map[i]];
    t.perm = std::move(perm);
    segs.push_back(std::move(t));
  }
  return PathPlan<Move>(std::move(segs));
}

struct ValidationReport {
  bool endpoints_ok = false;
  double min_separation = 0.0;
  double max_step_displacement = 0.0;
  std::size_t samples = 0;

  bool collision_free() const { return min_separation > 0.0; }
  bool ok() const { return endpoints_ok && collision_free(); }
};

/// Samples the path at n_time_samples uniform times (both ends included)
/// and checks the endpoints against the declared start and goal.
template <class Move>
ValidationReport validate_path(const PathPlan<Move>& p, const Configuration<typename Move::point_type>& start,
                               const Configuration<typename Move::point_type>& goal, const Tolerances& tol) {
  using P = typename Move::point_type;
  ValidationReport r;
  const std::size_t n = std::max<std::size_t>(tol.n_time_samples, 2);
  r.samples = n;
  r.min_separation = std::numeric_limits<double>::infinity();
  std::vector<P> prev;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(n - 1);
    auto cur = p.evaluate_tracks(t);
    r.min_separation = std::min(r.min_separation, min_pairwise_distance<P>(cur));
    if (!prev.empty()) r.max_step_displacement = std::max(r.max_step_displacement, track_distance<P>(prev, cur));
    prev = std::move(cur);
  }
  auto ends_match = [&](double t, const Configuration<P>& want) {
    auto pts = p.evaluate_tracks(t);
    std::sort(pts.begin(), pts.end());
    return std::equal(pts.begin(), pts.end(), want.points().begin(), want.points().end());
  };
  r.endpoints_ok = ends_match(0.0, start) && ends_match(1.0, goal);
  return r;
}

template <class Move>
ValidationReport validate_path(const PathPlan<Move>& p, const Tolerances& tol) {
  return validate_path(p, p.start(), p.goal(), tol);
}

using AnnulusPath = PathPlan<AnnulusMove>;
using PlanePath = PathPlan<PlaneMove>;

}  // namespace confplan
