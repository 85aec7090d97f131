#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "confplan/configuration.hpp"
#include "confplan/path.hpp"
#include "confplan/tolerances.hpp"

/// Motion planner for n unordered points on the annulus S^1 x R.
///
/// A pair (x, y) is stratified by its degree: the number of distinct circle
/// angles used by x and y together. On each stratum the rule is the same:
/// while some fiber holds more x-points than y-points, push the surplus top
/// points of every such fiber one fiber forward (increasing theta), stacking
/// them above whatever x already has there; once every fiber is balanced,
/// interpolate heights fiber by fiber.
namespace confplan::annulus {

using Config = AnnulusConfiguration;
using Path = AnnulusPath;

/// Circle angles of a point set with multiplicities forgotten. Angles closer
/// than tau_angle (circularly) are merged; merged clusters wider than
/// 10 tau_angle raise AmbiguousGrouping.
std::vector<double> angular_support(const Config& c, const Tolerances& tol = {});

int degree(const Config& x, const Config& y, const Tolerances& tol = {});

struct FiberDecomposition {
  std::vector<double> angles;  // q_1 < ... < q_k
  std::vector<int> nx;
  std::vector<int> ny;
  std::vector<int> delta;      // nx - ny

  std::size_t k() const { return angles.size(); }
  bool balanced() const;
};

FiberDecomposition fiber_decomposition(const Config& x, const Config& y, const Tolerances& tol = {});

/// Stratum label: degree plus the delta vector up to cyclic rotation,
/// represented by its lexicographically smallest rotation.
struct Stratum {
  int degree = 0;
  std::vector<int> psi_class;

  bool operator==(const Stratum&) const = default;
  std::string to_string() const;
};

Stratum psi_class(const FiberDecomposition& fd);

/// Single fiberwise-linear segment: on each fiber the j-th lowest x-point
/// moves to the j-th lowest y-point. Requires a balanced decomposition.
Path interpolate_fiberwise(const Config& x, const Config& y, const FiberDecomposition& fd);

struct RedistributionStep {
  Path segment;
  Config next;
};

/// One simultaneous push of every surplus block to the following fiber.
/// fd must be the decomposition of (x, y) for some y. Throws
/// PreconditionViolated when fd is already balanced.
RedistributionStep redistribution_step(const Config& x, const FiberDecomposition& fd);

struct Trace {
  std::vector<FiberDecomposition> steps;  // decompositions of (x^(j), y), j = 0..iterations
  int iterations = 0;

  std::vector<int> degrees() const;
};

struct Plan {
  Path path;
  Stratum stratum;
  Trace trace;
};

/// Redistribution steps are capped at 4 (n + 2n); hitting the cap raises
/// IterationCapExceeded.
inline int iteration_cap(std::size_t n) { return static_cast<int>(4 * (n + 2 * n)); }

Plan plan(const Config& x, const Config& y, const Tolerances& tol = {});

/// Stratum of the pair without building a path.
Stratum classify(const Config& x, const Config& y, const Tolerances& tol = {});

/// Checks of the termination argument on a recorded trace.
struct TraceAudit {
  bool degree_monotone = true;
  bool conserved = true;         // sum of delta is zero at every step
  bool sign_persistence = true;  // arrivals come from a positive predecessor; non-negative stays so
  bool within_bound = true;      // iterations <= N + k_N
  int stable_from = 0;           // N: first step after which the degree no longer changes

  bool ok() const { return degree_monotone && conserved && sign_persistence && within_bound; }
};

TraceAudit audit_trace(const Trace& trace);

}  // namespace confplan::annulus
