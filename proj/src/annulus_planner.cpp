#include "confplan/annulus_planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace confplan::annulus {

namespace {

struct Grouping {
  std::vector<double> angles;           // cluster representatives, ascending
  std::vector<std::size_t> member_of;   // cluster index of each input angle
};

// Clusters angles on R/Z whose consecutive circular gaps are below tau. The
// representative of a cluster is its first member in increasing-theta order.
Grouping group_angles(std::span<const double> thetas, double tau) {
  Grouping g;
  const std::size_t m = thetas.size();
  g.member_of.assign(m, 0);
  if (m == 0) return g;

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return thetas[a] < thetas[b]; });

  std::vector<std::vector<std::size_t>> clusters{{order[0]}};
  for (std::size_t r = 1; r < m; ++r) {
    if (thetas[order[r]] - thetas[order[r - 1]] < tau)
      clusters.back().push_back(order[r]);
    else
      clusters.push_back({order[r]});
  }
  // Close the circle: the last cluster may continue into the first one.
  if (clusters.size() > 1 && thetas[order[0]] + 1.0 - thetas[order[m - 1]] < tau) {
    auto& last = clusters.back();
    last.insert(last.end(), clusters.front().begin(), clusters.front().end());
    clusters.erase(clusters.begin());
  }

  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const auto& members = clusters[c];
    const double first = thetas[members.front()];
    const double span = wrap_turns(thetas[members.back()] - first);
    if (span > 10.0 * tau)
      throw Error(ErrorCode::AmbiguousGrouping, "chain of near-coincident angles exceeds 10 tau_angle");
    g.angles.push_back(first);
    for (auto idx : members) g.member_of[idx] = c;
  }
  // A wrapped cluster was appended last, so representatives are ascending.
  return g;
}

struct Decomposition {
  FiberDecomposition fd;
  std::vector<std::size_t> x_fiber;
  std::vector<std::size_t> y_fiber;
};

Decomposition decompose(std::span<const AnnulusPoint> xs, std::span<const AnnulusPoint> ys, const Tolerances& tol) {
  if (xs.size() != ys.size()) throw Error(ErrorCode::SizeMismatch, "configurations have different sizes");
  std::vector<double> thetas;
  thetas.reserve(xs.size() + ys.size());
  for (const auto& p : xs) thetas.push_back(p.theta);
  for (const auto& p : ys) thetas.push_back(p.theta);
  auto g = group_angles(thetas, tol.tau_angle);

  Decomposition d;
  const std::size_t k = g.angles.size();
  d.fd.angles = g.angles;
  d.fd.nx.assign(k, 0);
  d.fd.ny.assign(k, 0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    d.x_fiber.push_back(g.member_of[i]);
    ++d.fd.nx[g.member_of[i]];
  }
  for (std::size_t i = 0; i < ys.size(); ++i) {
    d.y_fiber.push_back(g.member_of[xs.size() + i]);
    ++d.fd.ny[g.member_of[xs.size() + i]];
  }
  d.fd.delta.resize(k);
  for (std::size_t i = 0; i < k; ++i) d.fd.delta[i] = d.fd.nx[i] - d.fd.ny[i];
  return d;
}

// Track indices of each fiber, lowest point first.
std::vector<std::vector<std::size_t>> fibers_by_height(std::span<const AnnulusPoint> pts,
                                                       const std::vector<std::size_t>& fiber_of, std::size_t k) {
  std::vector<std::vector<std::size_t>> fibers(k);
  for (std::size_t i = 0; i < pts.size(); ++i) fibers[fiber_of[i]].push_back(i);
  for (auto& f : fibers)
    std::sort(f.begin(), f.end(), [&](std::size_t a, std::size_t b) { return pts[a].height < pts[b].height; });
  return fibers;
}

AnnulusMove redistribute(std::span<const AnnulusPoint> xs, const Decomposition& d) {
  const auto& fd = d.fd;
  const std::size_t k = fd.k();
  if (fd.balanced()) throw Error(ErrorCode::PreconditionViolated, "every fiber is already balanced");

  const auto fibers = fibers_by_height(xs, d.x_fiber, k);
  std::vector<AnnulusPoint> to(xs.begin(), xs.end());
  std::vector<double> dtheta(xs.size(), 0.0);

  for (std::size_t i = 0; i < k; ++i) {
    if (fd.delta[i] <= 0) continue;
    const std::size_t next = (i + 1) % k;
    double top = 0.0;  // max{0, top height of x over the next fiber}
    for (auto idx : fibers[next]) top = std::max(top, xs[idx].height);
    const double anchor = 1.0 + top;

    const auto& here = fibers[i];
    const auto first_mover = static_cast<std::size_t>(fd.ny[i]);
    const double base = xs[here[first_mover]].height;
    for (std::size_t l = first_mover; l < here.size(); ++l) {
      const auto idx = here[l];
      to[idx] = AnnulusPoint(fd.angles[next], anchor + (xs[idx].height - base));
      dtheta[idx] = wrap_turns(fd.angles[next] - xs[idx].theta);
    }
  }
  return AnnulusMove::arc_slide({xs.begin(), xs.end()}, std::move(to), std::move(dtheta));
}

AnnulusMove interpolate(std::span<const AnnulusPoint> xs, std::span<const AnnulusPoint> ys, const Decomposition& d) {
  if (!d.fd.balanced())
    throw Error(ErrorCode::PreconditionViolated, "fiberwise interpolation needs every delta_i = 0");
  const std::size_t k = d.fd.k();
  const auto xf = fibers_by_height(xs, d.x_fiber, k);
  const auto yf = fibers_by_height(ys, d.y_fiber, k);
  std::vector<AnnulusPoint> to(xs.size());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t r = 0; r < xf[i].size(); ++r) to[xf[i][r]] = ys[yf[i][r]];
  return AnnulusMove::fiberwise({xs.begin(), xs.end()}, std::move(to));
}

void require_separated(const Config& c) {
  if (min_separation(c) < kMinInputSeparation)
    throw Error(ErrorCode::InsufficientSeparation, "input points closer than 1e-7");
}

}  // namespace

bool FiberDecomposition::balanced() const {
  return std::all_of(delta.begin(), delta.end(), [](int d) { return d == 0; });
}

std::string Stratum::to_string() const {
  std::ostringstream os;
  os << "L" << degree << " [";
  for (std::size_t i = 0; i < psi_class.size(); ++i) os << (i ? "," : "") << psi_class[i];
  os << "]";
  return os.str();
}

std::vector<double> angular_support(const Config& c, const Tolerances& tol) {
  std::vector<double> thetas;
  for (const auto& p : c.points()) thetas.push_back(p.theta);
  return group_angles(thetas, tol.tau_angle).angles;
}

int degree(const Config& x, const Config& y, const Tolerances& tol) {
  return static_cast<int>(fiber_decomposition(x, y, tol).k());
}

FiberDecomposition fiber_decomposition(const Config& x, const Config& y, const Tolerances& tol) {
  return decompose(x.points(), y.points(), tol).fd;
}

Stratum psi_class(const FiberDecomposition& fd) {
  Stratum s;
  s.degree = static_cast<int>(fd.k());
  const auto& d = fd.delta;
  s.psi_class = d;
  for (std::size_t r = 1; r < d.size(); ++r) {
    std::vector<int> rot(d.begin() + static_cast<std::ptrdiff_t>(r), d.end());
    rot.insert(rot.end(), d.begin(), d.begin() + static_cast<std::ptrdiff_t>(r));
    if (rot < s.psi_class) s.psi_class = std::move(rot);
  }
  return s;
}

Path interpolate_fiberwise(const Config& x, const Config& y, const FiberDecomposition& fd) {
  if (!fd.balanced()) throw Error(ErrorCode::PreconditionViolated, "fiberwise interpolation needs every delta_i = 0");
  Tolerances tol;
  auto d = decompose(x.points(), y.points(), tol);
  if (d.fd.delta != fd.delta) throw Error(ErrorCode::PreconditionViolated, "decomposition does not belong to (x, y)");
  return Path({{interpolate(x.points(), y.points(), d), 1.0, false, {}, "interpolate"}});
}

RedistributionStep redistribution_step(const Config& x, const FiberDecomposition& fd) {
  if (fd.balanced()) throw Error(ErrorCode::PreconditionViolated, "every fiber is already balanced");
  // Regroup x against the given fiber angles; y only enters through ny.
  Decomposition d;
  d.fd = fd;
  for (const auto& p : x.points()) {
    std::size_t best = 0;
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < fd.k(); ++i) {
      double g = std::abs(signed_turn_difference(p.theta, fd.angles[i]));
      if (g < gap) {
        gap = g;
        best = i;
      }
    }
    d.x_fiber.push_back(best);
  }
  std::vector<int> nx(fd.k(), 0);
  for (auto f : d.x_fiber) ++nx[f];
  if (nx != fd.nx) throw Error(ErrorCode::PreconditionViolated, "decomposition does not match x");

  auto move = redistribute(x.points(), d);
  auto next = Config::canonicalize(move.to);
  return {Path({{std::move(move), 1.0, false, {}, "redistribute"}}), std::move(next)};
}

std::vector<int> Trace::degrees() const {
  std::vector<int> out;
  for (const auto& s : steps) out.push_back(static_cast<int>(s.k()));
  return out;
}

Stratum classify(const Config& x, const Config& y, const Tolerances& tol) {
  return psi_class(fiber_decomposition(x, y, tol));
}

Plan plan(const Config& x, const Config& y, const Tolerances& tol) {
  tol.validate();
  if (x.size() != y.size()) throw Error(ErrorCode::SizeMismatch, "configurations have different sizes");
  if (x.size() == 0) throw Error(ErrorCode::InvalidArgument, "empty configuration");
  require_separated(x);
  require_separated(y);

  const int cap = iteration_cap(x.size());
  std::vector<AnnulusPoint> tracks(x.points().begin(), x.points().end());
  std::vector<Path::Segment> segments;
  Trace trace;

  Decomposition d = decompose(tracks, y.points(), tol);
  const Stratum stratum = psi_class(d.fd);
  trace.steps.push_back(d.fd);
  while (!d.fd.balanced()) {
    if (trace.iterations >= cap)
      throw Error(ErrorCode::IterationCapExceeded, "redistribution did not terminate within the cap");
    auto move = redistribute(tracks, d);
    tracks = move.to;
    segments.push_back({std::move(move), 1.0, false, {}, "redistribute " + std::to_string(trace.iterations + 1)});
    ++trace.iterations;
    d = decompose(tracks, y.points(), tol);
    trace.steps.push_back(d.fd);
  }
  segments.push_back({interpolate(tracks, y.points(), d), 1.0, false, {}, "interpolate"});
  return {Path(std::move(segments)), stratum, std::move(trace)};
}

TraceAudit audit_trace(const Trace& trace) {
  TraceAudit a;
  const auto& st = trace.steps;
  if (st.empty()) return a;
  const std::size_t last = st.size() - 1;
  for (std::size_t j = 0; j < st.size(); ++j) {
    if (std::accumulate(st[j].delta.begin(), st[j].delta.end(), 0) != 0) a.conserved = false;
    if (j > 0 && st[j].k() > st[j - 1].k()) a.degree_monotone = false;
  }
  std::size_t n_stable = last;
  while (n_stable > 0 && st[n_stable - 1].k() == st[last].k()) --n_stable;
  a.stable_from = static_cast<int>(n_stable);

  for (std::size_t j = n_stable; j < st.size(); ++j) {
    const std::size_t k = st[j].k();
    if (j > n_stable) {
      for (std::size_t i = 0; i < k; ++i)
        if (st[j].delta[i] > 0 && st[j - 1].delta[(i + k - 1) % k] <= 0) a.sign_persistence = false;
    }
    if (j + 1 < st.size()) {
      for (std::size_t i = 0; i < k; ++i)
        if (st[j].delta[i] >= 0 && st[j + 1].delta[i] < 0) a.sign_persistence = false;
    }
  }
  a.within_bound = trace.iterations <= a.stable_from + static_cast<int>(st[last].k());
  return a;
}

}  // namespace confplan::annulus
