#include <doctest.h>

#include <algorithm>
#include <map>

#include "confplan/annulus_planner.hpp"
#include "confplan/probes.hpp"
#include "confplan/sampling.hpp"

using namespace confplan;
using annulus::Config;

namespace {

Config cfg(std::vector<AnnulusPoint> pts) { return Config::canonicalize(std::move(pts)); }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;  // sentinel: no error raised
}

// Lexicographically least rotation, by listing all of them.
std::vector<int> least_rotation(const std::vector<int>& d) {
  std::vector<int> best = d;
  for (std::size_t r = 1; r < d.size(); ++r) {
    std::vector<int> rot(d.begin() + static_cast<std::ptrdiff_t>(r), d.end());
    rot.insert(rot.end(), d.begin(), d.begin() + static_cast<std::ptrdiff_t>(r));
    best = std::min(best, rot);
  }
  return best;
}

// Count-level model of the redistribution rule: every fiber with surplus
// s > 0 hands s points to the next fiber of the current decomposition, and
// fibers left without x- and y-points drop out. Returns the delta vector
// after each step.
std::vector<std::vector<int>> count_model(std::vector<int> nx, std::vector<int> ny) {
  auto delta = [&] {
    std::vector<int> d;
    for (std::size_t i = 0; i < nx.size(); ++i) d.push_back(nx[i] - ny[i]);
    return d;
  };
  std::vector<std::vector<int>> out{delta()};
  for (int guard = 0; guard < 1000; ++guard) {
    const std::size_t k = nx.size();
    std::vector<int> surplus(k);
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
      surplus[i] = std::max(0, nx[i] - ny[i]);
      any = any || surplus[i] > 0;
    }
    if (!any) break;
    for (std::size_t i = 0; i < k; ++i) {
      nx[i] -= surplus[i];
      nx[(i + 1) % k] += surplus[i];
    }
    std::vector<int> kx, ky;
    for (std::size_t i = 0; i < k; ++i)
      if (nx[i] > 0 || ny[i] > 0) {
        kx.push_back(nx[i]);
        ky.push_back(ny[i]);
      }
    nx = std::move(kx);
    ny = std::move(ky);
    out.push_back(delta());
  }
  return out;
}

}  // namespace

TEST_CASE("angular support forgets multiplicities") {
  CHECK(annulus::angular_support(cfg({{0.0, 0}, {0.0, 5}, {0.5, 1}})) == std::vector<double>{0.0, 0.5});
  CHECK(annulus::angular_support(cfg({{0.1, 0}})) == std::vector<double>{0.1});
  CHECK(annulus::angular_support(cfg({{0.0, 0}, {1e-12, 1}})).size() == 1);
  // Merging is circular: 1 - 1e-12 and 0 are the same fiber.
  CHECK(annulus::angular_support(cfg({{1.0 - 1e-12, 0}, {0.0, 1}})).size() == 1);
}

TEST_CASE("long chains of near-equal angles are ambiguous") {
  std::vector<AnnulusPoint> pts;
  for (int i = 0; i < 13; ++i) pts.emplace_back(0.3 + 0.9e-9 * i, i);
  CHECK(code_of([&] { annulus::angular_support(cfg(pts)); }) == ErrorCode::AmbiguousGrouping);
}

TEST_CASE("degree") {
  const auto x = cfg({{0.0, 0}, {0.5, 1}});
  const auto y = cfg({{0.0, 2}, {0.25, 0}});
  CHECK(annulus::degree(x, y) == 3);
  CHECK(annulus::degree(x, x) == 2);
  CHECK(annulus::degree(x, cfg({{0.1, 0}, {0.2, 0}})) == 4);
  CHECK(code_of([&] { annulus::degree(x, cfg({{0.1, 0}})); }) == ErrorCode::SizeMismatch);
}

TEST_CASE("fiber decomposition") {
  const auto fd = annulus::fiber_decomposition(cfg({{0.0, 0}, {0.5, 1}}), cfg({{0.0, 2}, {0.25, 0}}));
  CHECK(fd.angles == std::vector<double>{0.0, 0.25, 0.5});
  CHECK(fd.nx == std::vector<int>{1, 0, 1});
  CHECK(fd.ny == std::vector<int>{1, 1, 0});
  CHECK(fd.delta == std::vector<int>{0, -1, 1});

  const auto x = cfg({{0.3, 0}, {0.3, 1}, {0.7, 2}});
  CHECK(annulus::fiber_decomposition(x, x).delta == std::vector<int>{0, 0});
  CHECK(annulus::fiber_decomposition(cfg({{0.2, 0}}), cfg({{0.7, 3}})).delta == std::vector<int>{1, -1});
}

TEST_CASE("psi class is the least rotation") {
  auto psi = [](std::vector<int> d) {
    annulus::FiberDecomposition fd;
    fd.delta = d;
    fd.angles.resize(d.size());
    return annulus::psi_class(fd).psi_class;
  };
  CHECK(psi({0, -1, 1}) == std::vector<int>{-1, 1, 0});
  CHECK(psi({0, 0}) == std::vector<int>{0, 0});
  CHECK(psi({1, -1}) == std::vector<int>{-1, 1});

  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto [x, y] = random_annulus_pair(1 + i % 6, rng);
    const auto fd = annulus::fiber_decomposition(x, y);
    const auto s = annulus::psi_class(fd);
    CHECK(s.psi_class == least_rotation(fd.delta));
    CHECK(s.degree == static_cast<int>(fd.k()));
    int sum = 0, mass = 0;
    for (int d : s.psi_class) {
      sum += d;
      mass += std::abs(d);
    }
    CHECK(sum == 0);
    CHECK(mass <= 2 * static_cast<int>(x.size()));
  }
}

TEST_CASE("stratum label text") {
  annulus::Stratum s{3, {-1, 1, 0}};
  CHECK(s.to_string() == "L3 [-1,1,0]");
}

TEST_CASE("fiberwise interpolation matches points by height") {
  const auto x = cfg({{0.0, 0}, {0.0, 1}});
  const auto y = cfg({{0.0, -1}, {0.0, 3}});
  const auto p = annulus::interpolate_fiberwise(x, y, annulus::fiber_decomposition(x, y));
  CHECK(p.segments().size() == 1);
  const auto mid_cfg = p.evaluate(0.5);
  const auto mid = mid_cfg.points();
  CHECK(mid[0].height == doctest::Approx(-0.5));
  CHECK(mid[1].height == doctest::Approx(2.0));
  CHECK(p.evaluate(1.0) == y);

  const auto fd = annulus::fiber_decomposition(cfg({{0.2, 0}}), cfg({{0.7, 3}}));
  CHECK(code_of([&] { annulus::interpolate_fiberwise(cfg({{0.2, 0}}), cfg({{0.7, 3}}), fd); }) ==
        ErrorCode::PreconditionViolated);
}

TEST_CASE("redistribution step") {
  {
    const auto x = cfg({{0.0, 0}, {0.0, 1}});
    const auto y = cfg({{0.0, 5}, {0.5, 7}});
    const auto step = annulus::redistribution_step(x, annulus::fiber_decomposition(x, y));
    CHECK(step.next == cfg({{0.0, 0}, {0.5, 1}}));
    CHECK(annulus::fiber_decomposition(step.next, y).delta == std::vector<int>{0, 0});
    CHECK(step.segment.segments().front().move.kind == AnnulusMove::Kind::ArcSlide);
  }
  {
    const auto x = cfg({{0.2, 9}});
    const auto step = annulus::redistribution_step(x, annulus::fiber_decomposition(x, cfg({{0.7, 0}})));
    CHECK(step.next == cfg({{0.7, 1}}));
  }
  {
    // Movers keep their gap and stack above the x-points already there.
    const auto x = cfg({{0.0, 4}, {0.0, 7}, {0.5, 2}});
    const auto y = cfg({{0.5, 0}, {0.5, 1}, {0.5, 3}});
    const auto step = annulus::redistribution_step(x, annulus::fiber_decomposition(x, y));
    CHECK(step.next == cfg({{0.5, 2}, {0.5, 3}, {0.5, 6}}));
  }
  {
    const auto x = cfg({{0.0, 4}, {0.0, 7}});
    const auto y = cfg({{0.5, 0}, {0.5, 1}});
    const auto step = annulus::redistribution_step(x, annulus::fiber_decomposition(x, y));
    CHECK(step.next == cfg({{0.5, 1}, {0.5, 4}}));
  }
  const auto x = cfg({{0.0, 0}, {0.5, 1}});
  CHECK(code_of([&] { annulus::redistribution_step(x, annulus::fiber_decomposition(x, x)); }) ==
        ErrorCode::PreconditionViolated);
}

TEST_CASE("plan: small cases") {
  const auto x = cfg({{0.0, 0}, {0.0, 1}});
  const auto same = annulus::plan(x, x);
  CHECK(same.trace.iterations == 0);
  CHECK(same.path.evaluate(0.5) == x);

  const auto y = cfg({{0.0, 5}, {0.5, 7}});
  const auto p = annulus::plan(x, y);
  CHECK(p.trace.iterations == 1);
  CHECK(p.path.segments().size() == 2);
  CHECK(p.path.start() == x);
  CHECK(p.path.goal() == y);
  CHECK(p.stratum == annulus::classify(x, y));
  CHECK(p.stratum.to_string() == "L2 [-1,1]");
}

TEST_CASE("plan: trace follows the count model") {
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 6);
    const auto [x, y] = random_annulus_pair(n, rng);
    const auto p = annulus::plan(x, y);
    const auto& first = p.trace.steps.front();
    const auto model = count_model(first.nx, first.ny);
    REQUIRE(p.trace.steps.size() == model.size());
    for (std::size_t j = 0; j < model.size(); ++j) CHECK(p.trace.steps[j].delta == model[j]);
    CHECK(p.trace.iterations + 1 == static_cast<int>(model.size()));
    CHECK(p.trace.iterations <= annulus::iteration_cap(n));
  }
}

TEST_CASE("plan: validity, audit and equal time weights") {
  Rng rng(23);
  for (int i = 0; i < 1500; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 6);
    const auto [x, y] = i % 3 ? random_annulus_pair(n, rng)
                              : std::pair{random_annulus_configuration(n, rng), random_annulus_configuration(n, rng)};
    const auto p = annulus::plan(x, y);
    CHECK(p.path.start() == x);
    CHECK(p.path.goal() == y);
    const auto v = validate_path(p.path, x, y, Tolerances{});
    CHECK(v.ok());
    const auto audit = annulus::audit_trace(p.trace);
    CHECK(audit.ok());
    const auto deg = p.trace.degrees();
    CHECK(std::is_sorted(deg.rbegin(), deg.rend()));
    const double w = p.path.segments().front().weight;
    for (const auto& s : p.path.segments()) CHECK(s.weight == doctest::Approx(w));
  }
}

TEST_CASE("audit flags a broken trace") {
  const auto x = cfg({{0.0, 0}, {0.0, 1}});
  const auto y = cfg({{0.5, 5}, {0.5, 7}});
  auto trace = annulus::plan(x, y).trace;
  REQUIRE(trace.steps.size() >= 2);
  trace.steps.back().delta[0] += 1;  // breaks conservation
  CHECK_FALSE(annulus::audit_trace(trace).conserved);
}

TEST_CASE("inputs must be separated") {
  const auto x = cfg({{0.0, 0}, {0.0, 1e-8}});
  const auto y = cfg({{0.5, 0}, {0.5, 1}});
  CHECK(code_of([&] { annulus::plan(x, y); }) == ErrorCode::InsufficientSeparation);
}

TEST_CASE("continuity probe") {
  Rng rng(31);
  const auto [x, y] = random_annulus_pair(4, rng);
  const auto zero = probes::continuity_probe(x, y, 0.0, 5, rng);
  CHECK(zero.max_deviation == 0.0);

  std::size_t accepted = 0, within = 0;
  for (int i = 0; i < 200; ++i) {
    const auto [a, b] = random_annulus_pair(1 + i % 6, rng);
    const auto rep = probes::continuity_probe(a, b, 1e-6, 2, rng);
    accepted += rep.accepted;
    within += rep.within(100.0);
  }
  CHECK(accepted > 0);
  CHECK(static_cast<double>(within) >= 0.99 * static_cast<double>(accepted));
}
