#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "confplan/braid.hpp"
#include "confplan/sampling.hpp"

using namespace confplan;
using braid::BraidWord;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

BraidWord random_word(int n, int len, Rng& rng) {
  std::vector<int> w;
  for (int i = 0; i < len; ++i) {
    const int g = rng.integer(1, n - 1);
    w.push_back(rng.chance(0.5) ? g : -g);
  }
  return BraidWord(n, std::move(w));
}

BraidWord random_pure(int n, Rng& rng) {
  BraidWord b(n, {});
  const int pieces = rng.integer(0, 4);
  for (int p = 0; p < pieces; ++p) {
    const int i = rng.integer(1, n - 1), j = rng.integer(i + 1, n);
    auto a = braid::pure_generator(n, i, j);
    if (rng.chance(0.5)) a = a.inverse();
    b = b * braid::conjugate(a, random_word(n, rng.integer(0, 3), rng));
  }
  return b;
}

// Plays the word as a motion of points on the real axis: letter +i turns the
// points at positions i, i+1 by half a turn counterclockwise about their
// midpoint. The winding number of strands a, b is the total change of
// arg(z_b - z_a) over 2 pi, accumulated in small steps.
double geometric_winding(const BraidWord& w, int a, int b) {
  const int n = w.strands();
  std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
  std::vector<int> at(static_cast<std::size_t>(n));  // strand at each position
  for (int i = 0; i < n; ++i) {
    z[static_cast<std::size_t>(i)] = static_cast<double>(i);
    at[static_cast<std::size_t>(i)] = i;
  }
  double total = 0.0;
  auto diff = [&] { return z[static_cast<std::size_t>(b)] - z[static_cast<std::size_t>(a)]; };
  for (int l : w.letters()) {
    const auto p = static_cast<std::size_t>(std::abs(l) - 1);
    const int s = at[p], t = at[p + 1];
    const auto zs = z[static_cast<std::size_t>(s)], zt = z[static_cast<std::size_t>(t)];
    const auto mid = 0.5 * (zs + zt);
    const int steps = 16;
    auto prev = diff();
    for (int k = 1; k <= steps; ++k) {
      const auto rot = std::polar(1.0, (l > 0 ? 1 : -1) * std::numbers::pi * k / steps);
      z[static_cast<std::size_t>(s)] = mid + (zs - mid) * rot;
      z[static_cast<std::size_t>(t)] = mid + (zt - mid) * rot;
      const auto cur = diff();
      total += std::arg(cur / prev);
      prev = cur;
    }
    // Snap back onto the integer grid to avoid drift.
    z[static_cast<std::size_t>(s)] = static_cast<double>(p + 1);
    z[static_cast<std::size_t>(t)] = static_cast<double>(p);
    std::swap(at[p], at[p + 1]);
  }
  return total / (2 * std::numbers::pi);
}

}  // namespace

TEST_CASE("parse and print") {
  const auto w = BraidWord::parse(4, "s1 s2^-1 s3^2");
  CHECK(std::vector<int>(w.letters().begin(), w.letters().end()) == std::vector<int>{1, -2, 3, 3});
  CHECK(w.to_string() == "s1 s2^-1 s3 s3");
  CHECK(BraidWord::parse(3, "s1,s2").length() == 2);
  CHECK(BraidWord::parse(3, "").length() == 0);
  CHECK(BraidWord::parse(3, "s2^0").length() == 0);
  CHECK(code_of([] { BraidWord::parse(3, "s3"); }) != ErrorCode::InvalidArgument);
  CHECK(code_of([] { BraidWord::parse(3, "x1"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { BraidWord::parse(3, "s1^"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { BraidWord(3, {0}); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { BraidWord(3, {-3}); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("word operations") {
  const BraidWord w(3, {1, -2});
  CHECK(w.inverse() == BraidWord(3, {2, -1}));
  CHECK(w.power(2) == BraidWord(3, {1, -2, 1, -2}));
  CHECK(w.power(-1) == w.inverse());
  CHECK(w.power(0).length() == 0);
  CHECK(code_of([&] { w * BraidWord(4, {}); }) == ErrorCode::SizeMismatch);
}

TEST_CASE("permutations and purity") {
  CHECK(braid::permutation_of(BraidWord(3, {1})) == braid::Permutation{1, 0, 2});
  CHECK(braid::permutation_of(BraidWord(3, {1, 2})) == braid::Permutation{2, 0, 1});
  CHECK(braid::is_pure(BraidWord(2, {1, 1})));
  CHECK_FALSE(braid::is_pure(BraidWord(2, {1})));
  CHECK_FALSE(braid::is_pure(BraidWord(3, {1, 2})));
  // Half twist followed by its inverse written with the other braid relation.
  CHECK(braid::is_pure(BraidWord(3, {1, 2, 1, -2, -1, -2})));
  CHECK(braid::is_pure(BraidWord(3, {1, 2, 1, -1, -2, -1})));
}

TEST_CASE("linking numbers") {
  const BraidWord s1sq(2, {1, 1});
  CHECK(braid::crossing_counts(s1sq).at(0, 1) == 2);
  CHECK(braid::linking_matrix(s1sq).at(0, 1) == 1);
  CHECK(braid::linking_matrix(s1sq.inverse()).at(0, 1) == -1);
  CHECK(braid::linking_matrix(BraidWord(3, {})).is_zero());
  CHECK(code_of([] { braid::linking_matrix(BraidWord(2, {1})); }) == ErrorCode::NotPure);
  CHECK(braid::linking_matrix(BraidWord(3, {1, 1})).to_string() == "(1,2)=1 (1,3)=0 (2,3)=0");
}

TEST_CASE("linking numbers equal geometric winding numbers") {
  Rng rng(41);
  for (int i = 0; i < 300; ++i) {
    const int n = rng.integer(2, 5);
    const auto b = random_pure(n, rng);
    const auto m = braid::linking_matrix(b);
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) CHECK(m.at(p, q) == doctest::Approx(geometric_winding(b, p, q)).epsilon(1e-9));
  }
}

TEST_CASE("abelianization is a homomorphism") {
  Rng rng(42);
  for (int i = 0; i < 500; ++i) {
    const int n = rng.integer(2, 5);
    const auto a = random_pure(n, rng), b = random_pure(n, rng);
    CHECK(braid::linking_matrix(a * b) == braid::linking_matrix(a) + braid::linking_matrix(b));
    CHECK(braid::linking_matrix(a.inverse()) == -braid::linking_matrix(a));
  }
}

TEST_CASE("commutator subgroup") {
  const BraidWord a(3, {1, 1}), b(3, {2, 2});
  CHECK(braid::in_commutator_subgroup(a * b * a.inverse() * b.inverse()));
  CHECK_FALSE(braid::in_commutator_subgroup(a));
  CHECK(braid::in_commutator_subgroup(BraidWord(3, {})));
}

TEST_CASE("conjugation") {
  const BraidWord b(3, {1, 1}), g(3, {2, 1, -2});
  CHECK(braid::conjugate(b, BraidWord(3, {})) == b);
  CHECK(braid::linking_matrix(braid::conjugate(BraidWord(3, {}), g)).is_zero());
  CHECK(braid::conjugate(b, g).length() == 2 * g.length() + b.length());
  CHECK(code_of([&] { braid::conjugate(b, BraidWord(4, {})); }) == ErrorCode::SizeMismatch);

  const auto img = braid::conjugation_image(b, BraidWord(3, {2}));
  CHECK(img.agree());
  CHECK(img.direct.at(0, 2) == 1);
  CHECK(img.direct.at(0, 1) == 0);
  CHECK(braid::conjugation_image(b, BraidWord(3, {})).relabeled == braid::linking_matrix(b));
}

TEST_CASE("conjugation permutes linking numbers") {
  Rng rng(43);
  for (int i = 0; i < 2000; ++i) {
    const int n = rng.integer(2, 5);
    const auto b = random_pure(n, rng);
    const auto g = random_word(n, rng.integer(0, 20), rng);
    CHECK(braid::conjugation_image(b, g).agree());
  }
}

TEST_CASE("concentric generators") {
  CHECK(braid::concentric_generator(2, 1) == BraidWord(2, {1, 1}));
  const auto m = braid::linking_matrix(braid::concentric_generator(3, 1));
  CHECK(m.at(0, 1) == 1);
  CHECK(m.at(0, 2) == 1);
  CHECK(m.at(1, 2) == 0);
  for (int n = 2; n <= 8; ++n)
    for (int l = 1; l < n; ++l) {
      const auto lm = braid::linking_matrix(braid::concentric_generator(n, l));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) CHECK(lm.at(i, j) == (i == l - 1 ? 1 : 0));
    }
  CHECK(code_of([] { braid::concentric_generator(3, 3); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { braid::concentric_generator(3, 0); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("rank") {
  for (int n = 2; n <= 8; ++n) {
    std::vector<BraidWord> gens;
    for (int l = 1; l < n; ++l) gens.push_back(braid::concentric_generator(n, l));
    CHECK(braid::abelianization_rank(gens) == n - 1);
  }
  const std::vector<BraidWord> multiples{BraidWord(2, {1, 1}), BraidWord(2, {1, 1, 1, 1})};
  CHECK(braid::abelianization_rank(multiples) == 1);
  CHECK(braid::abelianization_rank(std::vector<BraidWord>{}) == 0);
  std::vector<BraidWord> all;
  for (int i = 1; i <= 4; ++i)
    for (int j = i + 1; j <= 4; ++j) all.push_back(braid::pure_generator(4, i, j));
  CHECK(braid::abelianization_rank(all) == 6);
  CHECK(code_of([] { braid::abelianization_rank(std::vector<BraidWord>{BraidWord(2, {1})}); }) == ErrorCode::NotPure);
}

TEST_CASE("hub property") {
  CHECK(braid::hub_property(braid::concentric_generator(4, 1), 3));
  CHECK_FALSE(braid::hub_property(BraidWord(3, {1, 1}), 2));
  const BraidWord a(3, {1, 1}), b(3, {2, 2});
  CHECK_FALSE(braid::hub_property(a * b * a.inverse() * b.inverse(), 1));
  CHECK(code_of([] { braid::hub_property(BraidWord(3, {1, 1}), 3); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { braid::hub_property(BraidWord(3, {1}), 1); }) == ErrorCode::NotPure);

  Rng rng(44);
  for (int i = 0; i < 1000; ++i) {
    const int n = rng.integer(2, 5);
    const auto b = random_pure(n, rng);
    const auto g = random_word(n, rng.integer(0, 12), rng);
    const int k = rng.integer(1, n - 1);
    CHECK(braid::hub_property(b, k) == braid::hub_property(braid::conjugate(b, g), k));
  }
}

TEST_CASE("pure and cluster generators") {
  const auto a = braid::linking_matrix(braid::pure_generator(4, 2, 4));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) CHECK(a.at(i, j) == (i == 1 && j == 3 ? 1 : 0));

  const auto c = braid::linking_matrix(braid::cluster_orbit_generator(6, 3, 5));
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) CHECK(c.at(i, j) == (j == 4 && i < 3 ? 1 : 0));

  CHECK(braid::cluster_sizes(7, 3) == std::vector<int>{3, 3, 1});
  CHECK(braid::cluster_sizes(6, 3) == std::vector<int>{3, 3});
  CHECK(braid::cluster_sizes(3, 3) == std::vector<int>{3});
  CHECK(braid::cluster_sizes(5, 1) == std::vector<int>{1, 1, 1, 1, 1});
}

TEST_CASE("cabling and embedding") {
  const std::vector<int> widths{2, 1};
  const auto w = braid::cable(BraidWord(2, {1, 1}), widths);
  CHECK(w.strands() == 3);
  CHECK(braid::is_pure(w));
  const auto m = braid::linking_matrix(w);
  CHECK(m.at(0, 1) == 0);
  CHECK(m.at(0, 2) == 1);
  CHECK(m.at(1, 2) == 1);

  const auto e = braid::embed(BraidWord(2, {1, -1, 1}), 5, 2);
  CHECK(e == BraidWord(5, {3, -3, 3}));
  CHECK(code_of([] { braid::embed(BraidWord(3, {}), 4, 2); }) == ErrorCode::IndexOutOfRange);

  // A commutator of blocks does not link strands of different blocks.
  const BraidWord u(3, {1, 1}), v(3, {2, 2});
  const std::vector<int> sizes{2, 2, 1};
  const auto cw = braid::cable(u * v * u.inverse() * v.inverse(), sizes);
  CHECK(braid::linking_matrix(cw).is_zero());
}
