#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace toricflip;
using prism::cone;

namespace {

IVector iv(std::vector<long> v) { return IVector(v.begin(), v.end()); }
QVector qv(std::vector<long> v) { return QVector(v.begin(), v.end()); }

}  // namespace

TEST(Cone, PositiveOrthant) {
  Cone c = from_halfspaces(3, {iv({1, 0, 0}), iv({0, 1, 0}), iv({0, 0, 1})});
  EXPECT_EQ(c.rays(), (std::vector<IVector>{iv({0, 0, 1}), iv({0, 1, 0}), iv({1, 0, 0})}));
  EXPECT_TRUE(c.is_pointed());
  EXPECT_TRUE(c.is_full_dimensional());
  EXPECT_EQ(c.contains(qv({1, 1, 1})), Location::interior);
  EXPECT_EQ(c.contains(qv({1, 0, 1})), Location::boundary);
  EXPECT_EQ(c.contains(qv({-1, 1, 1})), Location::outside);
}

TEST(Cone, HalfPlaneHasLineality) {
  Cone c = from_generators(2, {iv({1, 0}), iv({-1, 0}), iv({0, 1})});
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_FALSE(c.is_pointed());
  EXPECT_EQ(c.lineality().size(), 1u);
  EXPECT_EQ(c.facets(), (std::vector<IVector>{iv({0, 1})}));
}

TEST(Cone, RedundantGeneratorDropped) {
  Cone c = from_generators(2, {iv({1, 0}), iv({1, 1}), iv({0, 1})});
  EXPECT_EQ(c.rays(), (std::vector<IVector>{iv({0, 1}), iv({1, 0})}));
}

TEST(Cone, ZeroConeAndWholeSpace) {
  Cone z = Cone::zero(3);
  EXPECT_TRUE(z.is_zero());
  EXPECT_TRUE(z.rays().empty());
  EXPECT_TRUE(z.halfspaces().empty());
  // the relative interior of {0} is {0}
  EXPECT_EQ(z.contains(qv({0, 0, 0})), Location::interior);
  EXPECT_EQ(z.contains(qv({0, 0, 1})), Location::outside);
  Cone all = from_halfspaces(2, {});
  EXPECT_EQ(all.dim(), 2u);
  EXPECT_EQ(all.lineality().size(), 2u);
  EXPECT_EQ(all.contains(qv({-3, 5})), Location::interior);
}

TEST(Cone, NonFullDimensionalRelativeInterior) {
  Cone c = from_generators(3, {iv({1, 0, 0}), iv({0, 1, 0})});
  EXPECT_EQ(c.dim(), 2u);
  EXPECT_EQ(c.equations().size(), 1u);
  EXPECT_EQ(c.contains(qv({1, 1, 0})), Location::interior);
  EXPECT_EQ(c.contains(qv({1, 0, 0})), Location::boundary);
  EXPECT_EQ(c.contains(qv({1, 1, 1})), Location::outside);
}

TEST(Cone, DimensionMismatchThrows) {
  EXPECT_THROW(from_generators(3, {iv({1, 0})}), Error);
  Cone a = from_generators(2, {iv({1, 0})});
  Cone b = from_generators(3, {iv({1, 0, 0})});
  EXPECT_THROW(intersect(a, b), Error);
  EXPECT_THROW(a.contains(qv({1, 0, 0})), Error);
}

TEST(Cone, IntersectionAndFaces) {
  Cone a = cone({{1, 0}, {1, 2}});
  Cone b = cone({{1, 1}, {0, 1}});
  EXPECT_EQ(intersect(a, b), cone({{1, 1}, {1, 2}}));
  Cone quad = cone({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_TRUE(is_face(cone({{1, 0, 0}}), quad));
  EXPECT_TRUE(is_face(quad, quad));
  EXPECT_TRUE(is_face(Cone::zero(3), quad));
  EXPECT_FALSE(is_face(cone({{1, 1, 0}}), quad));
  EXPECT_EQ(minimal_face_containing(cone({{1, 1, 0}}), quad), cone({{1, 0, 0}, {0, 1, 0}}));
}

TEST(Cone, RelintPointIsInterior) {
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::size_t n;
    auto gens = testutil::random_generators(rng, n);
    Cone c = from_generators(n, gens);
    if (c.is_zero()) {
      EXPECT_THROW(relint_point(c), Error);
      continue;
    }
    ASSERT_EQ(c.contains(relint_point(c)), Location::interior);
  }
}

TEST(Cone, CanonicalFormIgnoresInputScaleAndOrder) {
  Cone a = from_generators(3, {iv({2, 0, 0}), iv({0, 3, 0}), iv({1, 1, 0}), iv({0, 0, 5})});
  Cone b = from_generators(3, {iv({0, 0, 1}), iv({0, 1, 0}), iv({1, 0, 0})});
  EXPECT_EQ(a, b);
  EXPECT_EQ(io::dump(io::to_json(a)), io::dump(io::to_json(b)));
}

TEST(Cone, DoubleDescriptionMatchesBruteForceOracle) {
  std::mt19937 rng(2024);
  for (int t = 0; t < 300; ++t) {
    std::size_t n;
    auto gens = testutil::random_generators(rng, n);
    std::string why;
    ASSERT_TRUE(testutil::dd_round_trip_ok(rng, n, gens, &why)) << why << " (trial " << t << ")";
  }
}

TEST(Cone, HalfspaceInputRoundTrip) {
  std::mt19937 rng(99);
  for (int t = 0; t < 150; ++t) {
    std::size_t n = testutil::uniform(rng, 1, 4);
    std::vector<IVector> hs;
    for (long k = testutil::uniform(rng, 0, 7); k > 0; --k) hs.push_back(testutil::random_ivector(rng, n, -4, 4));
    Cone c = from_halfspaces(n, hs);
    for (const auto& g : c.generators())
      for (const auto& h : hs) ASSERT_GE(dot(h, g), 0);
    ASSERT_EQ(from_generators(n, c.generators()), c);
    // random points: membership by the input inequalities agrees with the cone
    for (int s = 0; s < 10; ++s) {
      QVector x = testutil::random_qvector(rng, n, 5);
      bool in = std::all_of(hs.begin(), hs.end(), [&](const IVector& h) { return dot(h, x) >= 0; });
      ASSERT_EQ(in, c.contains(x) != Location::outside);
    }
  }
}

TEST(Cone, CanonicalOrderIsTotal) {
  Cone a = cone({{1, 0}}), b = cone({{0, 1}});
  EXPECT_TRUE((a < b) != (b < a));
  EXPECT_FALSE(a < a);
}
