#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace toricflip;

namespace {

IMatrix orthant_rays2() { return IMatrix::from_rows({{1, 0, -1, 0}, {0, 1, 0, -1}}); }
Fan orthants2() { return Fan(orthant_rays2(), {{0, 1}, {1, 2}, {2, 3}, {0, 3}}); }

bool covered(const Fan& f, const QVector& p) {
  for (std::size_t k = 0; k < f.max_cones().size(); ++k)
    if (f.cone(k).contains(p) != Location::outside) return true;
  return false;
}

std::set<std::vector<IndexSet>> cone_sets(const std::vector<Fan>& fans) {
  std::set<std::vector<IndexSet>> s;
  for (const auto& f : fans) s.insert(f.max_cones());
  return s;
}

}  // namespace

TEST(Validate, PrismFanIsValid) {
  auto rep = validate(prism::Sigma());
  EXPECT_TRUE(rep.valid());
  for (std::size_t i = 1; i <= 8; ++i) EXPECT_TRUE(validate(prism::Sigma(i)).valid()) << i;
}

TEST(Validate, RedundantCone) {
  Fan f(orthant_rays2(), {{0, 1}, {0, 1}, {1, 2}, {2, 3}, {0, 3}});
  EXPECT_TRUE(validate(f).has("redundant cone"));
}

TEST(Validate, OverlappingConesIntersectImproperly) {
  Fan f(IMatrix::from_rows({{1, 1, 0}, {0, 1, 1}}), {{0, 1}, {0, 2}});
  auto rep = validate(f);
  EXPECT_TRUE(rep.has("improper intersection"));
  // the intersection is <(1,0),(1,1)>, which is not a face of <(1,0),(0,1)>
  Cone a = f.cone_of({0, 1}), b = f.cone_of({0, 2});
  EXPECT_FALSE(is_face(intersect(a, b), b));
}

TEST(Validate, RayProblems) {
  EXPECT_TRUE(validate(Fan(IMatrix::from_rows({{0, 1}, {0, 0}}), {{1}})).has("zero ray"));
  EXPECT_TRUE(validate(Fan(IMatrix::from_rows({{2}, {0}}), {{0}})).has("non-primitive ray"));
  EXPECT_TRUE(validate(Fan(IMatrix::from_rows({{1, 1}, {0, 0}}), {{0}, {1}})).has("duplicate ray"));
  EXPECT_TRUE(validate(Fan(orthant_rays2(), {{0, 7}})).has("index out of range"));
  EXPECT_TRUE(validate(Fan(orthant_rays2(), {{0, 1}})).has("unused ray"));
}

TEST(Validate, ConeProblems) {
  // a line is not pointed
  EXPECT_TRUE(validate(Fan(IMatrix::from_rows({{1, -1}, {0, 0}}), {{0, 1}})).has("not pointed"));
  // (1,1) lies inside <(1,0),(0,1)> and is listed as a generator
  Fan g(IMatrix::from_rows({{1, 0, 1}, {0, 1, 1}}), {{0, 1, 2}});
  EXPECT_TRUE(validate(g).has("non-extremal generator"));
  EXPECT_THROW(require_valid(g), Error);
}

TEST(Completeness, Examples) {
  EXPECT_TRUE(is_complete(prism::Sigma()));
  for (std::size_t i = 1; i <= 8; ++i) EXPECT_TRUE(is_complete(prism::Sigma(i)));
  EXPECT_TRUE(is_complete(orthants2()));
  EXPECT_FALSE(is_complete(Fan(IMatrix::from_rows({{1, 0}, {0, 1}}), {{0, 1}})));
  // three orthants of the plane
  EXPECT_FALSE(is_complete(Fan(orthant_rays2(), {{0, 1}, {1, 2}, {2, 3}})));
}

TEST(Completeness, AgreesWithRandomPointCoverage) {
  std::mt19937 rng(7);
  std::vector<Fan> fans = {prism::Sigma(), prism::Sigma(3), orthants2(),
                           Fan(orthant_rays2(), {{0, 1}, {1, 2}, {2, 3}})};
  // drop one maximal cone from each subdivision: never complete
  for (std::size_t i = 1; i <= 8; ++i) {
    auto cs = prism::Sigma(i).max_cones();
    cs.erase(cs.begin() + static_cast<long>(i % cs.size()));
    fans.emplace_back(prism::V(), cs);
  }
  for (const auto& f : fans) {
    ASSERT_TRUE(validate(f).valid());
    bool all = true;
    for (int s = 0; s < 1000 && all; ++s) all = covered(f, testutil::random_qvector(rng, f.dim(), 20));
    EXPECT_EQ(all, is_complete(f));
  }
}

TEST(Simplicial, Examples) {
  EXPECT_FALSE(is_simplicial(prism::Sigma()));
  EXPECT_TRUE(is_simplicial(prism::Sigma(1)));
  EXPECT_TRUE(is_simplicial(orthants2()));
}

TEST(Triangulations, PrismQuadrangle) {
  Fan s = prism::Sigma();
  std::size_t k = 0;
  while (s.max_cones()[k] != IndexSet{0, 1, 3, 5}) ++k;
  auto t = triangulations_of_cone(s, k);
  std::set<std::vector<IndexSet>> got(t.begin(), t.end());
  std::set<std::vector<IndexSet>> want = {prism::zero_based({{1, 2, 4}, {1, 2, 6}}),
                                          prism::zero_based({{1, 4, 6}, {2, 4, 6}})};
  EXPECT_EQ(got, want);
}

TEST(Triangulations, SimplicialConeIsItsOwn) {
  auto t = triangulations_of_cone(orthants2(), 0);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], (std::vector<IndexSet>{{0, 1}}));
}

TEST(Triangulations, SquareConeMatchesAreaOracle) {
  IMatrix V = IMatrix::from_rows({{1, -1, -1, 1}, {1, 1, -1, -1}, {1, 1, 1, 1}});
  Fan f(V, {{0, 1, 2, 3}});
  auto t = triangulations_of_cone(f, 0);
  // oracle: at height 1 the cone is a square of area 4; a set of triangles
  // on its corners is a triangulation iff areas add up to 4 and the union
  // covers sample points of the square
  std::mt19937 rng(1);
  std::set<std::vector<IndexSet>> oracle;
  auto triples = k_subsets(4, 3);
  for (unsigned mask = 1; mask < (1u << triples.size()); ++mask) {
    std::vector<IndexSet> pick;
    Int twice_area = 0;
    for (std::size_t i = 0; i < triples.size(); ++i)
      if (mask & (1u << i)) {
        pick.push_back(triples[i]);
        twice_area += abs(determinant(V.select_columns(triples[i])));
      }
    if (twice_area != 8) continue;
    bool cover = true;
    for (int s = 0; s < 200 && cover; ++s) {
      QVector p{testutil::q(testutil::uniform(rng, -99, 99), 100), testutil::q(testutil::uniform(rng, -99, 99), 100), Rat(1)};
      bool hit = false;
      for (const auto& J : pick) hit = hit || f.cone_of(J).contains(p) != Location::outside;
      cover = hit;
    }
    if (cover) oracle.insert(pick);
  }
  EXPECT_EQ(oracle.size(), 2u);
  EXPECT_EQ(std::set<std::vector<IndexSet>>(t.begin(), t.end()), oracle);
}

TEST(Subdivisions, PrismGivesTheEightListedFans) {
  auto subs = simplicial_subdivisions(prism::Sigma());
  ASSERT_EQ(subs.size(), 8u);
  std::set<std::vector<IndexSet>> want;
  for (std::size_t i = 1; i <= 8; ++i) want.insert(prism::Sigma(i).max_cones());
  EXPECT_EQ(cone_sets(subs), want);
  for (const auto& s : subs) {
    EXPECT_TRUE(validate(s).valid());
    EXPECT_TRUE(is_complete(s));
    EXPECT_TRUE(is_simplicial(s));
  }
}

TEST(Subdivisions, ProductOfPerConeCounts) {
  // triangulate two quadrangles as in Sigma_1, leave <2,3,5,6> open
  Fan f(prism::V(), prism::zero_based({{1, 2, 4}, {1, 2, 6}, {1, 3, 4}, {3, 4, 5}, {2, 3, 5, 6}, {2, 4, 5}, {1, 3, 6}}));
  ASSERT_TRUE(validate(f).valid());
  EXPECT_EQ(simplicial_subdivisions(f).size(), 2u);
  auto single = simplicial_subdivisions(orthants2());
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0], orthants2());
}

TEST(Subdivisions, EveryChildConeSitsInItsParentCone) {
  std::mt19937 rng(12);
  Fan parent = prism::Sigma();
  for (const auto& child : simplicial_subdivisions(parent)) {
    for (int s = 0; s < 1000; ++s) {
      QVector p = testutil::random_qvector(rng, 3, 30);
      for (std::size_t k = 0; k < child.max_cones().size(); ++k) {
        if (child.cone(k).contains(p) == Location::outside) continue;
        bool inside = false;
        for (std::size_t m = 0; m < parent.max_cones().size(); ++m)
          inside = inside || parent.cone(m).includes(child.cone(k));
        ASSERT_TRUE(inside);
      }
      ASSERT_TRUE(covered(child, p));
    }
  }
}

TEST(Subdivisions, OrderIsDeterministicAcrossThreadCounts) {
  auto a = simplicial_subdivisions(prism::Sigma(), ExecOptions{1});
  auto b = simplicial_subdivisions(prism::Sigma(), ExecOptions{4});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(AddedWalls, Counts) {
  EXPECT_EQ(added_walls(prism::Sigma(), prism::Sigma(1)).added_walls.size(), 3u);
  EXPECT_EQ(added_walls(prism::Sigma(), prism::Sigma(7)).added_walls.size(), 3u);
  EXPECT_EQ(added_walls(prism::Sigma(1), prism::Sigma(1)).added_walls.size(), 0u);
}

TEST(AddedWalls, NotARefinement) {
  // Sigma_1 does not refine Sigma_2
  EXPECT_THROW(added_walls(prism::Sigma(2), prism::Sigma(1)), Error);
  EXPECT_THROW(added_walls(prism::Sigma(), orthants2()), Error);
}
