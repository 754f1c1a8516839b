#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace toricflip;

namespace {

FlipCertificate reference_certificate() {
  WeightMatrix W = prism::W();
  FlipCertificate c;
  c.source = prism::Sigma(7);
  c.target = prism::Sigma(1);
  c.divisor = prism::D();
  c.divisor_class = divisor_class(W, c.divisor);
  c.source_nef = nef_cone(c.source, W);
  c.target_chamber = nef_cone(c.target, W);
  return c;
}

void expect_sound(const FlipCertificate& c, const WeightMatrix& W) {
  EXPECT_TRUE(c.checks.all_passed());
  EXPECT_TRUE(verify_flip(c, W).all_passed());
  EXPECT_EQ(c.source.fan_matrix(), c.target.fan_matrix());
  EXPECT_TRUE(c.divisor.is_integral());
  EXPECT_EQ(c.target_chamber.contains(c.divisor_class), Location::interior);
  EXPECT_EQ(c.source_nef.contains(c.divisor_class), Location::outside);
  EXPECT_TRUE(is_face(c.source_nef, c.target_chamber));
  EXPECT_EQ(nef_cone(c.target, W), c.target_chamber);
}

}  // namespace

TEST(FindFlip, FromSigma7) {
  WeightMatrix W = prism::W();
  auto c = find_flip(prism::Sigma(7), W);
  expect_sound(c, W);
  std::set<std::vector<IndexSet>> projective;
  for (std::size_t i = 1; i <= 6; ++i) projective.insert(prism::Sigma(i).max_cones());
  EXPECT_TRUE(projective.count(c.target.max_cones()));
  // reproducible
  auto again = find_flip(prism::Sigma(7), W);
  EXPECT_EQ(again.target, c.target);
  EXPECT_EQ(again.divisor.coeffs, c.divisor.coeffs);
}

TEST(FindFlip, FromSigma8) {
  WeightMatrix W = prism::W();
  expect_sound(find_flip(prism::Sigma(8), W), W);
}

TEST(FindFlip, TargetIsTheCanonicallyLeastChamber) {
  WeightMatrix W = prism::W();
  auto sf = secondary_fan(W);
  Cone least = sf.chambers.front().cone;
  for (const auto& ch : sf.chambers) EXPECT_FALSE(ch.cone < least);
  EXPECT_EQ(find_flip(prism::Sigma(7), W).target_chamber, least);
}

TEST(FindFlip, ProjectiveInputRejected) {
  EXPECT_THROW(find_flip(prism::Sigma(1), prism::W()), Error);
  EXPECT_THROW(find_flip(prism::Sigma(), prism::W()), Error);
}

TEST(VerifyFlip, ReferenceCertificateReplays) {
  WeightMatrix W = prism::W();
  auto c = reference_certificate();
  EXPECT_EQ(c.divisor_class, (QVector{10, 8, 12}));
  auto rep = verify_flip(c, W);
  EXPECT_TRUE(rep.all_passed());
  EXPECT_EQ(rep.checks.size(), 6u);
  EXPECT_EQ(nef_cone(prism::Sigma(1), W).contains(c.divisor_class), Location::interior);
  EXPECT_EQ(prism::ray({1, 1, 1}).contains(c.divisor_class), Location::outside);
}

TEST(VerifyFlip, ClassOnAWallFails) {
  WeightMatrix W = prism::W();
  auto c = reference_certificate();
  // (1,1,1)+(1,0,1) is on the boundary of Nef(X_1); scale to a Cartier divisor
  TDivisor d = detail::preimage_of_class(W, QVector{2, 1, 2});
  c.divisor = d.scaled(Rat(cartier_multiple(c.source, d)));
  c.divisor_class = divisor_class(W, c.divisor);
  auto rep = verify_flip(c, W);
  EXPECT_FALSE(rep.passed(kCheckClassPosition));
  EXPECT_FALSE(rep.passed(kCheckAmpleOnTarget));
  EXPECT_TRUE(rep.passed(kCheckCartierOnSource));
}

TEST(VerifyFlip, TargetEqualToSourceFails) {
  auto c = reference_certificate();
  c.target = c.source;
  auto rep = verify_flip(c, prism::W());
  EXPECT_FALSE(rep.passed(kCheckSmallModification));
  EXPECT_FALSE(rep.all_passed());
}

TEST(VerifyFlip, NonCartierDivisorFails) {
  auto c = reference_certificate();
  c.divisor = TDivisor::integral({1, 0, 0, 0, 0, 0});
  c.divisor_class = divisor_class(prism::W(), c.divisor);
  auto rep = verify_flip(c, prism::W());
  EXPECT_FALSE(rep.passed(kCheckCartierOnSource));
}

TEST(VerifyFlip, TotalOnGarbage) {
  FlipCertificate c = reference_certificate();
  c.source = prism::Sigma();  // not simplicial
  c.divisor_class = QVector{1};
  auto rep = verify_flip(c, prism::W());
  EXPECT_FALSE(rep.all_passed());
  EXPECT_EQ(rep.checks.size(), 6u);
}

TEST(Projectivize, PrismFan) {
  auto res = projectivize(prism::Sigma());
  ASSERT_TRUE(res.resolution);
  EXPECT_EQ(res.resolution->added_walls.size(), 3u);
  EXPECT_EQ(res.final_fan.fan_matrix(), prism::V());
  EXPECT_TRUE(is_projective(res.final_fan, res.weights));
  bool resolved_projective = is_projective(res.resolution->child, res.weights);
  EXPECT_EQ(res.flip.has_value(), !resolved_projective);
  if (res.flip) EXPECT_TRUE(res.flip->checks.all_passed());
}

TEST(Projectivize, PreferProjectiveSubdivisionSkipsTheFlip) {
  ProjectivizeOptions o;
  o.prefer_projective_subdivision = true;
  auto res = projectivize(prism::Sigma(), o);
  EXPECT_TRUE(res.resolution);
  EXPECT_FALSE(res.flip);
}

TEST(Projectivize, AlreadyProjective) {
  Fan f(IMatrix::from_rows({{1, 0, -1, 0}, {0, 1, 0, -1}}), {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  auto res = projectivize(f);
  EXPECT_FALSE(res.resolution);
  EXPECT_FALSE(res.flip);
  EXPECT_EQ(res.final_fan, f);
}

TEST(Projectivize, Sigma7FlipsOnce) {
  ProjectivizeOptions o;
  o.weights = prism::Q();
  auto res = projectivize(prism::Sigma(7), o);
  EXPECT_FALSE(res.resolution);
  ASSERT_TRUE(res.flip);
  EXPECT_TRUE(is_projective(res.final_fan, prism::W()));
}

TEST(Projectivize, IdempotentOnItsOutput) {
  for (std::size_t i = 1; i <= 8; ++i) {
    auto first = projectivize(prism::Sigma(i));
    auto second = projectivize(first.final_fan);
    EXPECT_FALSE(second.resolution);
    EXPECT_FALSE(second.flip);
    EXPECT_EQ(second.final_fan, first.final_fan);
  }
}

TEST(Projectivize, IncompleteInputRejected) {
  Fan f(IMatrix::from_rows({{1, 0}, {0, 1}}), {{0, 1}});
  EXPECT_THROW(projectivize(f), Error);
}

TEST(FlipCorpus, EveryNonProjectiveVariantFlips) {
  std::mt19937 rng(77);
  auto corpus = testutil::prism_variants(rng, 24);
  ASSERT_GE(corpus.size(), 20u);
  int flipped = 0;
  for (const auto& f : corpus) {
    WeightMatrix W = gale_dual(f.fan_matrix());
    if (is_projective(f, W)) {
      auto res = projectivize(f);
      EXPECT_FALSE(res.flip);
      EXPECT_EQ(res.final_fan, f);
    } else {
      ++flipped;
      auto c = find_flip(f, W);
      EXPECT_TRUE(verify_flip(c, W).all_passed());
    }
  }
  RecordProperty("non_projective_variants", flipped);
}
