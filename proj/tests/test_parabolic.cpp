#include "fixtures.hpp"
#include "logpar/errors.hpp"
#include "logpar/parabolic.hpp"
#include "oracles/ringb_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace logpar;
using fixtures::wt;

namespace {

RingPtr ring_over(WeightMonoid lambda, int m, std::optional<DualElement> deg = std::nullopt) {
  return std::make_shared<const RingB>(std::move(lambda), CoefficientRing(m), std::move(deg));
}

AMatrix scalar(int m, const char* text) {
  AMatrix out(m, 1, 1);
  out(0, 0) = parse_aelem(text, m);
  return out;
}

// E_0 = E_{1/2} = A over Lambda = (1/2)N with the given maps 0 -> 1/2 -> 1.
ParabolicSheaf half_line(int m, const char* up, const char* wrap) {
  auto ring = ring_over(WeightMonoid::fraction(fixtures::monoid_n(), 2), m);
  FineWeightSystem sys(ring->lambda(), {wt({"0"}), wt({"1/2"})});
  return ParabolicSheaf(ring, sys, {FGModule::free(m, 1), FGModule::free(m, 1)},
                        {{0, 0, wt({"0"}), scalar(m, "1")},
                         {1, 1, wt({"0"}), scalar(m, "1")},
                         {0, 1, wt({"1/2"}), scalar(m, up)},
                         {1, 0, wt({"1/2"}), scalar(m, wrap)}});
}

AMatrix random_invertible(std::mt19937_64& rng, int m, Index n) {
  std::uniform_int_distribution<long> d(-2, 2);
  for (;;) {
    AMatrix out(m, n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) out(i, j)[0] = Rational(d(rng));
    if (rank(out.restrict_scalars()) == n * m) return out;
  }
}

AMatrix rational_inverse(const AMatrix& a) {
  const Index n = a.rows();
  Mat<Rational> q(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) q(i, j) = a(i, j)[0];
  const Mat<Rational> inv = *solve<Rational>(q, Mat<Rational>::Identity(n, n));
  AMatrix out(a.order(), n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = AElem(a.order(), inv(i, j));
  return out;
}

// Rank-k sheaf on (1/2)N with M = diag of 1 or e and N = diag of the complements,
// so that N M = M N = e; both sides conjugated by random rational changes of basis.
ParabolicSheaf random_half_line(std::mt19937_64& rng, Index k, int n = 2) {
  const int m = 2;
  auto ring = ring_over(WeightMonoid::fraction(fixtures::monoid_n(), n), m);
  FineWeightSystem sys(ring->lambda(), {wt({"0"}), wt({"1/2"})});
  AMatrix up(m, k, k), wrap(m, k, k);
  for (Index i = 0; i < k; ++i) {
    const bool jump_here = rng() % 2 == 0;
    up(i, i) = parse_aelem(jump_here ? "e" : "1", m);
    wrap(i, i) = parse_aelem(jump_here ? "1" : "e", m);
  }
  const AMatrix u = random_invertible(rng, m, k), v = random_invertible(rng, m, k);
  return ParabolicSheaf(ring, sys, {FGModule::free(m, k), FGModule::free(m, k)},
                        {{0, 0, wt({"0"}), AMatrix::identity(m, k)},
                         {1, 1, wt({"0"}), AMatrix::identity(m, k)},
                         {0, 1, wt({"1/2"}), v * up * rational_inverse(u)},
                         {1, 0, wt({"1/2"}), u * wrap * rational_inverse(v)}});
}

}  // namespace

TEST(RingB, SectionsMatchBruteForce) {
  using namespace fixtures;
  struct Case {
    WeightMonoid lambda;
    Weight cls;
  };
  const std::vector<Case> cases = {
      {WeightMonoid::fraction(monoid_n(), 2), wt({"1/2"})},
      {WeightMonoid::fraction(monoid_n2(), 3), wt({"1/3", "2/3"})},
      {WeightMonoid::fraction(monoid_a1(), 2), wt({"1/2", "0"})},
      {WeightMonoid::fraction(monoid_a1(), 2), wt({"1/2", "1/2"})},
      {WeightMonoid::fraction(monoid_a1(), 3), wt({"2/3", "1/3"})},
      {sat_alpha(monoid_n(), {"a"}), wt({"a"})},
      {sat_alpha(monoid_n2(), {"a", "2a"}), wt({"-a", "-2a"})},
  };
  for (const auto& c : cases)
    for (int m : {1, 2, 3}) {
      const RingB ring(c.lambda, CoefficientRing(m));
      const auto sec = ring.sections(c.cls);
      const auto all = oracle::class_monomials(c.lambda, c.cls.frac(), 6);
      auto expected = oracle::minimal_by_comparison(c.lambda, all);
      ASSERT_EQ(sec->monomials.size(), expected.size()) << c.cls.str();
      for (const auto& mu : expected)
        EXPECT_NE(std::find(sec->monomials.begin(), sec->monomials.end(), mu), sec->monomials.end()) << mu.str();
      const auto& phi = c.lambda.base().positive_functional();
      const long dim = oracle::class_dimension(c.lambda, c.cls.frac(), 6, m,
                                               [&](const LatticePoint& h) { return phi(h); });
      EXPECT_EQ(sec->module.dimension(), dim) << c.cls.str() << " m=" << m;
    }
}

TEST(RingB, TwoMinimalMonomialsOnTheConeOfA1) {
  const auto lambda = WeightMonoid::fraction(fixtures::monoid_a1(), 2);
  const auto sec = RingB(lambda, CoefficientRing(2)).sections(wt({"1/2", "0"}));
  ASSERT_EQ(sec->size(), 2u);
  // Every Hilbert basis element has phi = 2, so over Q[e]/(e^2) the join relation vanishes.
  EXPECT_EQ(sec->module.dimension(), 4);
  EXPECT_EQ(RingB(lambda, CoefficientRing(3)).sections(wt({"1/2", "0"}))->module.dimension(), 5);
  // A log degree that is 1 on both basis vectors makes it e(S^a - S^b) = 0.
  const RingB tilted(lambda, CoefficientRing(2), DualElement{{1, 1}});
  EXPECT_EQ(tilted.sections(wt({"1/2", "0"}))->module.dimension(), 3);
  EXPECT_THROW(RingB(lambda, CoefficientRing(2), DualElement{{1, 0}}), InputError);
}

TEST(RingB, Reduce) {
  const RingB ring(WeightMonoid::fraction(fixtures::monoid_n(), 2), CoefficientRing(3));
  const auto r = ring.reduce(wt({"5/2"}));
  EXPECT_EQ(ring.sections(wt({"1/2"}))->monomials[r.index], wt({"1/2"}));
  EXPECT_EQ(r.factor.str(), "e^2");
  EXPECT_THROW(ring.reduce(wt({"-1/2"})), std::logic_error);
}

TEST(CheckAxioms, HalfLineExamples) {
  EXPECT_TRUE(check_axioms(half_line(2, "1", "e")).passed);
  const auto bad = check_axioms(half_line(2, "1", "0"));
  EXPECT_FALSE(bad.passed);
  ASSERT_FALSE(bad.violations.empty());
  EXPECT_EQ(bad.violations.front().condition, "functoriality");
  // Over the log point f_1 = 0, so the zero wrap-around map is the right one.
  EXPECT_TRUE(check_axioms(half_line(1, "1", "0")).passed);
  EXPECT_FALSE(check_axioms(half_line(1, "1", "1")).passed);
  EXPECT_FALSE(check_axioms(half_line(2, "e", "e")).passed);
}

TEST(CheckAxioms, ZeroSheafPasses) {
  for (const auto& lambda : {WeightMonoid::fraction(fixtures::monoid_a1(), 3),
                             fixtures::sat_alpha(fixtures::monoid_n2(), {"a", "2a"})}) {
    auto ring = ring_over(lambda, 2);
    FineWeightSystem sys(lambda, {Weight::zero(lambda.rank())});
    const auto rep = check_axioms(ParabolicSheaf::zero(ring, sys));
    EXPECT_TRUE(rep.passed);
    EXPECT_GT(rep.squares_checked, 0u);
  }
}

TEST(CheckAxioms, RejectsMalformedTransitions) {
  auto ring = ring_over(WeightMonoid::fraction(fixtures::monoid_n(), 2), 2);
  FineWeightSystem sys(ring->lambda(), {wt({"0"}), wt({"1/2"})});
  const std::vector<FGModule> pieces{FGModule::free(2, 1), FGModule::free(2, 1)};
  EXPECT_THROW(ParabolicSheaf(ring, sys, pieces, {{0, 1, wt({"3/2"}), scalar(2, "1")}}), InputError);
  EXPECT_THROW(ParabolicSheaf(ring, sys, pieces, {{0, 1, wt({"1"}), scalar(2, "1")}}), InputError);
  EXPECT_THROW(ParabolicSheaf(ring, sys, pieces, {{0, 1, wt({"1/2"}), AMatrix(2, 2, 1)}}), InputError);
}

TEST(CheckAxioms, RandomConjugatedSheavesPass) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) EXPECT_TRUE(check_axioms(random_half_line(rng, 1 + t % 3)).passed);
}

TEST(PieceAt, Examples) {
  const auto e = half_line(2, "1", "e");
  EXPECT_EQ(piece_at(e, wt({"0"})).module.describe(), "A");
  EXPECT_EQ(piece_at(e, wt({"1/2"})).module.describe(), "A");
  EXPECT_EQ(piece_at(e, wt({"3/2"})).module.describe(), "A");
  EXPECT_FALSE(piece_at(e, wt({"1/2"})).empty_diagram);

  // Irrational weights: R = {0, a-1}; the position a-1 is terminal below 2a-2.
  // Nothing in Lambda has negative a-coefficient, so there is no jump back from a-1 to 0.
  const auto lambda = fixtures::sat_alpha(fixtures::monoid_n(), {"a"});
  auto ring = ring_over(lambda, 2);
  FineWeightSystem sys(lambda, {wt({"0"}), wt({"a-1"})});
  AMatrix from_zero(2, 2, 1);
  from_zero(0, 0) = parse_aelem("1", 2);
  AMatrix torsion(2, 2, 1);
  torsion(1, 0) = parse_aelem("e", 2);
  const ParabolicSheaf two(ring, sys, {FGModule::free(2, 1), FGModule(torsion)},
                           {{0, 0, wt({"0"}), scalar(2, "1")},
                            {1, 1, wt({"0"}), AMatrix::identity(2, 2)},
                            {0, 1, wt({"a-1"}), from_zero}});
  ASSERT_TRUE(check_axioms(two).passed);
  EXPECT_EQ(piece_at(two, wt({"2a-2"})).module.describe(), "A + A/(e)");
  EXPECT_EQ(piece_at(two, wt({"a"})).module.describe(), "A + A/(e)");
  EXPECT_EQ(piece_at(two, wt({"1"})).module.describe(), "A");
  EXPECT_THROW(piece_at(two, wt({"1/2"})), InputError);
}

TEST(Induce, HalfFromZero) {
  auto ring = ring_over(WeightMonoid::fraction(fixtures::monoid_n(), 2), 2);
  FineWeightSystem small(ring->lambda(), {wt({"0"})});
  FineWeightSystem large(ring->lambda(), {wt({"0"}), wt({"1/2"})});
  AMatrix rel(2, 2, 1);
  rel(1, 0) = parse_aelem("e", 2);
  const ParabolicSheaf e(ring, small, {FGModule(rel)}, {{0, 0, wt({"0"}), AMatrix::identity(2, 2)}});
  ASSERT_TRUE(check_axioms(e).passed);
  const auto ind = induce(e, large);
  EXPECT_TRUE(check_axioms(ind).passed);
  EXPECT_EQ(ind.piece(1).describe(), e.piece(0).describe());
  EXPECT_TRUE(is_isomorphism(ind.piece(0), ind.piece(1), ind.transition(0, 1, 0)));
  EXPECT_TRUE(identical(restrict(ind, small), e));
  EXPECT_TRUE(identical(induce(e, small), e));

  const auto zero = induce(ParabolicSheaf::zero(ring, small), large);
  EXPECT_TRUE(zero.is_zero());
  EXPECT_TRUE(check_axioms(zero).passed);
  EXPECT_EQ(restrict(e, FineWeightSystem(ring->lambda(), {})).size(), 0u);
}

TEST(Induce, RestrictAfterInduceIsIdentity) {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 50; ++t) {
    const auto e = random_half_line(rng, 1 + t % 3, 4);
    FineWeightSystem large(e.ring().lambda(), {wt({"0"}), wt({"1/4"}), wt({"1/2"}), wt({"3/4"})});
    const auto ind = induce(e, large);
    EXPECT_TRUE(identical(restrict(ind, e.system()), e));
    if (t < 10) EXPECT_TRUE(check_axioms(ind).passed);
  }
  // Irrational weights: induce from {0} to {0, a-1, 2a-2}.
  const auto lambda = fixtures::sat_alpha(fixtures::monoid_n(), {"a"});
  auto ring = ring_over(lambda, 2);
  FineWeightSystem small(lambda, {wt({"0"})});
  FineWeightSystem large(lambda, {wt({"0"}), wt({"a-1"}), wt({"2a-2"})});
  for (int t = 0; t < 10; ++t) {
    const Index k = 1 + t % 3;
    AMatrix rel(2, k, 1);
    for (Index i = 0; i < k; ++i) rel(i, 0) = parse_aelem(rng() % 2 ? "e" : "0", 2);
    const ParabolicSheaf e(ring, small, {FGModule(rel)}, {{0, 0, wt({"0"}), AMatrix::identity(2, k)}});
    const auto ind = induce(e, large);
    EXPECT_TRUE(check_axioms(ind).passed);
    EXPECT_TRUE(identical(restrict(ind, small), e));
  }
}
