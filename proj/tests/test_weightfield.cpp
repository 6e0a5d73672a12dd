#include "logpar/errors.hpp"
#include "logpar/linalg.hpp"
#include "logpar/scalar_field.hpp"
#include "logpar/weightfield.hpp"
#include "oracles/sqrt2_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace logpar;

namespace {

WeightFieldElement w(const char* text) { return parse_weight_scalar(text, sqrt2_ground()); }

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40), den(1, 12);
  return Rational(num(rng), den(rng));
}

WeightFieldElement random_element(std::mt19937_64& rng) {
  return WeightFieldElement(sqrt2_ground(), {random_rational(rng), random_rational(rng)});
}

}  // namespace

TEST(Sign, ZeroIsZero) { EXPECT_EQ(sign(WeightFieldElement()), 0); }

TEST(Sign, SmallExamples) {
  EXPECT_EQ(sign(w("a-1")), oracle::sign_sqrt2(-1, 1));
  EXPECT_EQ(sign(w("3-2a")), oracle::sign_sqrt2(3, -2));
  EXPECT_EQ(sign(w("a-1")), 1);
  EXPECT_EQ(sign(w("3-2a")), 1);
}

TEST(Sign, NearCancellation) {
  // 665857/470832 is a convergent of sqrt(2); the difference is below 1e-11.
  const auto x = WeightFieldElement(sqrt2_ground(), {Rational(-665857, 470832), Rational(1)});
  EXPECT_EQ(sign(x), oracle::sign_sqrt2(Rational(-665857, 470832), 1));
}

TEST(Sign, AgreesWithSquaringOracle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Rational a = random_rational(rng), b = random_rational(rng);
    EXPECT_EQ(sign(WeightFieldElement(sqrt2_ground(), {a, b})), oracle::sign_sqrt2(a, b));
  }
}

TEST(Sign, OrderIsCompatibleAndTotal) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto x = random_element(rng), y = random_element(rng), z = random_element(rng);
    if (sign(x) > 0 && sign(y) > 0) EXPECT_EQ(sign(x + y), 1);
    const int trichotomy = (x < y) + (x == y) + (x > y);
    EXPECT_EQ(trichotomy, 1);
    if (x <= y && y <= z) EXPECT_TRUE(x <= z);
    if (sign(z) > 0) EXPECT_EQ(x < y, x * z < y * z);
  }
}

TEST(Floor, MatchesDefinition) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const auto x = random_element(rng);
    const Integer n = x.floor();
    EXPECT_GE(sign(x - WeightFieldElement(Rational(n))), 0);
    EXPECT_LT(sign(x - WeightFieldElement(Rational(n + 1))), 0);
  }
  EXPECT_EQ(w("a").floor(), 1);
  EXPECT_EQ(w("-a").floor(), -2);
  EXPECT_EQ(w("3-2a").frac(), w("3-2a"));
}

TEST(Arithmetic, AlphaSquaredReduces) { EXPECT_EQ(w("a") * w("a"), WeightFieldElement(2L)); }

TEST(Parse, RoundTripsThroughString) {
  for (const char* text : {"0", "3-2a", "1/2", "-a", "5/3+7/2*a"}) EXPECT_EQ(w(w(text).str().c_str()), w(text));
  EXPECT_EQ(w("3-2a").str(), "3-2a");
  EXPECT_THROW(parse_weight_scalar("a", nullptr), InputError);
  EXPECT_THROW(w("3--a"), InputError);
}

TEST(Ground, RejectsInvalidInput) {
  EXPECT_THROW(AlgebraicGround({-4, 0, 1}, Rational(1), Rational(3)), InputError);  // reducible
  EXPECT_THROW(AlgebraicGround({-2, 0, 1}, Rational(-2), Rational(2)), InputError);  // two roots
  EXPECT_THROW(AlgebraicGround({-2, 1}, Rational(1), Rational(3)), InputError);      // degree 1
  EXPECT_THROW(AlgebraicGround({1, 0, -3, 0, 1}, Rational(1), Rational(2)), InputError);  // (x^2-x-1)(x^2+x-1)
  EXPECT_NO_THROW(AlgebraicGround({-2, 0, 0, 1}, Rational(1), Rational(2)));
  EXPECT_NO_THROW(AlgebraicGround({-2, 0, 0, 0, 1}, Rational(1), Rational(2)));
}

TEST(Ground, CubeRootSigns) {
  const auto cbrt2 = std::make_shared<const AlgebraicGround>(std::vector<Integer>{-2, 0, 0, 1}, Rational(1), Rational(2));
  const WeightFieldElement a = WeightFieldElement::alpha(cbrt2);
  EXPECT_EQ(a * a * a, WeightFieldElement(2L));
  EXPECT_EQ(sign(a - WeightFieldElement(Rational(125, 100))), 1);
  EXPECT_EQ(sign(a - WeightFieldElement(Rational(126, 100))), -1);
}

TEST(Phase, Triviality) {
  EXPECT_TRUE(phase_is_trivial(PhaseClass(WeightFieldElement(3L))));
  EXPECT_FALSE(phase_is_trivial(PhaseClass(WeightFieldElement(Rational(1, 2)))));
  EXPECT_FALSE(phase_is_trivial(PhaseClass(w("2a-2"))));
  EXPECT_EQ(PhaseClass(w("a")).representative(), w("a-1"));
  EXPECT_EQ(PhaseClass(w("-1/2")).representative(), w("1/2"));
}

TEST(ScalarField, Examples) {
  const ScalarField field(2);
  EXPECT_EQ(field.embed_phase(PhaseClass(WeightFieldElement(0L))), PhaseScalar(1L));
  EXPECT_EQ(field.embed_phase(PhaseClass(w("1/2"))), PhaseScalar(-1L));
  EXPECT_EQ(field.embed_phase(PhaseClass(w("a"))), field.u_power(1));
  EXPECT_THROW(ScalarField(3).embed_phase(PhaseClass(w("1/2"))), DenominatorOverflow);
}

TEST(ScalarField, HomomorphismAndKernel) {
  const ScalarField field(12);
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<long> num(-30, 30), den_pick(0, 5), alpha_coef(-4, 4);
  const long dens[] = {1, 2, 3, 4, 6, 12};
  auto random_phase = [&] {
    return PhaseClass(WeightFieldElement(sqrt2_ground(), {Rational(num(rng), dens[den_pick(rng)]), Rational(alpha_coef(rng))}));
  };
  for (int i = 0; i < 10000; ++i) {
    const PhaseClass a = random_phase(), b = random_phase();
    EXPECT_EQ(field.embed_phase(a + b), field.embed_phase(a) * field.embed_phase(b));
    EXPECT_EQ(field.embed_phase(a) == PhaseScalar(1L), phase_is_trivial(a));
  }
}

TEST(ScalarField, NontrivialPhaseMinusOneIsInvertible) {
  const ScalarField field(6);
  for (const char* text : {"1/6", "1/3", "1/2", "a-1", "2a-2", "1/2+a"}) {
    const PhaseScalar x = field.embed_phase(PhaseClass(w(text))) - PhaseScalar(1L);
    ASSERT_FALSE(x.is_zero());
    EXPECT_EQ(x * (PhaseScalar(1L) / x), PhaseScalar(1L));
  }
}

TEST(Cyclotomic, RootsHaveTheRightOrder) {
  const auto& ctx = cyclotomic_context(12);
  const Cyclotomic z = Cyclotomic::root_of_unity(ctx, 1);
  Cyclotomic p = 1L;
  for (int k = 1; k <= 12; ++k) {
    p = p * z;
    EXPECT_EQ(p == Cyclotomic(1L), k == 12);
  }
  EXPECT_EQ(z * z.inverse(), Cyclotomic(1L));
}

TEST(Linalg, RankAndKernelOverPhaseScalars) {
  const ScalarField field(3);
  const PhaseScalar u = field.u_power(1);
  Mat<PhaseScalar> m(2, 3);
  m << u, PhaseScalar(1L), u* u, u* u, u, u* u* u;  // second row = u * first row
  EXPECT_EQ(rank(m), 1);
  const Mat<PhaseScalar> k = kernel_basis(m);
  EXPECT_EQ(k.cols(), 2);
  const Mat<PhaseScalar> prod = m * k;
  for (Index i = 0; i < prod.rows(); ++i)
    for (Index j = 0; j < prod.cols(); ++j) EXPECT_TRUE(prod(i, j).is_zero());
}

TEST(Linalg, SolveOverRationals) {
  Mat<Rational> a(2, 2);
  a << 1, 2, 3, 4;
  Mat<Rational> b(2, 1);
  b << 5, 6;
  const auto x = solve(a, b);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(Mat<Rational>(a * *x), b);
  Mat<Rational> singular(2, 2);
  singular << 1, 2, 2, 4;
  EXPECT_FALSE(solve(singular, b).has_value());
}
