#include "fixtures.hpp"
#include "logpar/errors.hpp"
#include "oracles/weights_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace logpar;
using fixtures::wt;

namespace {

Weight random_weight(std::mt19937_64& rng, int r, bool irrational, int den = 2) {
  std::uniform_int_distribution<long> num(-6, 6), alpha(-3, 3);
  Weight w;
  for (int i = 0; i < r; ++i)
    w.coords.push_back(
        WeightFieldElement(sqrt2_ground(), {Rational(num(rng), den), Rational(irrational ? alpha(rng) : 0)}));
  return w;
}

std::vector<WeightMonoid> all_lambdas() {
  using namespace fixtures;
  return {WeightMonoid::fraction(monoid_n(), 2),  WeightMonoid::fraction(monoid_n2(), 3),
          WeightMonoid::fraction(monoid_a1(), 2), sat_alpha(monoid_n(), {"a"}),
          sat_alpha(monoid_n2(), {"a", "2a"}),    sat_alpha(monoid_a1(), {"a", "a"})};
}

}  // namespace

TEST(LambdaMember, Examples) {
  const auto lambda = fixtures::sat_alpha(fixtures::monoid_n(), {"a"});
  EXPECT_EQ(lambda.lambda_member(wt({"a-1"})), MembershipVerdict::Member);
  EXPECT_EQ(lambda.lambda_member(wt({"3-2a"})), MembershipVerdict::NotMember);
  EXPECT_EQ(lambda.lambda_member(wt({"0"})), MembershipVerdict::Member);
  for (const auto& l : all_lambdas()) EXPECT_EQ(l.lambda_member(Weight::zero(l.rank())), MembershipVerdict::Member);
}

TEST(LambdaMember, AgreesWithDefinitionOracle) {
  std::mt19937_64 rng(21);
  const auto n1 = fixtures::sat_alpha(fixtures::monoid_n(), {"a"});
  const auto n2 = fixtures::sat_alpha(fixtures::monoid_n2(), {"a", "2a"});
  for (int i = 0; i < 400; ++i) {
    for (const auto* l : {&n1, &n2}) {
      const int r = l->rank();
      const Weight w = random_weight(rng, r, true, 1 + static_cast<int>(rng() % 2));
      std::vector<oracle::Sqrt2Number> plain;
      for (const auto& c : w.coords) plain.push_back({c.coefficient(0), c.coefficient(1)});
      const std::vector<long> direction = r == 1 ? std::vector<long>{1} : std::vector<long>{1, 2};
      EXPECT_EQ(l->lambda_member(w) == MembershipVerdict::Member, oracle::in_orthant_sqrt2_monoid(plain, direction))
          << w.str();
    }
  }
}

TEST(LambdaMember, FractionAgreesWithSaturatedPresentation) {
  std::mt19937_64 rng(22);
  for (const auto& p : {fixtures::monoid_n(), fixtures::monoid_n2(), fixtures::monoid_a1()}) {
    for (int n : {2, 3}) {
      const auto frac = WeightMonoid::fraction(p, n);
      std::vector<Weight> gens;
      for (const auto& h : p->hilbert_basis()) {
        Weight g = Weight::from_lattice(h);
        for (auto& c : g.coords) c = c * WeightFieldElement(Rational(1, n));
        gens.push_back(g);
      }
      const auto sat = WeightMonoid::saturated(p, gens);
      for (int i = 0; i < 200; ++i) {
        const Weight w = random_weight(rng, p->rank(), false, n * (1 + static_cast<int>(rng() % 2)));
        EXPECT_EQ(frac.lambda_member(w), sat.lambda_member(w)) << w.str();
      }
    }
  }
}

TEST(Leq, Examples) {
  const auto half = WeightMonoid::fraction(fixtures::monoid_n(), 2);
  EXPECT_TRUE(half.leq(wt({"1/2"}), wt({"1/2"})));
  EXPECT_TRUE(half.leq(wt({"0"}), wt({"1/2"})));
  const auto sat = fixtures::sat_alpha(fixtures::monoid_n(), {"a"});
  EXPECT_FALSE(sat.leq(wt({"a"}), wt({"1"})));
}

TEST(Leq, PreorderAndAntisymmetry) {
  std::mt19937_64 rng(23);
  for (const auto& l : all_lambdas()) {
    const bool irr = !l.is_rational();
    for (int i = 0; i < 60; ++i) {
      const Weight a = random_weight(rng, l.rank(), irr), b = random_weight(rng, l.rank(), irr),
                   c = random_weight(rng, l.rank(), irr);
      EXPECT_TRUE(l.leq(a, a));
      if (l.leq(a, b) && l.leq(b, c)) EXPECT_TRUE(l.leq(a, c));
      if (l.leq(a, b) && l.leq(b, a)) EXPECT_EQ(a, b);
    }
  }
}

TEST(Saturation, ClosureUnderP) {
  std::mt19937_64 rng(24);
  for (const auto& l : all_lambdas()) {
    const auto& hb = l.base().hilbert_basis();
    for (int i = 0; i < 80; ++i) {
      const Weight w = random_weight(rng, l.rank(), !l.is_rational());
      const Weight shifted = w + hb[rng() % hb.size()];
      if (l.base().in_cone(w.coords) && l.in_lambda(shifted)) EXPECT_TRUE(l.in_lambda(w)) << w.str();
    }
  }
}

TEST(MaximalBelow, Examples) {
  const auto half = WeightMonoid::fraction(fixtures::monoid_n(), 2);
  EXPECT_EQ(half.maximal_below(wt({"0"})), (std::vector<LatticePoint>{{0}}));
  EXPECT_EQ(half.maximal_below(wt({"3/2"})), (std::vector<LatticePoint>{{1}}));
  const auto sat = fixtures::sat_alpha(fixtures::monoid_n(), {"a"});
  EXPECT_TRUE(sat.maximal_below(wt({"-a"})).empty());
  EXPECT_EQ(sat.maximal_below(wt({"a"})), (std::vector<LatticePoint>{{1}}));
}

TEST(MaximalBelow, IncomparableAndDominating) {
  std::mt19937_64 rng(25);
  for (const auto& l : all_lambdas()) {
    const ToricMonoid& p = l.base();
    for (int i = 0; i < 25; ++i) {
      const Weight w = random_weight(rng, l.rank(), !l.is_rational());
      const auto maxima = l.maximal_below(w);
      for (std::size_t a = 0; a < maxima.size(); ++a) {
        EXPECT_TRUE(l.in_lambda(w - maxima[a]));
        for (std::size_t b = 0; b < maxima.size(); ++b)
          if (a != b) EXPECT_FALSE(p.member(maxima[b] - maxima[a]));
      }
      // Every p' <= w found in a box lies below a returned maximum.
      const std::size_t r = static_cast<std::size_t>(l.rank());
      for_each_box_point(LatticePoint(r, -6), LatticePoint(r, 6), [&](const LatticePoint& q) {
        if (!l.in_lambda(w - q)) return;
        const bool covered = std::any_of(maxima.begin(), maxima.end(), [&](const LatticePoint& m) { return p.member(m - q); });
        EXPECT_TRUE(covered) << w.str();
      });
    }
  }
}

TEST(FineSystem, Examples) {
  const auto half = WeightMonoid::fraction(fixtures::monoid_n(), 2);
  EXPECT_EQ(FineWeightSystem(half, {wt({"0"}), wt({"1/2"})}).size(), 2u);
  EXPECT_EQ(FineWeightSystem(half, {wt({"0"}), wt({"1"})}).size(), 1u);
  const auto sat = fixtures::sat_alpha(fixtures::monoid_n(), {"a"});
  const FineWeightSystem orbit(sat, {wt({"a"})});
  EXPECT_EQ(orbit.representatives().front(), wt({"a-1"}));
  EXPECT_TRUE(orbit.index_of(wt({"a+5"})).has_value());
  EXPECT_THROW(FineWeightSystem(half, {wt({"1/3"})}), InputError);
}

TEST(EnumerateWindow, FiniteExamples) {
  const auto half = WeightMonoid::fraction(fixtures::monoid_n(), 2);
  EXPECT_EQ(half.enumerate_window(1).collect(0), (std::vector<Weight>{wt({"0"}), wt({"1/2"}), wt({"1"})}));
  const auto whole = WeightMonoid::fraction(fixtures::monoid_n(), 1);
  EXPECT_EQ(whole.enumerate_window(2).collect(0), (std::vector<Weight>{wt({"0"}), wt({"1"}), wt({"2"})}));
}

TEST(EnumerateWindow, SqrtTwoStreamMatchesIntervalOracle) {
  const auto sat = fixtures::sat_alpha(fixtures::monoid_n(), {"a"});
  const auto got = sat.enumerate_window(1).take(10);
  const auto expected = oracle::unit_interval_sqrt2_elements(10);
  ASSERT_EQ(got.size(), expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].coords[0].coefficient(0), expected[i].rational) << i;
    EXPECT_EQ(got[i].coords[0].coefficient(1), expected[i].irrational) << i;
  }
  // The irrational elements start 0, 1, a-1, 2a-2, 3a-4.
  EXPECT_EQ(got[2], wt({"a-1"}));
  EXPECT_EQ(got[3], wt({"2a-2"}));
  EXPECT_EQ(got[4], wt({"3a-4"}));
}

TEST(EnumerateWindow, RationalKindsSortedByPhiThenLex) {
  for (const auto& l : all_lambdas()) {
    if (!l.is_rational()) continue;
    const auto ws = l.enumerate_window(2).collect(0);
    for (std::size_t i = 0; i + 1 < ws.size(); ++i) {
      const int s = (l.base().phi(ws[i].coords) - l.base().phi(ws[i + 1].coords)).sign();
      EXPECT_TRUE(s < 0 || (s == 0 && numeric_lex_less(ws[i], ws[i + 1])));
    }
    for (const auto& w : ws) EXPECT_TRUE(l.in_lambda(w));
  }
}
