#include "fixtures.hpp"
#include "logpar/cohomology.hpp"

#include <gtest/gtest.h>


using namespace logpar;
using fixtures::wt;

namespace {

std::vector<PhaseClass> phases(std::initializer_list<const char*> thetas) {
  std::vector<PhaseClass> out;
  for (const char* t : thetas) out.emplace_back(parse_weight_scalar(t, sqrt2_ground()));
  return out;
}

RingPtr ring_over(WeightMonoid lambda, int m) {
  return std::make_shared<const RingB>(std::move(lambda), CoefficientRing(m));
}

}  // namespace

TEST(Recursion, TrivialAndNontrivialCharacters) {
  EXPECT_EQ(cohomology_by_recursion(phases({"0"}), true), (std::vector<Index>{1, 0}));
  EXPECT_EQ(cohomology_by_recursion(phases({"0", "0"}), true), (std::vector<Index>{1, 0, 0}));
  EXPECT_EQ(cohomology_by_recursion(phases({"0"}), false), (std::vector<Index>{1, 1}));
  EXPECT_EQ(cohomology_by_recursion(phases({"0", "0"}), false), (std::vector<Index>{1, 2, 1}));
  EXPECT_EQ(cohomology_by_recursion(phases({"1/2"}), false), (std::vector<Index>{0, 0}));
  EXPECT_EQ(cohomology_by_recursion(phases({"0", "a"}), true), (std::vector<Index>{0, 0, 0}));
}

TEST(Koszul, TrivialCharacterWithLogVariables) {
  // sigma - 1 on Q[T]_{<=d} has image of degree <= d-1: H^1(d) is one-dimensional
  // and dies in slice d+1.
  const auto one = cohomology_by_koszul(phases({"0"}), true, 3);
  EXPECT_EQ(one.dims, (std::vector<Index>{1, 1}));
  EXPECT_TRUE(one.transition_vanishes[1]);
  const auto two = cohomology_by_koszul(phases({"0", "0"}), true, 4);
  EXPECT_EQ(two.dims[0], 1);
  EXPECT_TRUE(two.transition_vanishes[1]);
  EXPECT_TRUE(two.transition_vanishes[2]);
}

TEST(Koszul, WithoutLogVariables) {
  const auto trivial = cohomology_by_koszul(phases({"0"}), false, 0);
  EXPECT_EQ(trivial.dims, (std::vector<Index>{1, 1}));
  EXPECT_FALSE(trivial.transition_vanishes[1]);
  EXPECT_EQ(cohomology_by_koszul(phases({"1/2"}), false, 0).dims, (std::vector<Index>{0, 0}));
  EXPECT_EQ(cohomology_by_koszul(phases({"a", "0"}), false, 0).dims, (std::vector<Index>{0, 0, 0}));
}

TEST(Koszul, NontrivialCharactersVanishInEverySlice) {
  for (const auto& ph : {phases({"1/3"}), phases({"a"}), phases({"1/2", "0"}), phases({"0", "2a-1/2"})}) {
    const auto s = cohomology_by_koszul(ph, true, static_cast<int>(ph.size()) + 2);
    for (auto d : s.dims) EXPECT_EQ(d, 0);
  }
}

TEST(GroupCohomology, LogPointVanishing) {
  const auto ring = ring_over(WeightMonoid::fraction(fixtures::monoid_n(), 2), 1);
  const auto rep = group_cohomology(*ring, wt({"1/2"}));
  EXPECT_EQ(rep.dims, (std::vector<Index>{1, 0}));
  EXPECT_TRUE(rep.complete);
  EXPECT_TRUE(rep.stabilized);
  EXPECT_EQ(rep.classes.size(), 2u);
}

TEST(GroupCohomology, CircleWithoutLogVariables) {
  const auto ring = ring_over(WeightMonoid::fraction(fixtures::monoid_n(), 1), 1);
  CohomologyOptions opts;
  opts.log_variables = false;
  const auto rep = group_cohomology(*ring, wt({"0"}), opts);
  EXPECT_EQ(rep.dims, (std::vector<Index>{1, 1}));
  const auto shifted = group_cohomology(*ring_over(WeightMonoid::fraction(fixtures::monoid_n(), 2), 1),
                                        wt({"1/2"}), opts);
  EXPECT_EQ(shifted.dims, (std::vector<Index>{1, 1}));
}

TEST(GroupCohomology, MethodsAgreeAcrossConfigurations) {
  using namespace fixtures;
  const std::vector<std::pair<WeightMonoid, std::vector<Weight>>> cases = {
      {WeightMonoid::fraction(monoid_n(), 3), {wt({"0"}), wt({"1/3"}), wt({"-2/3"})}},
      {WeightMonoid::fraction(monoid_n2(), 2), {wt({"0", "0"}), wt({"1/2", "0"}), wt({"1/2", "-1/2"})}},
      {WeightMonoid::fraction(monoid_a1(), 2), {wt({"1/2", "1/2"})}},
      {sat_alpha(monoid_n(), {"a"}), {wt({"0"}), wt({"a"}), wt({"2-a"})}},
      {sat_alpha(monoid_n2(), {"a", "2a"}), {wt({"a", "2a"}), wt({"0", "0"})}},
  };
  for (const auto& [lambda, weights] : cases)
    for (int m : {1, 2}) {
      const auto ring = ring_over(lambda, m);
      for (const auto& w : weights) {
        const auto rep = group_cohomology(*ring, w);
        for (std::size_t k = 1; k < rep.dims.size(); ++k) EXPECT_EQ(rep.dims[k], 0) << w.str();
        EXPECT_EQ(rep.dims[0], ring->sections(w)->module.dimension()) << w.str();
        EXPECT_TRUE(rep.stabilized);
      }
    }
}
