#include <gtest/gtest.h>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "timewise/exact.hpp"
#include "timewise/problems.hpp"
#include "timewise/transform.hpp"

namespace timewise {
namespace {

double conditional(const Network& net, const std::string& child, const std::string& child_state,
                   const std::string& given, const std::string& given_state) {
  const std::size_t c = *net.index_of(child);
  const std::size_t g = *net.index_of(given);
  return testing::enumerate_posterior(net, {{g, *net.state_index(g, given_state)}}, c,
                                      *net.state_index(c, child_state))
      .first;
}

TEST(GlobalIndependence, NaiveBayesIsAFixedPoint) {
  const Network net = testing::naive_bayes_network();
  const Network star = impose_global_independence(net, "D", {"S1", "S2"});
  for (const char* id : {"D", "S1", "S2"}) {
    const std::size_t a = *net.index_of(id);
    const std::size_t b = *star.index_of(id);
    ASSERT_EQ(star.cpt(b).size(), net.cpt(a).size()) << id;
    for (std::size_t i = 0; i < net.cpt(a).size(); ++i) EXPECT_NEAR(star.cpt(b)[i], net.cpt(a)[i], 1e-12) << id;
  }
}

TEST(GlobalIndependence, DiamondBecomesStarWithPairwiseConditionals) {
  const Network net = testing::symptom_diamond_network();
  const Network star = impose_global_independence(net, "D", {"S1", "S2"});
  const std::size_t s2 = *star.index_of("S2");
  ASSERT_EQ(star.parents(s2).size(), 1u);
  EXPECT_EQ(star.id(star.parents(s2)[0]), "D");
  EXPECT_NEAR(star.cpt(s2)[0], conditional(net, "S2", "t", "D", "t"), 1e-12);
  EXPECT_NEAR(star.cpt(s2)[2], conditional(net, "S2", "t", "D", "f"), 1e-12);
  EXPECT_FALSE(is_multiply_connected(star));
}

TEST(GlobalIndependence, PosteriorGenerallyDiffersWhenSymptomsAreDependent) {
  const Network net = testing::symptom_diamond_network();
  const Network star = impose_global_independence(net, "D", {"S1", "S2"});
  const Evidence ev{{{"S1", "t"}, {"S2", "t"}}};
  const double exact = joint_enumeration(net, ev, {"D", "t"}).probability;
  const double approx = joint_enumeration(star, ev, {"D", "t"}).probability;
  // The independence assumption double counts S1 through S2 here.
  EXPECT_GT(std::abs(exact - approx), 1e-3);
}

TEST(GlobalIndependence, PreservesConditionPrior) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Network net = random_network({7, 2, 2 + seed % 2, 0, false}, seed);
    // X0 has no parents, so it never descends from the evidence variables.
    const Network star = impose_global_independence(net, "X0", {"X3", "X5", "X6"});
    const std::size_t a = *net.index_of("X0");
    const std::size_t b = *star.index_of("X0");
    for (std::size_t s = 0; s < net.cardinality(a); ++s) {
      const double prior = testing::enumerate_posterior(net, {}, a, s).first;
      EXPECT_NEAR(star.cpt(b)[s], prior, 1e-9);
    }
  }
}

TEST(GlobalIndependence, ContractErrors) {
  const Network net = testing::symptom_diamond_network();
  EXPECT_THROW(impose_global_independence(net, "D", {"D", "S1"}), ContractViolation);
  EXPECT_THROW(impose_global_independence(net, "D", {"S1", "S1"}), ContractViolation);
  EXPECT_THROW(impose_global_independence(net, "D", {"Nope"}), ContractViolation);
  EXPECT_THROW(impose_global_independence(net, "S2", {"S1"}), ContractViolation);
}

TEST(PruneArcs, ZeroThresholdIsIdentity) {
  const Network net = testing::diamond_network(0.2);
  EXPECT_EQ(prune_arcs(net, 0.0).data(), net.data());
}

TEST(PruneArcs, DroppedParentIsSummedAgainstItsMarginal) {
  const Network net = testing::diamond_network(0.2);
  const Network pruned = prune_arcs(net, 0.5);
  const std::size_t d = *pruned.index_of("D");
  ASSERT_EQ(pruned.parents(d).size(), 1u);
  EXPECT_EQ(pruned.id(pruned.parents(d)[0]), "C");

  const std::size_t b = *net.index_of("B");
  const double pb = testing::enumerate_posterior(net, {}, b, 0).first;
  // Original rows of D over (B, C): (t,t) 0.95, (t,f) 0.6, (f,t) 0.5, (f,f) 0.05.
  EXPECT_NEAR(pruned.cpt(d)[0], pb * 0.95 + (1 - pb) * 0.5, 1e-12);
  EXPECT_NEAR(pruned.cpt(d)[2], pb * 0.6 + (1 - pb) * 0.05, 1e-12);
  EXPECT_TRUE(validate(pruned).ok());
}

TEST(PruneArcs, NothingBelowThresholdKeepsTheModel) {
  const Network net = testing::diamond_network();
  EXPECT_EQ(prune_arcs(net, 0.5).data().chance, net.data().chance);
}

}  // namespace
}  // namespace timewise
