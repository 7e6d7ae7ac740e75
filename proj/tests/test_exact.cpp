#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "timewise/exact.hpp"
#include "timewise/problems.hpp"
#include "timewise/random.hpp"

namespace timewise {
namespace {

std::map<std::size_t, std::size_t> observed_map(const Observations& obs) {
  std::map<std::size_t, std::size_t> out;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (obs[i]) out[i] = *obs[i];
  }
  return out;
}

TEST(JointEnumeration, ChainExamples) {
  const Network net = testing::chain_network();
  EXPECT_NEAR(joint_enumeration(net, {}, {"B", "t"}).probability, 0.31, 1e-12);
  EXPECT_NEAR(joint_enumeration(net, {{{"B", "t"}}}, {"A", "t"}).probability, 0.24 / 0.31, 1e-12);
  EXPECT_NEAR(joint_enumeration(net, {{{"B", "t"}}}, {"A", "t"}).evidence_mass, 0.31, 1e-12);
  EXPECT_NEAR(joint_enumeration(testing::chain_network_uninformative(), {}, {"B", "t"}).probability, 0.5, 1e-12);
}

TEST(JointEnumeration, AgreesWithNestedLoopOracle) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Problem p = random_problem({6, 2, 2 + seed % 2, 2, false}, seed);
    const auto obs = resolve(p.net, p.evidence);
    const auto q = resolve(p.net, p.query, obs);
    const auto [expected, mass] = testing::enumerate_posterior(p.net, observed_map(obs), q.node, q.state);
    const Posterior got = joint_enumeration(p.net, p.evidence, p.query);
    EXPECT_NEAR(got.probability, expected, 1e-12);
    EXPECT_NEAR(got.evidence_mass, mass, 1e-12);
  }
}

TEST(JointEnumeration, CapAndInconsistency) {
  const Network big = random_network({21, 1, 2, 0, true}, 3);
  EXPECT_THROW(joint_enumeration(big, {}, {"X0", "s0"}), OracleCapExceeded);
  EXPECT_THROW(joint_enumeration(testing::deterministic_network(), {{{"B", "f"}}}, {"A", "t"}),
               InconsistentEvidence);
}

TEST(VariableElimination, ChainExamplesReproduce) {
  const Network net = testing::chain_network();
  EXPECT_NEAR(variable_elimination(net, {}, {"B", "t"}).probability, 0.31, 1e-12);
  EXPECT_NEAR(variable_elimination(net, {{{"B", "t"}}}, {"A", "t"}).probability, 0.774193548387097, 1e-12);
  EXPECT_NEAR(variable_elimination(testing::chain_network_uninformative(), {}, {"B", "t"}).probability, 0.5, 1e-12);
}

TEST(VariableElimination, ObservedQueryIsAContractViolation) {
  EXPECT_THROW(variable_elimination(testing::chain_network(), {{{"A", "t"}}}, {"A", "t"}), ContractViolation);
}

TEST(VariableElimination, InconsistentEvidence) {
  EXPECT_THROW(variable_elimination(testing::deterministic_network(), {{{"B", "f"}}}, {"A", "t"}),
               InconsistentEvidence);
}

TEST(VariableElimination, TwelveNodePolytree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Problem p = random_problem({12, 2, 2, 3, true}, 500 + seed);
    EXPECT_NEAR(variable_elimination(p.net, p.evidence, p.query).probability,
                joint_enumeration(p.net, p.evidence, p.query).probability, 1e-9);
  }
}

TEST(VariableElimination, ComplementSumsToOne) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Problem p = random_problem({8, 3, 2, 2, false}, seed);
    const double yes = variable_elimination(p.net, p.evidence, p.query).probability;
    const std::size_t node = *p.net.index_of(p.query.target);
    const double no = variable_elimination(p.net, p.evidence, {p.query.target, p.net.states(node)[1]}).probability;
    EXPECT_NEAR(yes + no, 1.0, 1e-9);
  }
}

TEST(VariableElimination, OrderNeverChangesTheResult) {
  Rng rng(99);
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Problem p = random_problem({9, 3, 2 + seed % 2, 2, false}, 1000 + seed);
    const auto obs = resolve(p.net, p.evidence);
    const auto q = resolve(p.net, p.query, obs);
    std::vector<std::size_t> order = min_degree_order(p.net, obs, q.node);
    const double reference = variable_elimination(p.net, p.evidence, p.query).probability;
    for (int k = 0; k < 3; ++k) {
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
      EXPECT_NEAR(variable_elimination(p.net, p.evidence, p.query, order).probability, reference, 1e-12);
    }
  }
}

TEST(VariableElimination, RejectsBadOrders) {
  const Network net = testing::diamond_network();
  const auto obs = resolve(net, Evidence{});
  const std::size_t d = *net.index_of("D");
  const std::vector<std::size_t> missing{*net.index_of("A")};
  EXPECT_THROW(variable_elimination_distribution(net, obs, d, missing), ContractViolation);
  const std::vector<std::size_t> with_target{0, 1, 2, d};
  EXPECT_THROW(variable_elimination_distribution(net, obs, d, with_target), ContractViolation);
}

TEST(MinDegreeOrder, TiesGoToSmallerId) {
  // Three isolated roots: every node has degree zero, so id order decides.
  NetworkData d = testing::binary_node_data({}, "Z", {}, {0.5});
  d = testing::binary_node_data(d, "M", {}, {0.5});
  d = testing::binary_node_data(d, "B", {}, {0.5});
  d = testing::binary_node_data(d, "Q", {}, {0.5});
  const Network net = Network::build(d);
  const auto obs = resolve(net, Evidence{});
  const auto order = min_degree_order(net, obs, *net.index_of("Q"));
  ASSERT_EQ(order.size(), 3u);
  EXPECT_EQ(net.id(order[0]), "B");
  EXPECT_EQ(net.id(order[1]), "M");
  EXPECT_EQ(net.id(order[2]), "Z");
}

TEST(CompleteResources, PositiveAndDeterministic) {
  const Network net = testing::eight_node_network();
  const Evidence ev{{{"X5", "t"}}};
  const Query q{"X7", "t"};
  const ResourceLedger ledger = measure_complete_resources(net, ev, q, 5);
  EXPECT_GT(ledger.complete_seconds, 0.0);
  EXPECT_EQ(ledger.allocated_seconds, 0.0);
  EXPECT_EQ(ledger.fraction(), 0.0);
  EXPECT_EQ(variable_elimination(net, ev, q).probability, variable_elimination(net, ev, q).probability);
  EXPECT_THROW(measure_complete_resources(net, ev, q, 2), ContractViolation);
}

TEST(CompleteResources, FractionDefinition) {
  EXPECT_EQ((ResourceLedger{3.0, 0.0}.with_allocated(3.0).fraction()), 1.0);
  EXPECT_EQ((ResourceLedger{8.0, 0.0}.with_allocated(2.0).fraction()), 0.25);
}

}  // namespace
}  // namespace timewise
