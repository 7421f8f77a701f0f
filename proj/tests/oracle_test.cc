#include <gtest/gtest.h>

#include "chaining/chainsolve.h"
#include "chaining/oracle.h"
#include "test_util.h"

namespace chaining {
namespace {

using testing::E1;

TEST(BruteForce, E1) {
  const oracle::OracleResult r = oracle::BruteForceOptimal(E1());
  ASSERT_TRUE(r.objective);
  EXPECT_EQ(*r.objective, 2);
  EXPECT_GE(r.feasible_sets, 1);
  EXPECT_TRUE(ValidateChains(E1(), r.witness, 2).ok());
}

TEST(BruteForce, UnreachablePlan) {
  EXPECT_FALSE(oracle::BruteForceOptimal(testing::E1WithoutVehicle()).objective);
}

TEST(BruteForce, TwoIsolatedPlans) {
  // Plans overlap in time; each vehicle serves one.
  const ChainingInstance inst({Plan{1, 1, 0, 5, 9, 0}, Plan{2, 2, 0, 5, 9, 0}},
                              {Vehicle{1, 0, 0}, Vehicle{2, 0, 0}}, testing::LineTravel(),
                              policy::TravelCost{});
  const oracle::OracleResult r = oracle::BruteForceOptimal(inst);
  ASSERT_TRUE(r.objective);
  EXPECT_EQ(*r.objective, 2 + 4);
  EXPECT_EQ(r.witness.size(), 2u);
}

TEST(BruteForce, Guard) {
  std::vector<Plan> plans;
  for (int i = 0; i < 10; ++i) plans.push_back(Plan{i + 1, 0, 0, i, i, 0});
  const ChainingInstance inst(plans, {}, testing::Point(), policy::TravelCost{});
  EXPECT_THROW(oracle::BruteForceOptimal(inst), std::length_error);
}

TEST(BruteForce, WitnessesValidate) {
  for (const CostPolicy& policy : testing::AllPolicies()) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const ChainingInstance inst = testing::RandomSmall(seed, policy, 6);
      const oracle::OracleResult r = oracle::BruteForceOptimal(inst);
      if (!r.objective) continue;
      const ValidationReport report = ValidateChains(inst, r.witness, r.objective);
      EXPECT_TRUE(report.ok()) << report.ToString();
    }
  }
}

ChainingInstance Dedicated(std::vector<Plan> plans) {
  std::vector<Vehicle> vehicles;
  for (const Plan& p : plans) vehicles.push_back(Vehicle{p.id, p.origin, 0});
  return ChainingInstance(plans, vehicles, testing::Point(), policy::FleetSize{});
}

TEST(Matching, SharedPredecessor) {
  // p1 -> p2 and p1 -> p3 only: p2 and p3 overlap.
  EXPECT_EQ(oracle::FleetMinMatching(Dedicated(
                {Plan{1, 0, 0, 0, 1, 0}, Plan{2, 0, 0, 2, 5, 0}, Plan{3, 0, 0, 3, 6, 0}})),
            2);
}

TEST(Matching, Line) {
  EXPECT_EQ(oracle::FleetMinMatching(Dedicated(
                {Plan{1, 0, 0, 0, 1, 0}, Plan{2, 0, 0, 2, 3, 0}, Plan{3, 0, 0, 4, 5, 0}})),
            1);
}

TEST(Matching, NoEdges) {
  EXPECT_EQ(oracle::FleetMinMatching(Dedicated(
                {Plan{1, 0, 0, 0, 5, 0}, Plan{2, 0, 0, 1, 6, 0}, Plan{3, 0, 0, 2, 7, 0}})),
            3);
}

TEST(Matching, RejectsDelays) {
  EXPECT_THROW(oracle::FleetMinMatching(E1()), std::invalid_argument);
}

TEST(FullVariant, E1) { EXPECT_EQ(oracle::FullVariantOptimal(E1()), 2); }

TEST(FullVariant, ZeroDelayMatchesFlow) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ChainingInstance inst = testing::RandomSmall(seed, policy::TravelCost{}, 7, 3, 0);
    const ChainResult r = SolveChaining(inst);
    const auto* s = std::get_if<ChainSolution>(&r);
    EXPECT_EQ(oracle::FullVariantOptimal(inst),
              s ? std::optional<Cost>(s->objective) : std::nullopt);
  }
}

// p1 -> p2 needs p2@2; p2@2 -> p3 then needs p3@3, a delay no base plan asks
// for directly. The generated set must still reach the optimum.
TEST(FullVariant, TransitiveDelay) {
  const ChainingInstance inst(
      {Plan{1, 0, 1, 0, 4, 0}, Plan{2, 2, 1, 4, 6, 3}, Plan{3, 2, 0, 7, 9, 4}},
      {Vehicle{1, 0, 0}}, testing::LineTravel(), policy::TravelCost{});
  const oracle::OracleResult truth = oracle::BruteForceOptimal(inst);
  ASSERT_TRUE(truth.objective);
  EXPECT_EQ(oracle::FullVariantOptimal(inst), truth.objective);
  const ChainResult r = SolveChaining(inst);
  ASSERT_TRUE(std::holds_alternative<ChainSolution>(r));
  EXPECT_EQ(std::get<ChainSolution>(r).objective, *truth.objective);
  EXPECT_EQ(std::get<ChainSolution>(r).chains.size(), 1u);
}

TEST(FullVariant, Guard) {
  const ChainingInstance inst({Plan{1, 0, 0, 0, 0, 500}}, {}, testing::Point(),
                              policy::TravelCost{});
  EXPECT_THROW(oracle::FullVariantOptimal(inst), std::length_error);
}

}  // namespace
}  // namespace chaining
