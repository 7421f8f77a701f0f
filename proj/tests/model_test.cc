#include <gtest/gtest.h>

#include "chaining/model.h"
#include "test_util.h"

namespace chaining {
namespace {

using testing::E1;
using testing::LineTravel;

TEST(TravelMatrix, RejectsMalformedRows) {
  EXPECT_THROW(TravelMatrix({{0, 1}, {1}}), std::invalid_argument);
  EXPECT_THROW(TravelMatrix({{1, 1}, {1, 0}}), std::invalid_argument);
  EXPECT_THROW(TravelMatrix({{0, -1}, {1, 0}}), std::invalid_argument);
  EXPECT_EQ(TravelMatrix({{0, 3}, {4, 0}}).at(1, 0), 4);
}

TEST(TravelTime, E1Lookups) {
  const ChainingInstance e1 = E1();
  EXPECT_EQ(e1.travel_time(VariantRef{0, 0}, VariantRef{1, 0}), 2);
  EXPECT_EQ(e1.travel_time(VehicleRef{0}, VariantRef{0, 0}), 0);
  EXPECT_EQ(e1.travel_time(VariantRef{0, 0}, VariantRef{1, 1}), 2);
}

TEST(ConnectionFeasible, E1Cases) {
  const ChainingInstance e1 = E1();
  EXPECT_FALSE(e1.connection_feasible(VariantRef{0, 0}, VariantRef{1, 0}));
  EXPECT_TRUE(e1.connection_feasible(VariantRef{0, 0}, VariantRef{1, 1}));
  EXPECT_TRUE(e1.connection_feasible(VehicleRef{0}, VariantRef{0, 0}));
  EXPECT_FALSE(e1.connection_feasible(VariantRef{1, 0}, VariantRef{0, 0}));
}

TEST(ConnectionFeasible, SamePlanIsAnError) {
  const ChainingInstance e1 = E1();
  EXPECT_THROW(e1.connection_feasible(VariantRef{1, 0}, VariantRef{1, 2}),
               std::invalid_argument);
}

TEST(ConnectionFeasible, MonotoneInTargetDelay) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const ChainingInstance inst = testing::RandomSmall(seed, policy::TravelCost{});
    for (int a = 0; a < inst.num_plans(); ++a) {
      for (int b = 0; b < inst.num_plans(); ++b) {
        if (a == b) continue;
        bool seen = false;
        for (Tick d = 0; d <= inst.plans()[b].d_max; ++d) {
          const bool ok = inst.connection_feasible(VariantRef{a, 0}, VariantRef{b, d});
          EXPECT_TRUE(!seen || ok) << "seed " << seed;
          seen = seen || ok;
        }
      }
    }
  }
}

TEST(ConnectionFeasible, ZeroTravelZeroSlackIsOrdered) {
  // Two instantaneous plans at the same place and time may chain one way only.
  const ChainingInstance inst({Plan{1, 0, 0, 3, 3, 0}, Plan{2, 0, 0, 3, 3, 0}}, {},
                              testing::Point(), policy::TravelCost{});
  EXPECT_TRUE(inst.connection_feasible(VariantRef{0, 0}, VariantRef{1, 0}));
  EXPECT_FALSE(inst.connection_feasible(VariantRef{1, 0}, VariantRef{0, 0}));
}

TEST(ConnectionCost, Policies) {
  EXPECT_EQ(E1(policy::FleetSize{}).connection_cost(VehicleRef{0}, VariantRef{0, 0}), 1);
  EXPECT_EQ(E1(policy::FleetSize{}).connection_cost(VariantRef{0, 0}, VariantRef{1, 1}), 0);
  EXPECT_EQ(E1().connection_cost(VariantRef{0, 0}, VariantRef{1, 1}), 2);
  EXPECT_EQ(E1().connection_cost(VehicleRef{0}, VariantRef{1, 0}), 4);

  // p1 ends at 10 at loc1; p2 at delay 3 starts at 14 at loc2: wait 2.
  const ChainingInstance capped = E1(policy::WaitCapped{1});
  EXPECT_EQ(capped.wait_time(VariantRef{0, 0}, VariantRef{1, 3}), 2);
  EXPECT_EQ(capped.connection_cost(VariantRef{0, 0}, VariantRef{1, 3}), std::nullopt);
  EXPECT_EQ(capped.connection_cost(VariantRef{0, 0}, VariantRef{1, 2}), 2);

  const ChainingInstance penalized = E1(policy::WaitPenalized{3, 4});
  // 2 + round(0.75 * 2) = 2 + 2
  EXPECT_EQ(penalized.connection_cost(VariantRef{0, 0}, VariantRef{1, 3}), 4);
  // 2 + round(0.75 * 1) = 2 + 1
  EXPECT_EQ(penalized.connection_cost(VariantRef{0, 0}, VariantRef{1, 2}), 3);
}

TEST(ConnectionCost, WaitCapSevenOverFive) {
  const ChainingInstance inst({Plan{1, 0, 0, 0, 0, 0}, Plan{2, 0, 0, 7, 7, 0}}, {},
                              testing::Point(), policy::WaitCapped{5});
  EXPECT_EQ(inst.wait_time(VariantRef{0, 0}, VariantRef{1, 0}), 7);
  EXPECT_EQ(inst.connection_cost(VariantRef{0, 0}, VariantRef{1, 0}), std::nullopt);
}

TEST(ConnectionCost, InfeasiblePairThrows) {
  EXPECT_THROW(E1().connection_cost(VariantRef{0, 0}, VariantRef{1, 0}),
               std::invalid_argument);
}

TEST(Instance, ValidatesInvariants) {
  EXPECT_THROW(ChainingInstance({Plan{1, 0, 1, 10, 5, 0}}, {}, LineTravel(),
                                policy::TravelCost{}),
               std::invalid_argument);
  EXPECT_THROW(ChainingInstance({Plan{1, 0, 1, 0, 5, -1}}, {}, LineTravel(),
                                policy::TravelCost{}),
               std::invalid_argument);
  EXPECT_THROW(ChainingInstance({Plan{1, 0, 7, 0, 5, 0}}, {}, LineTravel(),
                                policy::TravelCost{}),
               std::invalid_argument);
  EXPECT_THROW(ChainingInstance({Plan{1, 0, 1, 0, 5, 0}, Plan{1, 0, 1, 0, 5, 0}}, {},
                                LineTravel(), policy::TravelCost{}),
               std::invalid_argument);
  EXPECT_THROW(ChainingInstance({}, {Vehicle{1, 0, 0}, Vehicle{1, 1, 0}}, LineTravel(),
                                policy::TravelCost{}),
               std::invalid_argument);
  EXPECT_THROW(E1().plan_index(42), std::out_of_range);
}

TEST(Policy, ParseAndPrintRoundTrip) {
  for (const char* text : {"fleet", "cost", "cost-waitcap:5", "cost-waitpen:2",
                           "cost-waitpen:1/2"}) {
    EXPECT_EQ(PolicyToString(ParsePolicy(text)), text);
  }
  EXPECT_THROW(ParsePolicy("cheap"), std::invalid_argument);
  EXPECT_THROW(ParsePolicy("cost-waitcap:-1"), std::invalid_argument);
  EXPECT_TRUE(IsDelayInvariant(policy::FleetSize{}));
  EXPECT_TRUE(IsDelayInvariant(policy::TravelCost{}));
  EXPECT_FALSE(IsDelayInvariant(policy::WaitCapped{3}));
  EXPECT_FALSE(IsDelayInvariant(policy::WaitPenalized{1, 1}));
}

}  // namespace
}  // namespace chaining
