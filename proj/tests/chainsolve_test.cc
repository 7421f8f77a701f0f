#include <gtest/gtest.h>

#include "chaining/chainsolve.h"
#include "chaining/oracle.h"
#include "chaining/variantgen.h"
#include "test_util.h"

namespace chaining {
namespace {

using testing::E1;

ChainSolution Solved(const ChainResult& result) {
  if (const auto* bad = std::get_if<ChainingInfeasible>(&result)) {
    ADD_FAILURE() << "infeasible: " << bad->reason;
    return {};
  }
  return std::get<ChainSolution>(result);
}

TEST(SolveChaining, E1TravelCost) {
  const ChainSolution s = Solved(SolveChaining(E1()));
  EXPECT_EQ(s.objective, 2);
  ASSERT_EQ(s.chains.size(), 1u);
  EXPECT_EQ(s.chains[0].vehicle, 0);
  EXPECT_EQ(s.chains[0].plans, (std::vector<VariantRef>{{0, 0}, {1, 1}}));
  EXPECT_EQ(s.chains[0].link_costs, (std::vector<Cost>{0, 2}));
}

TEST(SolveChaining, E1FleetSizeDedicated) {
  const ChainSolution s = Solved(SolveChaining(testing::E1Dedicated()));
  EXPECT_EQ(s.objective, 1);
  EXPECT_EQ(s.chains.size(), 1u);
}

TEST(SolveChaining, E1WithoutVehicle) {
  EXPECT_TRUE(std::holds_alternative<ChainingInfeasible>(
      SolveChaining(testing::E1WithoutVehicle())));
}

TEST(SolveChaining, EmptyInstance) {
  const ChainingInstance inst({}, {}, TravelMatrix(), policy::TravelCost{});
  const ChainSolution s = Solved(SolveChaining(inst));
  EXPECT_EQ(s.objective, 0);
  EXPECT_TRUE(s.chains.empty());
}

TEST(SolveChaining, NoVariantsMeansNoBranching) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const ChainingInstance inst = testing::RandomSmall(seed, policy::TravelCost{}, 7, 3, 0);
    const ChainResult result = SolveChaining(inst);
    const McfResult mcf = SolveMcf(BuildNetwork(inst, Generate(inst)));
    ASSERT_EQ(std::holds_alternative<ChainSolution>(result),
              std::holds_alternative<FlowAssignment>(mcf));
    if (const auto* s = std::get_if<ChainSolution>(&result)) {
      EXPECT_EQ(s->stats.branch_nodes, 0);
      EXPECT_EQ(s->objective, std::get<FlowAssignment>(mcf).total_cost);
    }
  }
}

TEST(SolveChaining, WarmAndColdAgree) {
  SolveOptions cold;
  cold.warm_start = false;
  for (const CostPolicy& policy : testing::AllPolicies()) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const ChainingInstance inst = testing::RandomSmall(seed, policy);
      const ChainResult a = SolveChaining(inst);
      const ChainResult b = SolveChaining(inst, cold);
      ASSERT_EQ(a.index(), b.index());
      if (a.index() == 0) {
        EXPECT_EQ(std::get<ChainSolution>(a).objective,
                  std::get<ChainSolution>(b).objective);
      }
    }
  }
}

TEST(SolveChaining, OrderedAndEqualConsistencyAgree) {
  SolveOptions equal;
  equal.ordered_delays = false;
  const std::vector<CostPolicy> invariant = {policy::FleetSize{}, policy::TravelCost{}};
  int delayed = 0;
  for (const CostPolicy& policy : invariant) {
    for (std::uint64_t seed = 1; seed <= 150; ++seed) {
      const ChainingInstance inst = testing::RandomSmall(seed, policy, 8, 3, 15);
      const ChainResult a = SolveChaining(inst);
      const ChainResult b = SolveChaining(inst, equal);
      ASSERT_EQ(a.index(), b.index()) << "seed " << seed;
      if (a.index() != 0) continue;
      const ChainSolution& sa = std::get<ChainSolution>(a);
      EXPECT_EQ(sa.objective, std::get<ChainSolution>(b).objective) << "seed " << seed;
      EXPECT_LE(sa.stats.connections, std::get<ChainSolution>(b).stats.connections);
      const ValidationReport report = ValidateChains(inst, sa.chains, sa.objective);
      EXPECT_TRUE(report.ok()) << "seed " << seed << "\n" << report.ToString();
      for (const Chain& chain : sa.chains) {
        for (const VariantRef& v : chain.plans) delayed += v.delay > 0;
      }
    }
  }
  EXPECT_GT(delayed, 0);
}

// Attaching undelayed connections to plan nodes lets a chain enter a plan at
// one delay and leave it at another, or close into a cycle.
TEST(SolveChaining, LiteralRoutingAdmitsInvalidChains) {
  SolveOptions literal;
  literal.routing = VariantRouting::kBasePlanNodes;
  int invalid = 0;
  int cycles = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const ChainingInstance inst = testing::RandomSmall(seed, policy::TravelCost{});
    try {
      const ChainResult result = SolveChaining(inst, literal);
      if (const auto* s = std::get_if<ChainSolution>(&result)) {
        invalid += !ValidateChains(inst, s->chains, s->objective).ok();
      }
    } catch (const std::logic_error&) {
      ++cycles;
    }
  }
  EXPECT_GT(invalid, 0);
  EXPECT_GT(cycles, 0);
}

TEST(SolveChaining, SolutionsValidateAndRespectFleet) {
  for (const CostPolicy& policy : testing::AllPolicies()) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      const ChainingInstance inst = testing::RandomSmall(seed, policy);
      const ChainResult result = SolveChaining(inst);
      const auto* s = std::get_if<ChainSolution>(&result);
      if (!s) continue;
      const ValidationReport report = ValidateChains(inst, s->chains, s->objective);
      EXPECT_TRUE(report.ok()) << report.ToString();
      EXPECT_LE(static_cast<int>(s->chains.size()), inst.num_vehicles());
      if (std::holds_alternative<policy::FleetSize>(policy)) {
        EXPECT_EQ(s->objective, static_cast<Cost>(s->chains.size()));
      }
      // A plan is entered and left through the same variant: the link
      // out of plans[i] is evaluated at the delay it was entered with.
      for (const Chain& chain : s->chains) {
        for (std::size_t i = 1; i < chain.plans.size(); ++i) {
          EXPECT_TRUE(inst.connection_feasible(chain.plans[i - 1], chain.plans[i]));
        }
      }
    }
  }
}

TEST(ExtractChains, E1) {
  const ChainingInstance e1 = E1();
  const FlowNetwork net = BuildNetwork(e1, Generate(e1));
  const FlowAssignment flow = std::get<FlowAssignment>(SolveMcf(net));
  const std::vector<Chain> chains = ExtractChains(e1, net, flow.flow);
  ASSERT_EQ(chains.size(), 1u);
  EXPECT_EQ(chains[0].plans, (std::vector<VariantRef>{{0, 0}, {1, 1}}));
}

TEST(ExtractChains, VehicleOnlyFlows) {
  // Two plans at the same time, two vehicles: no inter-plan flow.
  const ChainingInstance inst({Plan{1, 0, 1, 5, 10, 0}, Plan{2, 2, 1, 5, 10, 0}},
                              {Vehicle{1, 0, 0}, Vehicle{2, 2, 0}}, testing::LineTravel(),
                              policy::TravelCost{});
  const FlowNetwork net = BuildNetwork(inst, Generate(inst));
  const FlowAssignment flow = std::get<FlowAssignment>(SolveMcf(net));
  const std::vector<Chain> chains = ExtractChains(inst, net, flow.flow);
  ASSERT_EQ(chains.size(), 2u);
  for (const Chain& c : chains) EXPECT_EQ(c.plans.size(), 1u);
}

TEST(ExtractChains, EmptyInstance) {
  const ChainingInstance inst({}, {}, TravelMatrix(), policy::TravelCost{});
  const FlowNetwork net = BuildNetwork(inst, Generate(inst));
  EXPECT_TRUE(ExtractChains(inst, net, {}).empty());
}

Chain MakeChain(const ChainingInstance& inst, int vehicle, std::vector<VariantRef> plans) {
  Chain chain;
  chain.vehicle = vehicle;
  Endpoint previous = VehicleRef{vehicle};
  for (const VariantRef& v : plans) {
    chain.plans.push_back(v);
    chain.link_costs.push_back(inst.travel_time(previous, v));
    chain.link_waits.push_back(0);
    previous = v;
  }
  return chain;
}

TEST(ValidateChains, E1Optimum) {
  const ChainingInstance e1 = E1();
  const ChainSolution s = Solved(SolveChaining(e1));
  const ValidationReport report = ValidateChains(e1, s.chains, 2);
  EXPECT_TRUE(report.ok()) << report.ToString();
  EXPECT_EQ(report.recomputed_objective, 2);
}

TEST(ValidateChains, TimingViolationAtLinkTwo) {
  const ChainingInstance e1 = E1();
  const ValidationReport report =
      ValidateChains(e1, {MakeChain(e1, 0, {{1, 0}, {0, 0}})});
  ASSERT_FALSE(report.ok());
  bool found = false;
  for (const Violation& v : report.violations) {
    if (v.chain == 0 && v.link == 2 && v.message.find("timing") != std::string::npos) {
      found = true;
    }
  }
  EXPECT_TRUE(found) << report.ToString();
}

TEST(ValidateChains, PlanServedTwice) {
  const ChainingInstance inst({Plan{1, 0, 1, 5, 10, 0}, Plan{2, 2, 1, 5, 10, 0}},
                              {Vehicle{1, 0, 0}, Vehicle{2, 2, 0}}, testing::LineTravel(),
                              policy::TravelCost{});
  const ValidationReport report = ValidateChains(
      inst, {MakeChain(inst, 0, {{0, 0}}), MakeChain(inst, 1, {{0, 0}})});
  ASSERT_FALSE(report.ok());
  bool twice = false;
  bool missing = false;
  for (const Violation& v : report.violations) {
    if (v.message.find("plan 1") != std::string::npos) twice = true;
    if (v.message.find("plan 2") != std::string::npos) missing = true;
  }
  EXPECT_TRUE(twice) << report.ToString();
  EXPECT_TRUE(missing) << report.ToString();
}

TEST(ValidateChains, WrongClaimedObjective) {
  const ChainingInstance e1 = E1();
  const ChainSolution s = Solved(SolveChaining(e1));
  EXPECT_FALSE(ValidateChains(e1, s.chains, 3).ok());
}

TEST(ValidateChains, DelayOutOfRange) {
  const ChainingInstance e1 = E1();
  Chain chain;
  chain.vehicle = 0;
  chain.plans = {{0, 0}, {1, 4}};
  chain.link_costs = {0, 2};
  chain.link_waits = {5, 3};
  const ValidationReport report = ValidateChains(e1, {chain});
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.violations[0].link, 2);
}

}  // namespace
}  // namespace chaining
