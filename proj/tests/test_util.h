#ifndef CHAINING_TESTS_TEST_UTIL_H_
#define CHAINING_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <random>
#include <vector>

#include "chaining/io.h"
#include "chaining/model.h"

namespace chaining::testing {

// Locations on a line at 0, 2 and 4; travel time is the distance.
inline TravelMatrix LineTravel() {
  return TravelMatrix({{0, 2, 4}, {2, 0, 2}, {4, 2, 0}});
}

// A single location.
inline TravelMatrix Point() { return TravelMatrix(std::vector<std::vector<Tick>>{{0}}); }

inline std::vector<Plan> E1Plans() {
  return {Plan{1, 0, 1, 5, 10, 0}, Plan{2, 2, 0, 11, 20, 3}};
}

inline ChainingInstance E1(CostPolicy policy = policy::TravelCost{}) {
  return ChainingInstance(E1Plans(), {Vehicle{1, 0, 0}}, LineTravel(), policy);
}

inline ChainingInstance E1WithoutVehicle() {
  return ChainingInstance(E1Plans(), {}, LineTravel(), policy::TravelCost{});
}

inline ChainingInstance E1Dedicated() {
  return ChainingInstance(E1Plans(), {Vehicle{1, 0, 0}, Vehicle{2, 2, 0}}, LineTravel(),
                          policy::FleetSize{});
}

// Small random chaining instance: 1..max_plans plans, 1..max_vehicles
// vehicles, times within 60 ticks, d_max within [0, max_delay].
inline ChainingInstance RandomSmall(std::uint64_t seed, CostPolicy policy,
                                    int max_plans = 7, int max_vehicles = 3,
                                    Tick max_delay = 10) {
  std::mt19937_64 rng(seed * 7919 + 17);
  io::GeneratorParams params;
  params.seed = seed;
  params.locations = 2 + static_cast<int>(rng() % 5);
  params.grid = 6;
  params.horizon = 40;
  params.count = 1 + static_cast<int>(rng() % max_plans);
  params.vehicles = 1 + static_cast<int>(rng() % max_vehicles);
  params.delay_min = 0;
  params.delay_max = max_delay;
  params.policy = policy;
  return std::get<ChainingInstance>(io::GenerateChainInstance(params).content);
}

inline ChainingInstance RandomZeroDelayDedicated(std::uint64_t seed, int max_plans = 9) {
  std::mt19937_64 rng(seed * 104729 + 3);
  io::GeneratorParams params;
  params.seed = seed;
  params.locations = 2 + static_cast<int>(rng() % 6);
  params.grid = 6;
  params.horizon = 40;
  params.count = 1 + static_cast<int>(rng() % max_plans);
  params.delay_min = 0;
  params.delay_max = 0;
  params.dedicated_vehicles = true;
  params.policy = policy::FleetSize{};
  return std::get<ChainingInstance>(io::GenerateChainInstance(params).content);
}

inline std::vector<CostPolicy> AllPolicies() {
  return {policy::FleetSize{}, policy::TravelCost{}, policy::WaitCapped{5},
          policy::WaitPenalized{1, 2}};
}

}  // namespace chaining::testing

#endif  // CHAINING_TESTS_TEST_UTIL_H_
