#ifndef CHAINING_MODEL_H_
#define CHAINING_MODEL_H_

// Domain types for the plan chaining problem: plans with delay budgets,
// vehicles, a travel-time matrix and the connection cost policies.
//
// Time is measured in integer ticks (one tick = one second). Costs are
// non-negative integers. A connection that a policy forbids is reported as
// std::nullopt and never materializes as an edge.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

namespace chaining {

using Tick = std::int64_t;
using Cost = std::int64_t;
using LocationId = int;

class TravelMatrix {
 public:
  TravelMatrix() = default;
  // Throws std::invalid_argument unless rows form a square matrix with a zero
  // diagonal and non-negative entries.
  explicit TravelMatrix(const std::vector<std::vector<Tick>>& rows);

  int size() const { return size_; }
  bool contains(LocationId loc) const { return loc >= 0 && loc < size_; }
  Tick at(LocationId from, LocationId to) const {
    return data_[static_cast<std::size_t>(from) * size_ + to];
  }
  std::vector<std::vector<Tick>> rows() const;

  bool operator==(const TravelMatrix&) const = default;

 private:
  int size_ = 0;
  std::vector<Tick> data_;
};

struct Plan {
  int id = 0;
  LocationId origin = 0;
  LocationId destination = 0;
  Tick t_or = 0;
  Tick t_de = 0;
  Tick d_max = 0;

  bool operator==(const Plan&) const = default;
};

struct Vehicle {
  int id = 0;
  LocationId start = 0;
  Tick t_st = 0;

  bool operator==(const Vehicle&) const = default;
};

// A plan shifted later by `delay` ticks. `plan` is the index of the plan in
// ChainingInstance::plans; delay 0 is the plan itself.
struct VariantRef {
  int plan = 0;
  Tick delay = 0;

  auto operator<=>(const VariantRef&) const = default;
};

// Index into ChainingInstance::vehicles.
struct VehicleRef {
  int vehicle = 0;

  auto operator<=>(const VehicleRef&) const = default;
};

// Origin of a connection: a vehicle or a (possibly delayed) plan.
using Endpoint = std::variant<VehicleRef, VariantRef>;

namespace policy {
struct FleetSize {
  bool operator==(const FleetSize&) const = default;
};
struct TravelCost {
  bool operator==(const TravelCost&) const = default;
};
// Plan-to-plan connections waiting longer than max_wait are forbidden.
struct WaitCapped {
  Tick max_wait = 0;
  bool operator==(const WaitCapped&) const = default;
};
// Adds round_half_up(numerator / denominator * wait) to the travel cost of
// plan-to-plan connections.
struct WaitPenalized {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  bool operator==(const WaitPenalized&) const = default;
};
}  // namespace policy

using CostPolicy = std::variant<policy::FleetSize, policy::TravelCost,
                                policy::WaitCapped, policy::WaitPenalized>;

// True when connection costs do not depend on waiting time, i.e. chains that
// differ only in plan delays cost the same. The reduced variant generation is
// exact only for such policies.
bool IsDelayInvariant(const CostPolicy& policy);

std::string PolicyToString(const CostPolicy& policy);
// Accepts "fleet", "cost", "cost-waitcap:<ticks>", "cost-waitpen:<a>" and
// "cost-waitpen:<num>/<den>". Throws std::invalid_argument.
CostPolicy ParsePolicy(const std::string& text);

class ChainingInstance {
 public:
  ChainingInstance() = default;
  // Validates every model invariant; throws std::invalid_argument naming the
  // offending plan or vehicle.
  ChainingInstance(std::vector<Plan> plans, std::vector<Vehicle> vehicles,
                   TravelMatrix travel, CostPolicy policy);

  const std::vector<Plan>& plans() const { return plans_; }
  const std::vector<Vehicle>& vehicles() const { return vehicles_; }
  const TravelMatrix& travel() const { return travel_; }
  const CostPolicy& policy() const { return policy_; }

  int num_plans() const { return static_cast<int>(plans_.size()); }
  int num_vehicles() const { return static_cast<int>(vehicles_.size()); }

  // Index lookups by external id; throw std::out_of_range for unknown ids.
  int plan_index(int plan_id) const;
  int vehicle_index(int vehicle_id) const;

  ChainingInstance WithPolicy(CostPolicy policy) const;

  // Effective times of a variant.
  Tick origin_time(const VariantRef& v) const;
  Tick destination_time(const VariantRef& v) const;
  // Time at which an endpoint becomes free to drive to the next plan.
  Tick ready_time(const Endpoint& a) const;

  // Travel time from a's destination (a vehicle's start location) to b's
  // origin. Delays never change locations.
  Tick travel_time(const Endpoint& a, const VariantRef& b) const;

  // Travel fits into the time gap between a and b. Plan-to-plan pairs must
  // derive from different plans (std::invalid_argument otherwise). When a
  // zero-travel link leaves no slack, the pair must also be ordered by
  // (effective origin time, plan id) so that no cycle of connections exists.
  bool connection_feasible(const Endpoint& a, const VariantRef& b) const;

  // Idle time between arriving at b's origin and b's start.
  Tick wait_time(const Endpoint& a, const VariantRef& b) const;

  // Cost of a feasible connection under the instance policy, or nullopt when
  // the policy forbids it. Throws std::invalid_argument for infeasible pairs.
  std::optional<Cost> connection_cost(const Endpoint& a,
                                      const VariantRef& b) const;

  bool operator==(const ChainingInstance& other) const;

 private:
  void CheckVariant(const VariantRef& v) const;
  void CheckEndpoint(const Endpoint& a) const;

  std::vector<Plan> plans_;
  std::vector<Vehicle> vehicles_;
  TravelMatrix travel_;
  CostPolicy policy_ = policy::TravelCost{};
  std::unordered_map<int, int> plan_index_;
  std::unordered_map<int, int> vehicle_index_;
};

// One vehicle followed by the plan variants it serves, in order.
// link_costs[i] and link_waits[i] describe the link into plans[i].
struct Chain {
  int vehicle = 0;
  std::vector<VariantRef> plans;
  std::vector<Cost> link_costs;
  std::vector<Tick> link_waits;

  bool operator==(const Chain&) const = default;
};

}  // namespace chaining

#endif  // CHAINING_MODEL_H_
