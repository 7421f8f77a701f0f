#ifndef CHAINING_DARP_H_
#define CHAINING_DARP_H_

// Static dial-a-ride layer: requests with pickup/dropoff windows, exact
// solvers for small request groups and batches, the insertion heuristic
// baseline and the batch-then-chain pipeline.

#include <chrono>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chaining/model.h"

namespace chaining::darp {

struct Request {
  int id = 0;
  LocationId origin = 0;
  LocationId destination = 0;
  Tick t_r = 0;
  Tick max_delay = 0;

  bool operator==(const Request&) const = default;
};

// One virtual vehicle per produced plan, parked at the plan's origin.
struct AutoFleet {
  bool operator==(const AutoFleet&) const = default;
};

using Fleet = std::variant<std::vector<Vehicle>, AutoFleet>;

inline constexpr int kDefaultCapacity = 4;

class DarpInstance {
 public:
  DarpInstance() = default;
  // Throws std::invalid_argument on duplicate ids, unknown locations,
  // negative times or delays, or capacity < 1.
  DarpInstance(std::vector<Request> requests, TravelMatrix travel, int capacity,
               Fleet fleet);

  const std::vector<Request>& requests() const { return requests_; }
  const TravelMatrix& travel() const { return travel_; }
  int capacity() const { return capacity_; }
  const Fleet& fleet() const { return fleet_; }
  int request_index(int request_id) const;

  bool operator==(const DarpInstance&) const = default;

 private:
  std::vector<Request> requests_;
  TravelMatrix travel_;
  int capacity_ = kDefaultCapacity;
  Fleet fleet_ = AutoFleet{};
};

// Service window of a request: pickup in [earliest_pickup, latest_pickup],
// dropoff no later than latest_dropoff (direct ride time plus max_delay).
struct Window {
  Tick earliest_pickup = 0;
  Tick latest_pickup = 0;
  Tick latest_dropoff = 0;
};

Window RequestWindow(const Request& request, const TravelMatrix& travel);

enum class StopKind { kPickup, kDropoff };

struct Stop {
  // Index into the instance's request list.
  int request = 0;
  StopKind kind = StopKind::kPickup;
  LocationId location = 0;
  Tick time = 0;

  bool operator==(const Stop&) const = default;
};

struct RoutePlan {
  std::vector<Stop> stops;
  // Driving time between consecutive stops.
  Cost cost = 0;

  bool operator==(const RoutePlan&) const = default;
};

// Passengers on board after each stop.
std::vector<int> OnboardProfile(const RoutePlan& plan);
Tick Duration(const RoutePlan& plan);

// The minimum-cost ordering of the group's pickups and dropoffs, with each
// stop served at its earliest feasible time and the first stop not before
// `anchor`. Ties favour the earlier finish. `group` holds request indices.
// Throws std::invalid_argument if the group exceeds the capacity.
std::optional<RoutePlan> OptimalPlanForGroup(const std::vector<Request>& requests,
                                             const std::vector<int>& group,
                                             const TravelMatrix& travel,
                                             int capacity, Tick anchor = 0);

struct BatchOptions {
  int max_batch_size = 12;
  // Wall-clock budget for the set-partitioning search; the best partition
  // found so far is returned when it expires.
  std::optional<std::chrono::milliseconds> time_limit;
};

struct BatchResult {
  std::vector<RoutePlan> plans;
  bool optimal = true;
  long feasible_groups = 0;
};

// Exact free-floating solution of one batch: feasible groups are enumerated
// bottom-up (a group is kept only if all its sub-groups are feasible), then
// an exact set partitioning picks the cheapest cover. Ties prefer fewer
// groups, then lexicographically smaller request id lists. Throws
// std::length_error when the batch exceeds max_batch_size.
BatchResult SolveBatchExact(const std::vector<Request>& requests,
                            const std::vector<int>& batch,
                            const TravelMatrix& travel, int capacity,
                            const BatchOptions& options = {});

struct VehicleRoute {
  Vehicle vehicle;
  RoutePlan plan;

  bool operator==(const VehicleRoute&) const = default;
};

struct DarpSolution {
  std::vector<VehicleRoute> routes;
  // Driving time of all routes, including the leg from each vehicle's start.
  Cost objective = 0;
  // Pickup time minus t_r, per request index.
  std::vector<Tick> delays;
  std::string method;
  double comp_time_ms = 0.0;

  bool operator==(const DarpSolution&) const = default;
};

// Greedy baseline: requests in order of t_r are inserted at the cheapest
// feasible (pickup, dropoff) position pair over all vehicles, including
// unused ones. Requires an explicit fleet. Throws std::runtime_error when a
// request fits nowhere.
DarpSolution InsertionHeuristic(const DarpInstance& instance);

// Chaining plans: first and last stop give origin and destination; the delay
// budget is the largest uniform shift that keeps every stop in its window.
std::vector<Plan> PlansToChaining(const std::vector<RoutePlan>& plans,
                                  const std::vector<Request>& requests,
                                  const TravelMatrix& travel);

struct ProposedOptions {
  Tick batch_len = 60;
  CostPolicy policy = policy::TravelCost{};
  BatchOptions batch;
  int threads = 1;
};

// Splits demand into batches of batch_len ticks (a request on a boundary
// goes to the later batch), solves each batch exactly without vehicle
// positions, and chains the resulting plans optimally onto the fleet.
// Throws std::runtime_error if the fleet cannot cover all plans.
DarpSolution RunProposed(const DarpInstance& instance,
                         const ProposedOptions& options);

// Route cost: travel from the vehicle's start to the first stop plus the
// driving time between stops.
Cost RouteCost(const VehicleRoute& route, const TravelMatrix& travel);

// Independent feasibility check of a solution against the raw instance.
// Returns one message per violated condition.
std::vector<std::string> ValidateSolution(const DarpInstance& instance,
                                          const DarpSolution& solution);

struct Histogram {
  // (bucket lower edge, mass), ascending.
  std::vector<std::pair<Tick, Tick>> buckets;
  Tick total() const;

  bool operator==(const Histogram&) const = default;
};

struct Metrics {
  Cost total_cost = 0;
  int used_vehicles = 0;
  // Vehicle-time spent at each occupancy 0..capacity.
  Histogram occupancy;
  // Number of requests per delay bucket.
  Histogram delay;
};

// Throws std::invalid_argument if the solution fails validation.
Metrics EvaluateMetrics(const DarpSolution& solution, const DarpInstance& instance,
                        Tick delay_bucket = 60);

}  // namespace chaining::darp

#endif  // CHAINING_DARP_H_
