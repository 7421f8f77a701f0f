#include "chaining/darp.h"

#include <algorithm>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "chaining/chainsolve.h"

namespace chaining::darp {
namespace {

constexpr Cost kNoCost = std::numeric_limits<Cost>::max();

std::string Id(const Request& r) { return "request " + std::to_string(r.id); }

// Assigns earliest feasible times to `stops` in order. The first stop is
// reached from `start` (if any) no earlier than `ready`. Returns the driving
// cost including the leg from `start`, or nullopt on a window or capacity
// violation.
std::optional<Cost> Schedule(std::vector<Stop>& stops,
                             const std::vector<Request>& requests,
                             const TravelMatrix& travel, int capacity,
                             std::optional<LocationId> start, Tick ready) {
  Cost cost = 0;
  int onboard = 0;
  Tick time = ready;
  std::optional<LocationId> at = start;
  for (Stop& stop : stops) {
    const Request& r = requests[stop.request];
    const Window w = RequestWindow(r, travel);
    const Tick leg = at ? travel.at(*at, stop.location) : 0;
    cost += leg;
    time += leg;
    if (stop.kind == StopKind::kPickup) {
      time = std::max(time, w.earliest_pickup);
      if (time > w.latest_pickup) return std::nullopt;
      if (++onboard > capacity) return std::nullopt;
    } else {
      if (time > w.latest_dropoff) return std::nullopt;
      --onboard;
    }
    stop.time = time;
    at = stop.location;
  }
  return cost;
}

// Depth-first enumeration of pickup/dropoff interleavings.
class GroupSearch {
 public:
  GroupSearch(const std::vector<Request>& requests, const std::vector<int>& group,
              const TravelMatrix& travel, int capacity, Tick anchor)
      : requests_(requests),
        group_(group),
        travel_(travel),
        capacity_(capacity),
        anchor_(anchor),
        state_(group.size(), 0) {}

  std::optional<RoutePlan> Run() {
    Dfs(std::nullopt, anchor_, 0, 0);
    return best_;
  }

 private:
  // state_: 0 = waiting, 1 = on board, 2 = delivered.
  void Dfs(std::optional<LocationId> at, Tick time, Cost cost, int onboard) {
    if (best_ && cost > best_->cost) return;
    if (path_.size() == 2 * group_.size()) {
      const Tick finish = path_.empty() ? 0 : path_.back().time;
      if (!best_ || cost < best_->cost ||
          (cost == best_->cost && finish < best_finish_)) {
        best_ = RoutePlan{path_, cost};
        best_finish_ = finish;
      }
      return;
    }
    for (std::size_t i = 0; i < group_.size(); ++i) {
      if (state_[i] == 2) continue;
      const Request& r = requests_[group_[i]];
      const Window w = RequestWindow(r, travel_);
      const bool pickup = state_[i] == 0;
      if (pickup && onboard == capacity_) continue;
      const LocationId loc = pickup ? r.origin : r.destination;
      const Tick leg = at ? travel_.at(*at, loc) : 0;
      Tick t = time + leg;
      if (pickup) {
        t = std::max(t, w.earliest_pickup);
        if (t > w.latest_pickup) continue;
      } else if (t > w.latest_dropoff) {
        continue;
      }
      path_.push_back(Stop{group_[i], pickup ? StopKind::kPickup : StopKind::kDropoff,
                           loc, t});
      state_[i] += 1;
      Dfs(loc, t, cost + leg, onboard + (pickup ? 1 : -1));
      state_[i] -= 1;
      path_.pop_back();
    }
  }

  const std::vector<Request>& requests_;
  const std::vector<int>& group_;
  const TravelMatrix& travel_;
  int capacity_;
  Tick anchor_;
  std::vector<int> state_;
  std::vector<Stop> path_;
  std::optional<RoutePlan> best_;
  Tick best_finish_ = 0;
};

struct Group {
  std::uint64_t mask = 0;
  RoutePlan plan;
  std::vector<int> ids;  // sorted request ids
};

// Exact set partitioning by depth-first search: each partition is generated
// once by always covering the lowest uncovered request next.
class Partitioner {
 public:
  Partitioner(const std::vector<Group>& groups, int size,
              std::optional<std::chrono::milliseconds> limit)
      : groups_(groups), size_(size), by_lowest_(size), share_(size, 1e300) {
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const int lowest = __builtin_ctzll(groups[g].mask);
      by_lowest_[lowest].push_back(static_cast<int>(g));
      const double share = static_cast<double>(groups[g].plan.cost) /
                           __builtin_popcountll(groups[g].mask);
      for (int i = 0; i < size; ++i) {
        if (groups[g].mask >> i & 1) share_[i] = std::min(share_[i], share);
      }
    }
    if (limit) deadline_ = std::chrono::steady_clock::now() + *limit;
  }

  void Seed(const std::vector<int>& chosen) {
    Cost cost = 0;
    for (int g : chosen) cost += groups_[g].plan.cost;
    best_ = chosen;
    best_cost_ = cost;
  }

  void Run() { Dfs(0, 0); }
  const std::vector<int>& best() const { return best_; }
  bool timed_out() const { return timed_out_; }

 private:
  void Dfs(std::uint64_t covered, Cost cost) {
    if (timed_out_) return;
    if (deadline_ && (++visits_ & 1023) == 0 &&
        std::chrono::steady_clock::now() > *deadline_) {
      timed_out_ = true;
      return;
    }
    const std::uint64_t all = size_ == 64 ? ~0ULL : (1ULL << size_) - 1;
    if (covered == all) {
      if (Better(cost)) {
        best_ = chosen_;
        best_cost_ = cost;
      }
      return;
    }
    double bound = static_cast<double>(cost);
    for (int i = 0; i < size_; ++i) {
      if (!(covered >> i & 1)) bound += share_[i];
    }
    if (bound > static_cast<double>(best_cost_) + 1e-9) return;
    const int lowest = __builtin_ctzll(~covered);
    for (int g : by_lowest_[lowest]) {
      if (groups_[g].mask & covered) continue;
      chosen_.push_back(g);
      Dfs(covered | groups_[g].mask, cost + groups_[g].plan.cost);
      chosen_.pop_back();
    }
  }

  std::vector<std::vector<int>> Key(const std::vector<int>& chosen) const {
    std::vector<std::vector<int>> key;
    for (int g : chosen) key.push_back(groups_[g].ids);
    std::sort(key.begin(), key.end());
    return key;
  }

  bool Better(Cost cost) const {
    if (cost != best_cost_) return cost < best_cost_;
    if (chosen_.size() != best_.size()) return chosen_.size() < best_.size();
    return Key(chosen_) < Key(best_);
  }

  const std::vector<Group>& groups_;
  int size_;
  std::vector<std::vector<int>> by_lowest_;
  std::vector<double> share_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  std::vector<int> chosen_;
  std::vector<int> best_;
  Cost best_cost_ = kNoCost;
  long visits_ = 0;
  bool timed_out_ = false;
};

}  // namespace

DarpInstance::DarpInstance(std::vector<Request> requests, TravelMatrix travel,
                           int capacity, Fleet fleet)
    : requests_(std::move(requests)),
      travel_(std::move(travel)),
      capacity_(capacity),
      fleet_(std::move(fleet)) {
  if (capacity_ < 1) throw std::invalid_argument("capacity must be at least 1");
  std::set<int> ids;
  for (const Request& r : requests_) {
    if (!ids.insert(r.id).second) {
      throw std::invalid_argument("duplicate request id " + std::to_string(r.id));
    }
    if (!travel_.contains(r.origin) || !travel_.contains(r.destination)) {
      throw std::invalid_argument(Id(r) + " references an unknown location");
    }
    if (r.t_r < 0) throw std::invalid_argument(Id(r) + " has negative t_r");
    if (r.max_delay < 0) throw std::invalid_argument(Id(r) + " has negative max_delay");
  }
  if (const auto* vehicles = std::get_if<std::vector<Vehicle>>(&fleet_)) {
    std::set<int> vids;
    for (const Vehicle& v : *vehicles) {
      if (!vids.insert(v.id).second) {
        throw std::invalid_argument("duplicate vehicle id " + std::to_string(v.id));
      }
      if (!travel_.contains(v.start)) {
        throw std::invalid_argument("vehicle " + std::to_string(v.id) +
                                    " references an unknown location");
      }
      if (v.t_st < 0) {
        throw std::invalid_argument("vehicle " + std::to_string(v.id) +
                                    " has negative t_st");
      }
    }
  }
}

int DarpInstance::request_index(int request_id) const {
  for (std::size_t i = 0; i < requests_.size(); ++i) {
    if (requests_[i].id == request_id) return static_cast<int>(i);
  }
  throw std::out_of_range("unknown request id " + std::to_string(request_id));
}

Window RequestWindow(const Request& request, const TravelMatrix& travel) {
  return Window{request.t_r, request.t_r + request.max_delay,
                request.t_r + travel.at(request.origin, request.destination) +
                    request.max_delay};
}

std::vector<int> OnboardProfile(const RoutePlan& plan) {
  std::vector<int> out;
  int onboard = 0;
  for (const Stop& s : plan.stops) {
    onboard += s.kind == StopKind::kPickup ? 1 : -1;
    out.push_back(onboard);
  }
  return out;
}

Tick Duration(const RoutePlan& plan) {
  if (plan.stops.empty()) return 0;
  return plan.stops.back().time - plan.stops.front().time;
}

std::optional<RoutePlan> OptimalPlanForGroup(const std::vector<Request>& requests,
                                             const std::vector<int>& group,
                                             const TravelMatrix& travel,
                                             int capacity, Tick anchor) {
  if (static_cast<int>(group.size()) > capacity) {
    throw std::invalid_argument("group of " + std::to_string(group.size()) +
                                " requests exceeds capacity " +
                                std::to_string(capacity));
  }
  return GroupSearch(requests, group, travel, capacity, anchor).Run();
}

BatchResult SolveBatchExact(const std::vector<Request>& requests,
                            const std::vector<int>& batch,
                            const TravelMatrix& travel, int capacity,
                            const BatchOptions& options) {
  const int size = static_cast<int>(batch.size());
  if (size > options.max_batch_size || size > 64) {
    throw std::length_error("batch of " + std::to_string(size) +
                            " requests exceeds the exact solver limit of " +
                            std::to_string(std::min(options.max_batch_size, 64)) +
                            "; use a shorter batch length");
  }
  BatchResult result;
  if (size == 0) return result;

  std::vector<Group> groups;
  std::map<std::uint64_t, int> index;
  auto make_group = [&](std::uint64_t mask) -> bool {
    std::vector<int> members;
    Group g;
    g.mask = mask;
    for (int i = 0; i < size; ++i) {
      if (mask >> i & 1) {
        members.push_back(batch[i]);
        g.ids.push_back(requests[batch[i]].id);
      }
    }
    auto plan = OptimalPlanForGroup(requests, members, travel, capacity);
    if (!plan) return false;
    std::sort(g.ids.begin(), g.ids.end());
    g.plan = std::move(*plan);
    index[mask] = static_cast<int>(groups.size());
    groups.push_back(std::move(g));
    return true;
  };

  std::vector<std::uint64_t> level;
  for (int i = 0; i < size; ++i) {
    if (make_group(1ULL << i)) level.push_back(1ULL << i);
  }
  for (int k = 2; k <= std::min(size, capacity); ++k) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t mask : level) {
      const int top = 63 - __builtin_clzll(mask);
      for (int j = top + 1; j < size; ++j) {
        const std::uint64_t candidate = mask | (1ULL << j);
        bool subsets_ok = true;
        for (int i = 0; i < size && subsets_ok; ++i) {
          if ((candidate >> i & 1) && i != j) {
            subsets_ok = index.count(candidate & ~(1ULL << i)) > 0;
          }
        }
        if (subsets_ok && make_group(candidate)) next.push_back(candidate);
      }
    }
    level = std::move(next);
  }
  result.feasible_groups = static_cast<long>(groups.size());

  Partitioner partitioner(groups, size, options.time_limit);
  std::vector<int> singletons;
  for (int i = 0; i < size; ++i) {
    auto it = index.find(1ULL << i);
    if (it == index.end()) {
      throw std::logic_error(Id(requests[batch[i]]) + " cannot be served alone");
    }
    singletons.push_back(it->second);
  }
  partitioner.Seed(singletons);
  partitioner.Run();
  result.optimal = !partitioner.timed_out();
  for (int g : partitioner.best()) result.plans.push_back(groups[g].plan);
  std::sort(result.plans.begin(), result.plans.end(),
            [&](const RoutePlan& a, const RoutePlan& b) {
              return std::pair(a.stops.front().time, requests[a.stops.front().request].id) <
                     std::pair(b.stops.front().time, requests[b.stops.front().request].id);
            });
  return result;
}

Cost RouteCost(const VehicleRoute& route, const TravelMatrix& travel) {
  if (route.plan.stops.empty()) return 0;
  Cost cost = travel.at(route.vehicle.start, route.plan.stops.front().location);
  for (std::size_t i = 1; i < route.plan.stops.size(); ++i) {
    cost += travel.at(route.plan.stops[i - 1].location, route.plan.stops[i].location);
  }
  return cost;
}

namespace {

void FillDelays(DarpSolution& solution, const std::vector<Request>& requests) {
  solution.delays.assign(requests.size(), 0);
  solution.objective = 0;
  for (const VehicleRoute& route : solution.routes) {
    for (const Stop& s : route.plan.stops) {
      if (s.kind == StopKind::kPickup) {
        solution.delays[s.request] = s.time - requests[s.request].t_r;
      }
    }
  }
}

}  // namespace

DarpSolution InsertionHeuristic(const DarpInstance& instance) {
  const auto* fleet = std::get_if<std::vector<Vehicle>>(&instance.fleet());
  if (fleet == nullptr) {
    throw std::invalid_argument("the insertion heuristic needs an explicit fleet");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto& requests = instance.requests();
  const auto& travel = instance.travel();
  std::vector<int> order(requests.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::pair(requests[a].t_r, requests[a].id) <
           std::pair(requests[b].t_r, requests[b].id);
  });

  std::vector<VehicleRoute> routes;
  for (const Vehicle& v : *fleet) routes.push_back({v, {}});
  std::vector<Cost> route_cost(routes.size(), 0);

  for (int r : order) {
    const Request& req = requests[r];
    Cost best_delta = kNoCost;
    int best_vehicle = -1;
    std::vector<Stop> best_stops;
    Cost best_cost = 0;
    for (std::size_t v = 0; v < routes.size(); ++v) {
      const auto& current = routes[v].plan.stops;
      const std::size_t m = current.size();
      for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t j = i + 1; j <= m + 1; ++j) {
          std::vector<Stop> stops = current;
          stops.insert(stops.begin() + i, Stop{r, StopKind::kPickup, req.origin, 0});
          stops.insert(stops.begin() + j, Stop{r, StopKind::kDropoff, req.destination, 0});
          auto cost = Schedule(stops, requests, travel, instance.capacity(),
                               routes[v].vehicle.start, routes[v].vehicle.t_st);
          if (!cost) continue;
          const Cost delta = *cost - route_cost[v];
          if (delta < best_delta) {
            best_delta = delta;
            best_vehicle = static_cast<int>(v);
            best_stops = std::move(stops);
            best_cost = *cost;
          }
        }
      }
    }
    if (best_vehicle < 0) {
      throw std::runtime_error("no vehicle can serve " + Id(req) +
                               "; the fleet is exhausted");
    }
    const Cost inner = best_cost - travel.at(routes[best_vehicle].vehicle.start,
                                             best_stops.front().location);
    routes[best_vehicle].plan = RoutePlan{std::move(best_stops), inner};
    route_cost[best_vehicle] = best_cost;
  }

  DarpSolution solution;
  solution.method = "ih";
  for (VehicleRoute& route : routes) {
    if (!route.plan.stops.empty()) solution.routes.push_back(std::move(route));
  }
  FillDelays(solution, requests);
  for (const VehicleRoute& route : solution.routes) {
    solution.objective += RouteCost(route, travel);
  }
  solution.comp_time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  return solution;
}

std::vector<Plan> PlansToChaining(const std::vector<RoutePlan>& plans,
                                  const std::vector<Request>& requests,
                                  const TravelMatrix& travel) {
  std::vector<Plan> out;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const RoutePlan& plan = plans[i];
    if (plan.stops.empty()) throw std::invalid_argument("empty route plan");
    Plan p;
    p.id = static_cast<int>(i);
    p.origin = plan.stops.front().location;
    p.destination = plan.stops.back().location;
    p.t_or = plan.stops.front().time;
    p.t_de = plan.stops.back().time;
    p.d_max = std::numeric_limits<Tick>::max();
    for (const Stop& s : plan.stops) {
      const Window w = RequestWindow(requests[s.request], travel);
      const Tick latest =
          s.kind == StopKind::kPickup ? w.latest_pickup : w.latest_dropoff;
      p.d_max = std::min(p.d_max, latest - s.time);
    }
    out.push_back(p);
  }
  return out;
}

DarpSolution RunProposed(const DarpInstance& instance,
                         const ProposedOptions& options) {
  if (options.batch_len <= 0) throw std::invalid_argument("batch length must be positive");
  const auto start = std::chrono::steady_clock::now();
  const auto& requests = instance.requests();
  const auto& travel = instance.travel();

  std::map<Tick, std::vector<int>> batches;
  if (!requests.empty()) {
    Tick first = requests.front().t_r;
    for (const Request& r : requests) first = std::min(first, r.t_r);
    std::vector<int> order(requests.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::pair(requests[a].t_r, requests[a].id) <
             std::pair(requests[b].t_r, requests[b].id);
    });
    for (int r : order) {
      batches[(requests[r].t_r - first) / options.batch_len].push_back(r);
    }
  }

  std::vector<BatchResult> solved(batches.size());
  {
    std::vector<const std::vector<int>*> work;
    for (const auto& [key, members] : batches) work.push_back(&members);
    auto solve = [&](std::size_t b) {
      solved[b] = SolveBatchExact(requests, *work[b], travel, instance.capacity(),
                                  options.batch);
    };
    const std::size_t threads =
        static_cast<std::size_t>(std::max(1, options.threads));
    if (threads == 1 || work.size() < 2) {
      for (std::size_t b = 0; b < work.size(); ++b) solve(b);
    } else {
      for (std::size_t begin = 0; begin < work.size(); begin += threads) {
        std::vector<std::future<void>> running;
        for (std::size_t b = begin; b < std::min(work.size(), begin + threads); ++b) {
          running.push_back(std::async(std::launch::async, solve, b));
        }
        for (auto& f : running) f.get();
      }
    }
  }

  std::vector<RoutePlan> plans;
  bool all_optimal = true;
  for (BatchResult& b : solved) {
    all_optimal = all_optimal && b.optimal;
    for (RoutePlan& p : b.plans) plans.push_back(std::move(p));
  }
  const std::vector<Plan> chain_plans = PlansToChaining(plans, requests, travel);

  std::vector<Vehicle> vehicles;
  if (const auto* fleet = std::get_if<std::vector<Vehicle>>(&instance.fleet())) {
    vehicles = *fleet;
  } else {
    for (const Plan& p : chain_plans) vehicles.push_back(Vehicle{p.id, p.origin, 0});
  }
  const ChainingInstance chaining(chain_plans, vehicles, travel, options.policy);
  const ChainResult chained = SolveChaining(chaining);
  if (const auto* bad = std::get_if<ChainingInfeasible>(&chained)) {
    throw std::runtime_error("fleet of " + std::to_string(vehicles.size()) +
                             " vehicles cannot serve all " +
                             std::to_string(chain_plans.size()) +
                             " batch plans: " + bad->reason);
  }

  DarpSolution solution;
  solution.method = options.batch.time_limit ? "proposed-lim" : "proposed";
  if (!all_optimal) solution.method += "-incumbent";
  for (const Chain& chain : std::get<ChainSolution>(chained).chains) {
    VehicleRoute route{vehicles[chain.vehicle], {}};
    for (const VariantRef& v : chain.plans) {
      for (Stop s : plans[v.plan].stops) {
        s.time += v.delay;
        route.plan.stops.push_back(s);
      }
    }
    for (std::size_t i = 1; i < route.plan.stops.size(); ++i) {
      route.plan.cost += travel.at(route.plan.stops[i - 1].location,
                                   route.plan.stops[i].location);
    }
    solution.routes.push_back(std::move(route));
  }
  FillDelays(solution, requests);
  for (const VehicleRoute& route : solution.routes) {
    solution.objective += RouteCost(route, travel);
  }
  solution.comp_time_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  return solution;
}

std::vector<std::string> ValidateSolution(const DarpInstance& instance,
                                          const DarpSolution& solution) {
  std::vector<std::string> problems;
  const auto& requests = instance.requests();
  const auto& travel = instance.travel();
  std::vector<int> pickups(requests.size(), 0);
  std::vector<int> dropoffs(requests.size(), 0);
  std::vector<Tick> pickup_time(requests.size(), -1);
  std::set<int> vehicle_ids;
  const auto* fleet = std::get_if<std::vector<Vehicle>>(&instance.fleet());
  Cost total = 0;

  for (std::size_t ri = 0; ri < solution.routes.size(); ++ri) {
    const VehicleRoute& route = solution.routes[ri];
    const std::string where = "route " + std::to_string(ri);
    if (!vehicle_ids.insert(route.vehicle.id).second) {
      problems.push_back(where + ": vehicle " + std::to_string(route.vehicle.id) +
                         " used twice");
    }
    if (fleet && std::find(fleet->begin(), fleet->end(), route.vehicle) == fleet->end()) {
      problems.push_back(where + ": vehicle " + std::to_string(route.vehicle.id) +
                         " is not part of the fleet");
    }
    if (!travel.contains(route.vehicle.start)) {
      problems.push_back(where + ": vehicle start location is unknown");
      continue;
    }
    LocationId at = route.vehicle.start;
    Tick time = route.vehicle.t_st;
    int onboard = 0;
    std::set<int> carrying;
    Cost driven = 0;
    for (std::size_t si = 0; si < route.plan.stops.size(); ++si) {
      const Stop& s = route.plan.stops[si];
      const std::string stop = where + " stop " + std::to_string(si);
      if (s.request < 0 || s.request >= static_cast<int>(requests.size())) {
        problems.push_back(stop + ": unknown request index");
        continue;
      }
      const Request& r = requests[s.request];
      const Tick leg = travel.at(at, s.location);
      driven += leg;
      if (time + leg > s.time) {
        problems.push_back(stop + ": reached at " + std::to_string(time + leg) +
                           " but scheduled at " + std::to_string(s.time));
      }
      const Tick window_start = r.t_r;
      if (s.kind == StopKind::kPickup) {
        if (s.location != r.origin) problems.push_back(stop + ": wrong pickup location");
        if (s.time < window_start || s.time > r.t_r + r.max_delay) {
          problems.push_back(stop + ": pickup of " + Id(r) + " outside its window");
        }
        if (++onboard > instance.capacity()) {
          problems.push_back(stop + ": capacity exceeded");
        }
        carrying.insert(s.request);
        ++pickups[s.request];
        pickup_time[s.request] = s.time;
      } else {
        if (s.location != r.destination) {
          problems.push_back(stop + ": wrong dropoff location");
        }
        if (s.time > r.t_r + travel.at(r.origin, r.destination) + r.max_delay) {
          problems.push_back(stop + ": dropoff of " + Id(r) + " after its deadline");
        }
        if (carrying.erase(s.request) == 0) {
          problems.push_back(stop + ": dropoff of " + Id(r) + " before its pickup");
        }
        --onboard;
        ++dropoffs[s.request];
      }
      at = s.location;
      time = s.time;
    }
    if (!carrying.empty()) problems.push_back(where + ": passengers left on board");
    total += driven;
  }
  for (std::size_t r = 0; r < requests.size(); ++r) {
    if (pickups[r] != 1 || dropoffs[r] != 1) {
      problems.push_back(Id(requests[r]) + " served " + std::to_string(pickups[r]) +
                         " times");
    }
  }
  if (total != solution.objective) {
    problems.push_back("objective " + std::to_string(solution.objective) +
                       " differs from recomputed " + std::to_string(total));
  }
  if (solution.delays.size() != requests.size()) {
    problems.push_back("delay list has the wrong length");
  } else {
    for (std::size_t r = 0; r < requests.size(); ++r) {
      if (pickup_time[r] >= 0 && solution.delays[r] != pickup_time[r] - requests[r].t_r) {
        problems.push_back(Id(requests[r]) + " has a misreported delay");
      }
    }
  }
  return problems;
}

Tick Histogram::total() const {
  Tick sum = 0;
  for (const auto& [bucket, mass] : buckets) sum += mass;
  return sum;
}

Metrics EvaluateMetrics(const DarpSolution& solution, const DarpInstance& instance,
                        Tick delay_bucket) {
  if (delay_bucket <= 0) throw std::invalid_argument("delay bucket must be positive");
  const auto problems = ValidateSolution(instance, solution);
  if (!problems.empty()) {
    throw std::invalid_argument("solution is infeasible: " + problems.front());
  }
  const auto& travel = instance.travel();
  Metrics m;
  std::vector<Tick> occupancy(instance.capacity() + 1, 0);
  for (const VehicleRoute& route : solution.routes) {
    if (route.plan.stops.empty()) continue;
    ++m.used_vehicles;
    m.total_cost += RouteCost(route, travel);
    const Stop& first = route.plan.stops.front();
    const Tick depart = std::max(route.vehicle.t_st,
                                 first.time - travel.at(route.vehicle.start, first.location));
    occupancy[0] += first.time - depart;
    const std::vector<int> onboard = OnboardProfile(route.plan);
    for (std::size_t i = 0; i + 1 < route.plan.stops.size(); ++i) {
      occupancy[onboard[i]] += route.plan.stops[i + 1].time - route.plan.stops[i].time;
    }
  }
  for (int k = 0; k <= instance.capacity(); ++k) {
    m.occupancy.buckets.emplace_back(k, occupancy[k]);
  }
  std::map<Tick, Tick> delays;
  for (Tick d : solution.delays) delays[(d / delay_bucket) * delay_bucket] += 1;
  for (const auto& [bucket, mass] : delays) m.delay.buckets.emplace_back(bucket, mass);
  return m;
}

}  // namespace chaining::darp
