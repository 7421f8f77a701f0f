#include "chaining/chainsolve.h"

#include <algorithm>
#include <chrono>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace chaining {
namespace {

struct BranchNode {
  std::vector<std::pair<int, Tick>> forced;
  std::vector<int> active;
  std::vector<Cost> potentials;
  Cost bound = 0;
  int depth = 0;
  long sequence = 0;
};

// Best bound first, deeper first on ties, then creation order.
struct NodeOrder {
  bool operator()(const BranchNode& a, const BranchNode& b) const {
    return std::tie(a.bound, b.depth, a.sequence) >
           std::tie(b.bound, a.depth, b.sequence);
  }
};

// Variant slot through which a plan is entered and left in a flow; -1 when
// the flow uses no variant edge on that side.
struct PlanSides {
  int arrival = -1;
  int departure = -1;
};

class BranchAndBound {
 public:
  BranchAndBound(const ChainingInstance& instance, const FlowNetwork& network,
                 const SolveOptions& options)
      : instance_(instance),
        network_(network),
        options_(options),
        solver_(network),
        closed_(network.edges().size(), 0) {}

  ChainResult Run(SolveStats& stats) {
    if (!network_.has_any_variants()) {
      McfResult root = SolveMcf(network_);
      stats.relaxations = 1;
      if (auto* bad = std::get_if<FlowInfeasible>(&root)) {
        return ChainingInfeasible{Describe(*bad)};
      }
      const auto& flow = std::get<FlowAssignment>(root);
      ChainSolution solution;
      solution.chains = ExtractChains(instance_, network_, flow.flow);
      solution.objective = flow.total_cost;
      return solution;
    }

    McfResult root = SolveMcf(network_);
    stats.relaxations = 1;
    if (auto* bad = std::get_if<FlowInfeasible>(&root)) {
      return ChainingInfeasible{Describe(*bad)};
    }
    const auto& root_flow = std::get<FlowAssignment>(root);
    std::priority_queue<BranchNode, std::vector<BranchNode>, NodeOrder> open;
    BranchNode first;
    for (std::size_t e = 0; e < root_flow.flow.size(); ++e) {
      if (root_flow.flow[e] > 0) first.active.push_back(static_cast<int>(e));
    }
    first.potentials = root_flow.potentials;
    first.bound = root_flow.total_cost;
    open.push(std::move(first));

    std::optional<Cost> incumbent;
    std::vector<int> best_active;
    long sequence = 1;
    while (!open.empty()) {
      BranchNode node = open.top();
      open.pop();
      if (incumbent && node.bound >= *incumbent) break;
      ++stats.branch_nodes;

      const int plan = PickBranchPlan(node.active);
      if (plan < 0) {
        incumbent = node.bound;
        best_active = node.active;
        continue;
      }
      const std::size_t slots = network_.variant_delays(plan).size();
      for (std::size_t slot = 0; slot < slots; ++slot) {
        BranchNode child;
        child.forced = node.forced;
        child.forced.emplace_back(plan, network_.variant_delays(plan)[slot]);
        child.depth = node.depth + 1;
        child.sequence = sequence++;
        SetClosed(child.forced);
        ++stats.relaxations;
        const bool ok = options_.warm_start
                            ? solver_.SolveWarm(closed_, node.active, node.potentials)
                            : solver_.SolveCold(closed_);
        if (!ok) continue;
        child.bound = solver_.total_cost();
        if (incumbent && child.bound >= *incumbent) continue;
        child.active = solver_.active_edges();
        child.potentials = solver_.potentials();
        open.push(std::move(child));
      }
    }
    if (!incumbent) {
      return ChainingInfeasible{
          "no assignment keeps every plan on a single variant"};
    }
    std::vector<int> flow(network_.edges().size(), 0);
    for (int e : best_active) flow[e] = 1;
    ChainSolution solution;
    solution.chains = ExtractChains(instance_, network_, flow);
    solution.objective = *incumbent;
    return solution;
  }

 private:
  std::string Describe(const FlowInfeasible& bad) const {
    std::string out = bad.reason;
    if (bad.plan >= 0) {
      out += " (plan " + std::to_string(instance_.plans()[bad.plan].id) + ")";
    }
    return out;
  }

  void SetClosed(const std::vector<std::pair<int, Tick>>& forced) {
    std::fill(closed_.begin(), closed_.end(), 0);
    for (const auto& [plan, delay] : forced) {
      const auto& delays = network_.variant_delays(plan);
      for (std::size_t s = 0; s < delays.size(); ++s) {
        if (delays[s] != delay) closed_[network_.right_variant_edges(plan)[s]] = 1;
        if (ordered_ ? delays[s] < delay : delays[s] != delay) {
          closed_[network_.left_variant_edges(plan)[s]] = 1;
        }
      }
    }
  }

  // Plan whose entering and leaving variants differ (or, under ordered
  // consistency, whose leaving variant is the earlier one), choosing the largest
  // cost of connections touching it; ties go to the lowest plan id. -1 when
  // the flow is variant-consistent.
  int PickBranchPlan(const std::vector<int>& active) const {
    const int n = network_.num_plans();
    std::vector<PlanSides> sides(n);
    std::vector<Cost> touching(n, 0);
    const auto& edges = network_.edges();
    const auto& nodes = network_.nodes();
    for (int e : active) {
      const FlowEdge& edge = edges[e];
      if (edge.connection >= 0) {
        const Connection& c = network_.connections()[edge.connection];
        touching[c.target.plan] += edge.cost;
        if (const auto* from = std::get_if<VariantRef>(&c.origin)) {
          touching[from->plan] += edge.cost;
        }
        continue;
      }
      const FlowNode& head = nodes[edge.head];
      const FlowNode& tail = nodes[edge.tail];
      if (head.kind == NodeKind::kLeftVariant) {
        sides[head.plan].departure = SlotOf(head.plan, head.delay);
      } else if (tail.kind == NodeKind::kRightVariant) {
        sides[tail.plan].arrival = SlotOf(tail.plan, tail.delay);
      }
    }
    int best = -1;
    for (int p = 0; p < n; ++p) {
      const PlanSides& s = sides[p];
      if (s.arrival < 0 || s.departure < 0) continue;
      if (ordered_ ? s.arrival <= s.departure : s.arrival == s.departure) continue;
      if (best < 0 || touching[p] > touching[best] ||
          (touching[p] == touching[best] &&
           instance_.plans()[p].id < instance_.plans()[best].id)) {
        best = p;
      }
    }
    return best;
  }

  int SlotOf(int plan, Tick delay) const {
    const auto& delays = network_.variant_delays(plan);
    return static_cast<int>(std::find(delays.begin(), delays.end(), delay) -
                            delays.begin());
  }

  const ChainingInstance& instance_;
  const FlowNetwork& network_;
  const SolveOptions& options_;
  const bool ordered_ = network_.consistency() == DelayConsistency::kOrdered;
  McfSolver solver_;
  std::vector<char> closed_;
};

DelayConsistency Consistency(const ChainingInstance& instance,
                             const SolveOptions& options) {
  if (options.ordered_delays && IsDelayInvariant(instance.policy()) &&
      options.routing == VariantRouting::kZeroDelayExtended) {
    return DelayConsistency::kOrdered;
  }
  return DelayConsistency::kEqual;
}

}  // namespace

ChainResult SolveChaining(const ChainingInstance& instance,
                          const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const bool minimal =
      options.variants == VariantSet::kMinimal ||
      (options.variants == VariantSet::kAuto && IsDelayInvariant(instance.policy()));
  const GenerationResult generation =
      minimal ? Generate(instance, QueueOrder::kFifo,
                         Consistency(instance, options) == DelayConsistency::kOrdered
                             ? OriginVariants::kLatest
                             : OriginVariants::kAll)
              : GenerateAllVariants(instance, options.max_variant_ticks);
  ChainResult result = SolveChaining(instance, generation, options);
  if (auto* solution = std::get_if<ChainSolution>(&result)) {
    solution->stats.wall_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
  }
  return result;
}

ChainResult SolveChaining(const ChainingInstance& instance,
                          const GenerationResult& generation,
                          const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const FlowNetwork network = BuildNetwork(instance, generation, options.routing,
                                           Consistency(instance, options));
  SolveStats stats;
  stats.variants = static_cast<long>(generation.variants.size());
  stats.connections = static_cast<long>(network.connections().size());
  BranchAndBound search(instance, network, options);
  ChainResult result = search.Run(stats);
  if (auto* solution = std::get_if<ChainSolution>(&result)) {
    stats.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    solution->stats = stats;
  }
  return result;
}

std::vector<Chain> ExtractChains(const ChainingInstance& instance,
                                 const FlowNetwork& network,
                                 const std::vector<int>& flow) {
  const int n = instance.num_plans();
  std::vector<int> from_vehicle(instance.num_vehicles(), -1);
  std::vector<int> from_plan(n, -1);
  const auto& edges = network.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (flow[e] == 0 || edges[e].connection < 0) continue;
    const Connection& c = network.connections()[edges[e].connection];
    int& slot = std::holds_alternative<VehicleRef>(c.origin)
                    ? from_vehicle[std::get<VehicleRef>(c.origin).vehicle]
                    : from_plan[std::get<VariantRef>(c.origin).plan];
    if (slot >= 0) throw std::logic_error("two active connections leave one node");
    slot = edges[e].connection;
  }

  const bool ordered = network.consistency() == DelayConsistency::kOrdered;
  std::vector<Chain> chains;
  std::vector<char> seen(n, 0);
  int covered = 0;
  for (int v = 0; v < instance.num_vehicles(); ++v) {
    if (from_vehicle[v] < 0) continue;
    Chain chain;
    chain.vehicle = v;
    Endpoint previous = VehicleRef{v};
    int next = from_vehicle[v];
    while (next >= 0) {
      const Connection& c = network.connections()[next];
      if (seen[c.target.plan]) {
        throw std::logic_error("flow revisits plan " +
                               std::to_string(instance.plans()[c.target.plan].id));
      }
      seen[c.target.plan] = 1;
      ++covered;
      next = from_plan[c.target.plan];
      VariantRef executed = c.target;
      Cost cost = c.cost;
      if (ordered && next >= 0) {
        // The plan runs at the delay it is left through.
        executed.delay = std::get<VariantRef>(network.connections()[next].origin).delay;
        const std::optional<Cost> recomputed = instance.connection_cost(previous, executed);
        if (!recomputed) throw std::logic_error("ordered link lost its cost");
        cost = *recomputed;
      }
      chain.plans.push_back(executed);
      chain.link_costs.push_back(cost);
      chain.link_waits.push_back(instance.wait_time(previous, executed));
      previous = executed;
    }
    chains.push_back(std::move(chain));
  }
  if (covered != n) {
    throw std::logic_error("flow leaves " + std::to_string(n - covered) +
                           " plans outside vehicle chains");
  }
  return chains;
}

std::string ValidationReport::ToString() const {
  std::ostringstream out;
  for (const Violation& v : violations) {
    out << "chain " << v.chain << " link " << v.link << ": " << v.message << '\n';
  }
  return out.str();
}

ValidationReport ValidateChains(const ChainingInstance& instance,
                                const std::vector<Chain>& chains,
                                std::optional<Cost> claimed_objective) {
  ValidationReport report;
  const auto& plans = instance.plans();
  std::vector<int> served(plans.size(), 0);
  std::vector<char> vehicle_used(instance.num_vehicles(), 0);
  auto flag = [&](int chain, int link, std::string message) {
    report.violations.push_back({chain, link, std::move(message)});
  };
  auto in_budget = [&](const VariantRef& v) {
    return v.delay >= 0 && v.delay <= plans[v.plan].d_max;
  };

  for (int ci = 0; ci < static_cast<int>(chains.size()); ++ci) {
    const Chain& chain = chains[ci];
    if (chain.vehicle < 0 || chain.vehicle >= instance.num_vehicles()) {
      flag(ci, 0, "unknown vehicle index " + std::to_string(chain.vehicle));
      continue;
    }
    const Vehicle& vehicle = instance.vehicles()[chain.vehicle];
    if (vehicle_used[chain.vehicle]) {
      flag(ci, 0, "vehicle " + std::to_string(vehicle.id) + " heads two chains");
    }
    vehicle_used[chain.vehicle] = 1;

    LocationId location = vehicle.start;
    Tick ready = vehicle.t_st;
    std::optional<VariantRef> previous;
    for (int li = 0; li < static_cast<int>(chain.plans.size()); ++li) {
      const VariantRef& v = chain.plans[li];
      const int link = li + 1;
      if (v.plan < 0 || v.plan >= static_cast<int>(plans.size())) {
        flag(ci, link, "unknown plan index " + std::to_string(v.plan));
        previous.reset();
        continue;
      }
      const Plan& plan = plans[v.plan];
      served[v.plan] += 1;
      if (v.delay < 0 || v.delay > plan.d_max) {
        flag(ci, link, "plan " + std::to_string(plan.id) + " delay " +
                           std::to_string(v.delay) + " outside [0, " +
                           std::to_string(plan.d_max) + "]");
      }
      const Tick start = plan.t_or + v.delay;
      const Tick travel = instance.travel().at(location, plan.origin);
      if (previous && previous->plan == v.plan) {
        flag(ci, link, "plan " + std::to_string(plan.id) + " follows itself");
      } else if (ready + travel > start) {
        flag(ci, link, "timing: " + std::to_string(ready) + " + " +
                           std::to_string(travel) + " > " + std::to_string(start) +
                           " for plan " + std::to_string(plan.id));
      } else if (in_budget(v) && (!previous || in_budget(*previous))) {
        const Endpoint origin = previous ? Endpoint{*previous}
                                         : Endpoint{VehicleRef{chain.vehicle}};
        if (!instance.connection_feasible(origin, v)) {
          flag(ci, link, "zero-slack link violates the plan ordering rule");
        } else if (auto cost = instance.connection_cost(origin, v)) {
          report.recomputed_objective += *cost;
          if (li < static_cast<int>(chain.link_costs.size()) &&
              chain.link_costs[li] != *cost) {
            flag(ci, link, "stated cost " + std::to_string(chain.link_costs[li]) +
                               " differs from " + std::to_string(*cost));
          }
        } else {
          flag(ci, link, "link forbidden by the cost policy");
        }
      }
      location = plan.destination;
      ready = plan.t_de + v.delay;
      previous = v;
    }
  }
  for (std::size_t p = 0; p < plans.size(); ++p) {
    if (served[p] != 1) {
      flag(-1, -1, "plan " + std::to_string(plans[p].id) + " served " +
                       std::to_string(served[p]) + " times");
    }
  }
  if (claimed_objective && *claimed_objective != report.recomputed_objective) {
    flag(-1, -1, "objective " + std::to_string(*claimed_objective) +
                     " differs from recomputed " +
                     std::to_string(report.recomputed_objective));
  }
  return report;
}

}  // namespace chaining
