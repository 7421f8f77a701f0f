#include "chaining/flownet.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace chaining {
namespace {

constexpr Cost kUnreached = std::numeric_limits<Cost>::max();

int FindDelay(const std::vector<Tick>& delays, Tick delay) {
  auto it = std::lower_bound(delays.begin(), delays.end(), delay);
  if (it == delays.end() || *it != delay) return -1;
  return static_cast<int>(it - delays.begin());
}

}  // namespace

bool FlowNetwork::has_any_variants() const {
  return std::any_of(variant_delays_.begin(), variant_delays_.end(),
                     [](const auto& d) { return !d.empty(); });
}

std::string FlowNetwork::ToEdgeList() const {
  std::ostringstream out;
  for (const FlowEdge& e : edges_) {
    out << e.tail << ' ' << e.head << ' ' << e.lower << ' ' << e.upper << ' '
        << e.cost << '\n';
  }
  return out.str();
}

FlowNetwork BuildNetwork(const ChainingInstance& instance,
                         const GenerationResult& generation,
                         VariantRouting routing,
                         DelayConsistency consistency) {
  if (consistency == DelayConsistency::kOrdered &&
      routing != VariantRouting::kZeroDelayExtended) {
    throw std::invalid_argument("ordered delay consistency needs extended routing");
  }
  const int n = instance.num_plans();
  FlowNetwork net;
  net.routing_ = routing;
  net.consistency_ = consistency;
  if (consistency == DelayConsistency::kEqual) {
    net.connections_ = generation.connections;
  } else {
    std::map<std::tuple<int, int, Tick>, Tick> latest;
    for (const Connection& c : generation.connections) {
      if (const auto* from = std::get_if<VariantRef>(&c.origin)) {
        Tick& d = latest.try_emplace({from->plan, c.target.plan, c.target.delay},
                                     from->delay).first->second;
        d = std::max(d, from->delay);
      }
    }
    for (const Connection& c : generation.connections) {
      const auto* from = std::get_if<VariantRef>(&c.origin);
      if (from == nullptr ||
          latest.at({from->plan, c.target.plan, c.target.delay}) == from->delay) {
        net.connections_.push_back(c);
      }
    }
  }
  net.variant_delays_.assign(n, {});
  for (const VariantRef& v : generation.variants) {
    if (v.delay > 0) net.variant_delays_.at(v.plan).push_back(v.delay);
  }
  for (auto& delays : net.variant_delays_) {
    std::sort(delays.begin(), delays.end());
    delays.erase(std::unique(delays.begin(), delays.end()), delays.end());
    if (routing == VariantRouting::kZeroDelayExtended && !delays.empty()) {
      delays.insert(delays.begin(), 0);
    }
  }

  auto add_node = [&](FlowNode node) {
    net.nodes_.push_back(node);
    return static_cast<int>(net.nodes_.size()) - 1;
  };
  auto add_edge = [&](int tail, int head, Cost cost, int connection) {
    net.edges_.push_back(FlowEdge{tail, head, 0, 1, cost, connection});
    return static_cast<int>(net.edges_.size()) - 1;
  };

  const int source = add_node({NodeKind::kSource, -1, 0, -1, n});
  net.left_plan_.resize(n);
  for (int p = 0; p < n; ++p) {
    net.left_plan_[p] = add_node({NodeKind::kLeftPlan, p});
  }
  net.left_variant_nodes_.assign(n, {});
  for (int p = 0; p < n; ++p) {
    for (Tick d : net.variant_delays_[p]) {
      net.left_variant_nodes_[p].push_back(add_node({NodeKind::kLeftVariant, p, d}));
    }
  }
  net.vehicle_node_.resize(instance.num_vehicles());
  for (int v = 0; v < instance.num_vehicles(); ++v) {
    net.vehicle_node_[v] = add_node({NodeKind::kVehicle, -1, 0, v});
  }
  net.right_variant_nodes_.assign(n, {});
  for (int p = 0; p < n; ++p) {
    for (Tick d : net.variant_delays_[p]) {
      net.right_variant_nodes_[p].push_back(
          add_node({NodeKind::kRightVariant, p, d}));
    }
  }
  net.right_plan_.resize(n);
  for (int p = 0; p < n; ++p) {
    net.right_plan_[p] = add_node({NodeKind::kRightPlan, p});
  }
  const int sink = add_node({NodeKind::kSink, -1, 0, -1, -n});

  for (int p = 0; p < n; ++p) add_edge(source, net.left_plan_[p], 0, -1);
  for (int v = 0; v < instance.num_vehicles(); ++v) {
    add_edge(source, net.vehicle_node_[v], 0, -1);
  }
  net.left_variant_edges_.assign(n, {});
  for (int p = 0; p < n; ++p) {
    for (int node : net.left_variant_nodes_[p]) {
      net.left_variant_edges_[p].push_back(add_edge(net.left_plan_[p], node, 0, -1));
    }
  }
  net.right_variant_edges_.assign(n, {});
  for (int p = 0; p < n; ++p) {
    for (int node : net.right_variant_nodes_[p]) {
      net.right_variant_edges_[p].push_back(
          add_edge(node, net.right_plan_[p], 0, -1));
    }
  }
  for (int p = 0; p < n; ++p) add_edge(net.right_plan_[p], sink, 0, -1);

  auto left_node_of = [&](const VariantRef& v) {
    const int slot = FindDelay(net.variant_delays_[v.plan], v.delay);
    if (slot >= 0) return net.left_variant_nodes_[v.plan][slot];
    if (v.delay == 0 && net.variant_delays_[v.plan].empty()) {
      return net.left_plan_[v.plan];
    }
    if (v.delay == 0 && routing == VariantRouting::kBasePlanNodes) {
      return net.left_plan_[v.plan];
    }
    throw std::logic_error("connection origin is not a generated variant");
  };
  auto right_node_of = [&](const VariantRef& v) {
    const int slot = FindDelay(net.variant_delays_[v.plan], v.delay);
    if (slot >= 0) return net.right_variant_nodes_[v.plan][slot];
    if (v.delay == 0 && net.variant_delays_[v.plan].empty()) {
      return net.right_plan_[v.plan];
    }
    if (v.delay == 0 && routing == VariantRouting::kBasePlanNodes) {
      return net.right_plan_[v.plan];
    }
    throw std::logic_error("connection target is not a generated variant");
  };

  for (std::size_t i = 0; i < net.connections_.size(); ++i) {
    const Connection& c = net.connections_[i];
    const int tail =
        std::holds_alternative<VehicleRef>(c.origin)
            ? net.vehicle_node_.at(std::get<VehicleRef>(c.origin).vehicle)
            : left_node_of(std::get<VariantRef>(c.origin));
    add_edge(tail, right_node_of(c.target), c.cost, static_cast<int>(i));
  }
  return net;
}

McfSolver::McfSolver(const FlowNetwork& network) : network_(network) {
  const auto& nodes = network.nodes();
  const auto& edges = network.edges();
  const std::size_t n = nodes.size();
  std::vector<int> degree(n + 1, 0);
  for (const FlowEdge& e : edges) {
    ++degree[e.tail];
    ++degree[e.head];
  }
  adjacency_start_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    adjacency_start_[v + 1] = adjacency_start_[v] + degree[v];
  }
  adjacency_.resize(2 * edges.size());
  std::vector<int> fill(adjacency_start_.begin(), adjacency_start_.end() - 1);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adjacency_[fill[edges[e].tail]++] = static_cast<int>(2 * e);
    adjacency_[fill[edges[e].head]++] = static_cast<int>(2 * e + 1);
  }
  dist_.assign(n, kUnreached);
  parent_arc_.assign(n, -1);
  done_.assign(n, 0);
}

Cost McfSolver::total_cost() const {
  Cost total = 0;
  const auto& edges = network_.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) total += edges[e].cost * flow_[e];
  return total;
}

std::vector<int> McfSolver::active_edges() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < flow_.size(); ++e) {
    if (flow_[e] > 0) out.push_back(static_cast<int>(e));
  }
  return out;
}

bool McfSolver::SolveCold(const std::vector<char>& closed) {
  const auto& edges = network_.edges();
  upper_.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    upper_[e] = closed.empty() || !closed[e] ? edges[e].upper : 0;
  }
  flow_.assign(edges.size(), 0);
  potential_.assign(network_.nodes().size(), 0);
  excess_.assign(network_.nodes().size(), 0);
  for (std::size_t v = 0; v < network_.nodes().size(); ++v) {
    excess_[v] = network_.nodes()[v].supply;
  }
  augmentations_ = 0;
  return Augment();
}

bool McfSolver::SolveWarm(const std::vector<char>& closed,
                          const std::vector<int>& active_edges,
                          const std::vector<Cost>& potentials) {
  const auto& edges = network_.edges();
  upper_.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    upper_[e] = closed.empty() || !closed[e] ? edges[e].upper : 0;
  }
  flow_.assign(edges.size(), 0);
  potential_ = potentials;
  excess_.assign(network_.nodes().size(), 0);
  for (std::size_t v = 0; v < network_.nodes().size(); ++v) {
    excess_[v] = network_.nodes()[v].supply;
  }
  for (int e : active_edges) {
    if (upper_[e] == 0) continue;
    flow_[e] = 1;
    excess_[edges[e].tail] -= 1;
    excess_[edges[e].head] += 1;
  }
  augmentations_ = 0;
  return Augment();
}

bool McfSolver::Augment() {
  while (true) {
    bool pending = false;
    for (Tick x : excess_) {
      if (x > 0) {
        pending = true;
        break;
      }
    }
    if (!pending) return true;
    if (!ShortestPathStep()) return false;
    ++augmentations_;
  }
}

// One Dijkstra pass over reduced costs from every node with excess to the
// nearest node with a deficit, followed by a potential update and a unit
// augmentation along the found path.
bool McfSolver::ShortestPathStep() {
  const auto& edges = network_.edges();
  const std::size_t n = network_.nodes().size();
  std::fill(dist_.begin(), dist_.end(), kUnreached);
  std::fill(parent_arc_.begin(), parent_arc_.end(), -1);
  std::fill(done_.begin(), done_.end(), 0);

  using Item = std::pair<Cost, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (std::size_t v = 0; v < n; ++v) {
    if (excess_[v] > 0) {
      dist_[v] = 0;
      heap.push({0, static_cast<int>(v)});
    }
  }
  int target = -1;
  std::vector<int> settled;
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (done_[u] || d != dist_[u]) continue;
    done_[u] = 1;
    settled.push_back(u);
    if (excess_[u] < 0) {
      target = u;
      break;
    }
    for (int k = adjacency_start_[u]; k < adjacency_start_[u + 1]; ++k) {
      const int arc = adjacency_[k];
      const FlowEdge& e = edges[arc / 2];
      const bool forward = (arc % 2) == 0;
      int to;
      Cost cost;
      if (forward) {
        if (flow_[arc / 2] >= upper_[arc / 2]) continue;
        to = e.head;
        cost = e.cost;
      } else {
        if (flow_[arc / 2] <= e.lower) continue;
        to = e.tail;
        cost = -e.cost;
      }
      if (done_[to]) continue;
      const Cost reduced = cost + potential_[u] - potential_[to];
      const Cost nd = d + reduced;
      if (nd < dist_[to]) {
        dist_[to] = nd;
        parent_arc_[to] = arc;
        heap.push({nd, to});
      }
    }
  }
  if (target < 0) return false;

  const Cost limit = dist_[target];
  for (std::size_t v = 0; v < n; ++v) {
    potential_[v] += done_[v] ? dist_[v] : limit;
  }
  int v = target;
  while (parent_arc_[v] >= 0) {
    const int arc = parent_arc_[v];
    const FlowEdge& e = edges[arc / 2];
    if (arc % 2 == 0) {
      flow_[arc / 2] += 1;
      v = e.tail;
    } else {
      flow_[arc / 2] -= 1;
      v = e.head;
    }
  }
  excess_[v] -= 1;
  excess_[target] += 1;
  return true;
}

McfResult SolveMcf(const FlowNetwork& network) {
  const int n = network.num_plans();
  std::vector<int> incoming(n, 0);
  for (const FlowEdge& e : network.edges()) {
    if (e.connection < 0) continue;
    incoming[network.connections()[e.connection].target.plan] += 1;
  }
  for (int p = 0; p < n; ++p) {
    if (incoming[p] == 0) {
      return FlowInfeasible{"no vehicle or plan can connect to this plan", p};
    }
  }
  McfSolver solver(network);
  if (!solver.SolveCold({})) {
    int uncovered = -1;
    for (int p = 0; p < n && uncovered < 0; ++p) {
      for (int e = 0; e < static_cast<int>(network.edges().size()); ++e) {
        const FlowEdge& edge = network.edges()[e];
        if (edge.tail == network.right_plan(p) && edge.head == network.sink() &&
            solver.flow()[e] == 0) {
          uncovered = p;
          break;
        }
      }
    }
    return FlowInfeasible{"not enough chain heads to cover every plan", uncovered};
  }
  FlowAssignment out;
  out.flow = solver.flow();
  out.total_cost = solver.total_cost();
  out.potentials = solver.potentials();
  return out;
}

}  // namespace chaining
