#ifndef CHAINING_FLOWNET_H_
#define CHAINING_FLOWNET_H_

// The chaining flow network and an exact min-cost flow solver for it.
//
// Layout (left to right): the source feeds one left node per plan and one
// node per vehicle; left plan nodes fan out into left variant nodes;
// connection edges run from vehicles and left plan/variant nodes to right
// plan/variant nodes; right variant nodes merge into right plan nodes, which
// drain into the sink. All edges have bounds [0, 1]; only connection edges
// carry a cost. The source supplies one unit per plan and the sink absorbs it.

#include <string>
#include <variant>
#include <vector>

#include "chaining/model.h"
#include "chaining/variantgen.h"

namespace chaining {

enum class NodeKind {
  kSource,
  kSink,
  kLeftPlan,
  kRightPlan,
  kLeftVariant,
  kRightVariant,
  kVehicle,
};

struct FlowNode {
  NodeKind kind = NodeKind::kSource;
  int plan = -1;
  Tick delay = 0;
  int vehicle = -1;
  Tick supply = 0;
};

struct FlowEdge {
  int tail = 0;
  int head = 0;
  int lower = 0;
  int upper = 1;
  Cost cost = 0;
  // Index into FlowNetwork::connections(), or -1 for structural edges.
  int connection = -1;
};

enum class VariantRouting {
  // Every plan that has a delayed variant also gets a zero-delay variant node
  // pair, and all of its connections run through variant nodes. Variant
  // consistency then covers arrivals and departures at the base plan too.
  kZeroDelayExtended,
  // Only delayed variants get nodes; undelayed connections attach to the
  // plan nodes themselves. Admits temporally invalid chains.
  kBasePlanNodes,
};

enum class DelayConsistency {
  // A plan is left through the variant it was entered through.
  kEqual,
  // A plan may be left through a later variant than the one it was entered
  // through. Only sound when costs do not depend on delays; requires
  // kZeroDelayExtended routing. Connections from earlier variants of a plan
  // into a target variant that a later variant also reaches are dropped.
  kOrdered,
};

class FlowNetwork {
 public:
  const std::vector<FlowNode>& nodes() const { return nodes_; }
  const std::vector<FlowEdge>& edges() const { return edges_; }
  const std::vector<Connection>& connections() const { return connections_; }
  VariantRouting routing() const { return routing_; }
  DelayConsistency consistency() const { return consistency_; }
  int num_plans() const { return static_cast<int>(left_plan_.size()); }

  int source() const { return 0; }
  int sink() const { return static_cast<int>(nodes_.size()) - 1; }
  int left_plan(int plan) const { return left_plan_[plan]; }
  int right_plan(int plan) const { return right_plan_[plan]; }
  int vehicle_node(int vehicle) const { return vehicle_node_[vehicle]; }

  // Delays that own a variant node pair for `plan`, ascending; empty when the
  // plan's connections attach to its plan nodes directly.
  const std::vector<Tick>& variant_delays(int plan) const {
    return variant_delays_[plan];
  }
  // Left plan -> left variant edges and right variant -> right plan edges,
  // aligned with variant_delays(plan).
  const std::vector<int>& left_variant_edges(int plan) const {
    return left_variant_edges_[plan];
  }
  const std::vector<int>& right_variant_edges(int plan) const {
    return right_variant_edges_[plan];
  }
  bool has_variants(int plan) const { return !variant_delays_[plan].empty(); }
  bool has_any_variants() const;

  // One edge per line: "tail head lower upper cost".
  std::string ToEdgeList() const;

 private:
  friend FlowNetwork BuildNetwork(const ChainingInstance&,
                                  const GenerationResult&, VariantRouting,
                                  DelayConsistency);

  VariantRouting routing_ = VariantRouting::kZeroDelayExtended;
  DelayConsistency consistency_ = DelayConsistency::kEqual;
  std::vector<FlowNode> nodes_;
  std::vector<FlowEdge> edges_;
  std::vector<Connection> connections_;
  std::vector<int> left_plan_;
  std::vector<int> right_plan_;
  std::vector<int> vehicle_node_;
  std::vector<std::vector<Tick>> variant_delays_;
  std::vector<std::vector<int>> left_variant_nodes_;
  std::vector<std::vector<int>> right_variant_nodes_;
  std::vector<std::vector<int>> left_variant_edges_;
  std::vector<std::vector<int>> right_variant_edges_;
};

// Node ids are assigned in the order: source, left plans, left variants,
// vehicles, right variants, right plans, sink.
FlowNetwork BuildNetwork(
    const ChainingInstance& instance, const GenerationResult& generation,
    VariantRouting routing = VariantRouting::kZeroDelayExtended,
    DelayConsistency consistency = DelayConsistency::kEqual);

struct FlowAssignment {
  std::vector<int> flow;
  Cost total_cost = 0;
  // Node potentials certifying optimality: every residual arc has a
  // non-negative reduced cost.
  std::vector<Cost> potentials;
};

struct FlowInfeasible {
  std::string reason;
  // Index of the first plan that could not be covered, or -1.
  int plan = -1;
};

using McfResult = std::variant<FlowAssignment, FlowInfeasible>;

// Successive shortest augmenting paths with node potentials.
McfResult SolveMcf(const FlowNetwork& network);

// Reusable residual-graph solver. Supports closing edges (upper bound 0) and
// restarting from a previous optimum: closing edges keeps the previous
// potentials valid, so only the displaced units are rerouted.
class McfSolver {
 public:
  explicit McfSolver(const FlowNetwork& network);

  // Solves from the zero flow with the given edges closed.
  bool SolveCold(const std::vector<char>& closed);
  // Restarts from `active_edges` (edges carrying one unit) and `potentials`,
  // which must be optimal for a subset of `closed`.
  bool SolveWarm(const std::vector<char>& closed,
                 const std::vector<int>& active_edges,
                 const std::vector<Cost>& potentials);

  const std::vector<int>& flow() const { return flow_; }
  const std::vector<Cost>& potentials() const { return potential_; }
  Cost total_cost() const;
  std::vector<int> active_edges() const;
  int augmentations() const { return augmentations_; }

 private:
  bool Augment();
  bool ShortestPathStep();

  const FlowNetwork& network_;
  std::vector<int> upper_;
  std::vector<int> flow_;
  std::vector<Cost> potential_;
  std::vector<Tick> excess_;
  // Adjacency: arc = 2 * edge (forward) or 2 * edge + 1 (backward).
  std::vector<int> adjacency_start_;
  std::vector<int> adjacency_;
  std::vector<Cost> dist_;
  std::vector<int> parent_arc_;
  std::vector<char> done_;
  int augmentations_ = 0;
};

}  // namespace chaining

#endif  // CHAINING_FLOWNET_H_
