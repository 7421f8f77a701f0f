#ifndef CHAINING_CHAINSOLVE_H_
#define CHAINING_CHAINSOLVE_H_

#include <string>
#include <variant>
#include <vector>

#include "chaining/flownet.h"
#include "chaining/model.h"
#include "chaining/variantgen.h"

namespace chaining {

enum class VariantSet {
  // Minimal generation for delay-invariant policies, full enumeration for
  // policies that price waiting time.
  kAuto,
  kMinimal,
  kAll,
};

struct SolveOptions {
  VariantSet variants = VariantSet::kAuto;
  VariantRouting routing = VariantRouting::kZeroDelayExtended;
  // Reuse the parent's flow and potentials when solving a child relaxation.
  bool warm_start = true;
  // For policies whose costs ignore delays, let a plan leave through a later
  // variant than it was entered through (extended routing only).
  bool ordered_delays = true;
  // Guard for full variant enumeration (total delayed variants).
  long max_variant_ticks = 20000;
};

struct SolveStats {
  long branch_nodes = 0;
  long relaxations = 0;
  long variants = 0;
  long connections = 0;
  double wall_ms = 0.0;
};

struct ChainSolution {
  std::vector<Chain> chains;
  Cost objective = 0;
  SolveStats stats;
};

struct ChainingInfeasible {
  std::string reason;
};

using ChainResult = std::variant<ChainSolution, ChainingInfeasible>;

// Globally optimal chaining. Branch and bound over the min-cost flow
// relaxation: a plan entered through one variant and left through another is
// branched on, one child per variant, each child closing the structural
// edges of all other variants of that plan.
ChainResult SolveChaining(const ChainingInstance& instance,
                          const SolveOptions& options = {});

// Same, over an explicit variant and connection set.
ChainResult SolveChaining(const ChainingInstance& instance,
                          const GenerationResult& generation,
                          const SolveOptions& options = {});

// Follows unit flows from every vehicle through connection edges. Throws
// std::logic_error if the flow does not decode into chains that cover every
// plan exactly once.
std::vector<Chain> ExtractChains(const ChainingInstance& instance,
                                 const FlowNetwork& network,
                                 const std::vector<int>& flow);

struct Violation {
  int chain = -1;
  int link = -1;
  std::string message;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  Cost recomputed_objective = 0;

  bool ok() const { return violations.empty(); }
  std::string ToString() const;
};

// Checks chains against the raw instance: timing of every link, the policy,
// vehicle uniqueness and that each plan is served exactly once. When
// `claimed_objective` is given, it must match the recomputed objective.
ValidationReport ValidateChains(const ChainingInstance& instance,
                                const std::vector<Chain>& chains,
                                std::optional<Cost> claimed_objective = {});

}  // namespace chaining

#endif  // CHAINING_CHAINSOLVE_H_
