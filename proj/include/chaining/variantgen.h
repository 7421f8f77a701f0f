#ifndef CHAINING_VARIANTGEN_H_
#define CHAINING_VARIANTGEN_H_

#include <variant>
#include <vector>

#include "chaining/model.h"

namespace chaining {

struct Connection {
  Endpoint origin;
  VariantRef target;
  Cost cost = 0;

  bool operator==(const Connection&) const = default;
};

struct DirectConnection {
  Connection connection;
};
struct NewVariant {
  VariantRef variant;
  Connection connection;
};
struct Infeasible {};

using ConnectOutcome = std::variant<DirectConnection, NewVariant, Infeasible>;

struct GenerationResult {
  // Delayed variants only (delay > 0), sorted by (plan, delay).
  std::vector<VariantRef> variants;
  // Sorted by (origin, target); no duplicates.
  std::vector<Connection> connections;

  bool operator==(const GenerationResult&) const = default;
};

enum class QueueOrder { kFifo, kLifo };

enum class OriginVariants {
  kAll,
  // Of several connections from variants of one plan into the same target
  // variant, keep only the one leaving the latest variant.
  kLatest,
};

// Connects `a` to plan `target` using the smallest delay of the target that
// makes the connection feasible. A connection the cost policy forbids counts
// as Infeasible. Throws std::invalid_argument if `a` is a variant of `target`.
ConnectOutcome TryConnect(const ChainingInstance& instance, const Endpoint& a,
                          int target);

// Minimal variant generation: every vehicle and base plan is connected to
// every other plan, then each newly delayed variant is connected to every
// other plan until no new variant appears. Variants are deduplicated by
// (plan, delay) before they are queued. The variant set does not depend on
// `origins`.
GenerationResult Generate(const ChainingInstance& instance,
                          QueueOrder order = QueueOrder::kFifo,
                          OriginVariants origins = OriginVariants::kAll);

// Every integer-delay variant of every plan and every feasible, permitted
// connection between them. Throws std::length_error when the total number of
// delayed variants exceeds `max_variant_ticks`.
GenerationResult GenerateAllVariants(const ChainingInstance& instance,
                                     long max_variant_ticks);

}  // namespace chaining

#endif  // CHAINING_VARIANTGEN_H_
