#ifndef CHAINING_ORACLE_H_
#define CHAINING_ORACLE_H_

// Reference solvers used to certify the chaining solver. The brute-force and
// matching oracles depend on the model only; they share no graph code with
// the flow-based solver.

#include <optional>
#include <vector>

#include "chaining/model.h"

namespace chaining::oracle {

inline constexpr int kMaxBruteForcePlans = 9;
inline constexpr long kMaxFullVariantTicks = 200;

struct OracleResult {
  // nullopt when no feasible chain set exists.
  std::optional<Cost> objective;
  std::vector<Chain> witness;
  long feasible_sets = 0;
};

// Exhaustive search over every assignment of plans to ordered sequences
// headed by distinct vehicles and every integer delay of every plan. Throws
// std::length_error for more than kMaxBruteForcePlans plans.
OracleResult BruteForceOptimal(const ChainingInstance& instance);

// Minimum number of vehicles when every plan has a dedicated vehicle:
// |P| minus a maximum matching of the shareability graph. Requires all
// d_max == 0 (std::invalid_argument otherwise).
int FleetMinMatching(const ChainingInstance& instance);

// Optimal objective when every integer-delay variant is available to the
// flow-based solver. Throws std::length_error when the total number of
// delayed variants exceeds kMaxFullVariantTicks.
std::optional<Cost> FullVariantOptimal(const ChainingInstance& instance);

}  // namespace chaining::oracle

#endif  // CHAINING_ORACLE_H_
