#include "chaining/oracle.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "chaining/chainsolve.h"
#include "chaining/variantgen.h"

namespace chaining::oracle {
namespace {

constexpr Cost kInf = std::numeric_limits<Cost>::max() / 4;

// Exhaustive search. Vehicles are processed in order; each one either stays
// unused or receives a sequence of still-uncovered plans. For the sequence
// under construction, dp[d] is the cheapest cost of the chain so far when its
// last plan runs with delay d.
class BruteForce {
 public:
  explicit BruteForce(const ChainingInstance& instance)
      : instance_(instance),
        used_(instance.num_plans(), 0),
        sequences_(instance.num_vehicles()) {}

  OracleResult Run() {
    NextVehicle(0);
    return std::move(result_);
  }

 private:
  Cost Link(const Endpoint& from, const VariantRef& to) const {
    if (!instance_.connection_feasible(from, to)) return kInf;
    const auto cost = instance_.connection_cost(from, to);
    return cost ? *cost : kInf;
  }

  std::vector<Cost> Extend(int vehicle, int last, const std::vector<Cost>& dp,
                           int next) const {
    const Tick budget = instance_.plans()[next].d_max;
    std::vector<Cost> out(budget + 1, kInf);
    for (Tick d2 = 0; d2 <= budget; ++d2) {
      const VariantRef to{next, d2};
      if (last < 0) {
        out[d2] = Link(VehicleRef{vehicle}, to);
        continue;
      }
      for (Tick d1 = 0; d1 < static_cast<Tick>(dp.size()); ++d1) {
        if (dp[d1] >= kInf) continue;
        const Cost link = Link(VariantRef{last, d1}, to);
        if (link < kInf) out[d2] = std::min(out[d2], dp[d1] + link);
      }
    }
    return out;
  }

  void NextVehicle(int vehicle) {
    if (covered_ == instance_.num_plans()) {
      RecordLeaf();
      return;
    }
    if (vehicle == instance_.num_vehicles()) return;
    Grow(vehicle, -1, {});
  }

  void Grow(int vehicle, int last, const std::vector<Cost>& dp) {
    const Cost chain_cost =
        last < 0 ? 0 : *std::min_element(dp.begin(), dp.end());
    committed_ += chain_cost;
    NextVehicle(vehicle + 1);
    committed_ -= chain_cost;

    for (int q = 0; q < instance_.num_plans(); ++q) {
      if (used_[q]) continue;
      std::vector<Cost> next = Extend(vehicle, last, dp, q);
      const Cost lowest = *std::min_element(next.begin(), next.end());
      if (lowest >= kInf) continue;
      if (result_.objective && committed_ + lowest >= *result_.objective) continue;
      used_[q] = 1;
      ++covered_;
      sequences_[vehicle].push_back(q);
      Grow(vehicle, q, next);
      sequences_[vehicle].pop_back();
      --covered_;
      used_[q] = 0;
    }
  }

  void RecordLeaf() {
    ++result_.feasible_sets;
    if (result_.objective && committed_ >= *result_.objective) return;
    result_.objective = committed_;
    result_.witness.clear();
    for (int v = 0; v < instance_.num_vehicles(); ++v) {
      if (!sequences_[v].empty()) result_.witness.push_back(Witness(v));
    }
  }

  // Recovers the cheapest delays for one vehicle's sequence.
  Chain Witness(int vehicle) const {
    const std::vector<int>& seq = sequences_[vehicle];
    std::vector<std::vector<Cost>> tables;
    std::vector<Cost> dp;
    int last = -1;
    for (int q : seq) {
      dp = Extend(vehicle, last, dp, q);
      tables.push_back(dp);
      last = q;
    }
    std::vector<Tick> delays(seq.size());
    Tick d = std::min_element(dp.begin(), dp.end()) - dp.begin();
    for (int i = static_cast<int>(seq.size()) - 1; i >= 0; --i) {
      delays[i] = d;
      if (i == 0) break;
      for (Tick d1 = 0; d1 < static_cast<Tick>(tables[i - 1].size()); ++d1) {
        if (tables[i - 1][d1] >= kInf) continue;
        const Cost link = Link(VariantRef{seq[i - 1], d1}, VariantRef{seq[i], d});
        if (link < kInf && tables[i - 1][d1] + link == tables[i][d]) {
          d = d1;
          break;
        }
      }
    }
    Chain chain;
    chain.vehicle = vehicle;
    Endpoint previous = VehicleRef{vehicle};
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const VariantRef v{seq[i], delays[i]};
      chain.plans.push_back(v);
      chain.link_costs.push_back(Link(previous, v));
      chain.link_waits.push_back(instance_.wait_time(previous, v));
      previous = v;
    }
    return chain;
  }

  const ChainingInstance& instance_;
  std::vector<char> used_;
  std::vector<std::vector<int>> sequences_;
  int covered_ = 0;
  Cost committed_ = 0;
  OracleResult result_;
};

bool TryKuhn(int u, const std::vector<std::vector<int>>& adjacency,
             std::vector<int>& match_right, std::vector<char>& visited) {
  for (int w : adjacency[u]) {
    if (visited[w]) continue;
    visited[w] = 1;
    if (match_right[w] < 0 || TryKuhn(match_right[w], adjacency, match_right, visited)) {
      match_right[w] = u;
      return true;
    }
  }
  return false;
}

}  // namespace

OracleResult BruteForceOptimal(const ChainingInstance& instance) {
  if (instance.num_plans() > kMaxBruteForcePlans) {
    throw std::length_error("brute force is limited to " +
                            std::to_string(kMaxBruteForcePlans) + " plans, got " +
                            std::to_string(instance.num_plans()));
  }
  return BruteForce(instance).Run();
}

int FleetMinMatching(const ChainingInstance& instance) {
  const int n = instance.num_plans();
  for (const Plan& p : instance.plans()) {
    if (p.d_max != 0) {
      throw std::invalid_argument("matching oracle needs zero delays; plan " +
                                  std::to_string(p.id) + " has d_max " +
                                  std::to_string(p.d_max));
    }
  }
  std::vector<std::vector<int>> adjacency(n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p != q && instance.connection_feasible(VariantRef{p, 0}, VariantRef{q, 0})) {
        adjacency[p].push_back(q);
      }
    }
  }
  std::vector<int> match_right(n, -1);
  int matching = 0;
  for (int p = 0; p < n; ++p) {
    std::vector<char> visited(n, 0);
    if (TryKuhn(p, adjacency, match_right, visited)) ++matching;
  }
  return n - matching;
}

std::optional<Cost> FullVariantOptimal(const ChainingInstance& instance) {
  const GenerationResult all = GenerateAllVariants(instance, kMaxFullVariantTicks);
  const ChainResult result = SolveChaining(instance, all);
  if (const auto* solution = std::get_if<ChainSolution>(&result)) {
    return solution->objective;
  }
  return std::nullopt;
}

}  // namespace chaining::oracle
