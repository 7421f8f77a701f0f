#include "chaining/variantgen.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace chaining {
namespace {

struct ConnectionOrder {
  bool operator()(const Connection& lhs, const Connection& rhs) const {
    return std::tie(lhs.origin, lhs.target) < std::tie(rhs.origin, rhs.target);
  }
};

struct TargetKey {
  int origin_plan;
  VariantRef target;

  bool operator==(const TargetKey&) const = default;
};

struct TargetKeyHash {
  size_t operator()(const TargetKey& k) const {
    size_t h = std::hash<long long>()((static_cast<long long>(k.origin_plan) << 32) ^
                                      k.target.plan);
    return h ^ (std::hash<Tick>()(k.target.delay) + 0x9e3779b97f4a7c15ULL + (h << 6) +
                (h >> 2));
  }
};

}  // namespace

ConnectOutcome TryConnect(const ChainingInstance& instance, const Endpoint& a,
                          int target) {
  if (const auto* from = std::get_if<VariantRef>(&a); from && from->plan == target) {
    throw std::invalid_argument("cannot connect plan " +
                                std::to_string(instance.plans()[target].id) +
                                " to itself");
  }
  const Plan& plan = instance.plans().at(target);
  const VariantRef base{target, 0};
  const Tick min_delay =
      instance.travel_time(a, base) - (plan.t_or - instance.ready_time(a));
  Tick delay = std::max<Tick>(0, min_delay);
  if (delay > plan.d_max) return Infeasible{};
  // A zero-slack, zero-travel link may be ruled out by the ordering tie-break;
  // one more tick of delay always repairs it.
  if (!instance.connection_feasible(a, {target, delay})) {
    ++delay;
    if (delay > plan.d_max) return Infeasible{};
  }
  const VariantRef variant{target, delay};
  const std::optional<Cost> cost = instance.connection_cost(a, variant);
  if (!cost) return Infeasible{};
  Connection connection{a, variant, *cost};
  if (delay == 0) return DirectConnection{connection};
  return NewVariant{variant, connection};
}

GenerationResult Generate(const ChainingInstance& instance, QueueOrder order,
                          OriginVariants origins) {
  std::set<Connection, ConnectionOrder> connections;
  std::unordered_map<TargetKey, Connection, TargetKeyHash> latest;
  std::set<VariantRef> variants;
  std::deque<VariantRef> queue;

  auto keep = [&](const Connection& c) {
    const auto* from = std::get_if<VariantRef>(&c.origin);
    if (origins == OriginVariants::kAll || from == nullptr) {
      connections.insert(c);
      return;
    }
    auto [it, inserted] = latest.try_emplace(TargetKey{from->plan, c.target}, c);
    if (!inserted && std::get<VariantRef>(it->second.origin).delay < from->delay) {
      it->second = c;
    }
  };
  auto connect = [&](const Endpoint& a, int target) {
    const ConnectOutcome outcome = TryConnect(instance, a, target);
    if (const auto* direct = std::get_if<DirectConnection>(&outcome)) {
      keep(direct->connection);
    } else if (const auto* delayed = std::get_if<NewVariant>(&outcome)) {
      keep(delayed->connection);
      if (variants.insert(delayed->variant).second) {
        queue.push_back(delayed->variant);
      }
    }
  };

  const int n = instance.num_plans();
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p != q) connect(VariantRef{p, 0}, q);
    }
  }
  for (int v = 0; v < instance.num_vehicles(); ++v) {
    for (int q = 0; q < n; ++q) connect(VehicleRef{v}, q);
  }
  while (!queue.empty()) {
    VariantRef phi;
    if (order == QueueOrder::kFifo) {
      phi = queue.front();
      queue.pop_front();
    } else {
      phi = queue.back();
      queue.pop_back();
    }
    for (int q = 0; q < n; ++q) {
      if (q != phi.plan) connect(phi, q);
    }
  }

  GenerationResult result;
  result.variants.assign(variants.begin(), variants.end());
  result.connections.assign(connections.begin(), connections.end());
  if (!latest.empty()) {
    for (const auto& entry : latest) result.connections.push_back(entry.second);
    std::sort(result.connections.begin(), result.connections.end(), ConnectionOrder());
  }
  return result;
}

GenerationResult GenerateAllVariants(const ChainingInstance& instance,
                                     long max_variant_ticks) {
  long total = 0;
  for (const Plan& p : instance.plans()) total += p.d_max;
  if (total > max_variant_ticks) {
    throw std::length_error("full variant enumeration needs " +
                            std::to_string(total) + " delayed variants, limit is " +
                            std::to_string(max_variant_ticks));
  }
  GenerationResult result;
  std::vector<VariantRef> all;
  for (int p = 0; p < instance.num_plans(); ++p) {
    for (Tick d = 0; d <= instance.plans()[p].d_max; ++d) {
      all.push_back({p, d});
      if (d > 0) result.variants.push_back({p, d});
    }
  }
  auto add = [&](const Endpoint& a, const VariantRef& b) {
    if (!instance.connection_feasible(a, b)) return;
    if (auto cost = instance.connection_cost(a, b)) {
      result.connections.push_back({a, b, *cost});
    }
  };
  for (int v = 0; v < instance.num_vehicles(); ++v) {
    for (const VariantRef& b : all) add(VehicleRef{v}, b);
  }
  for (const VariantRef& a : all) {
    for (const VariantRef& b : all) {
      if (a.plan != b.plan) add(a, b);
    }
  }
  // Vehicles sort before variants, and both loops run in sorted order.
  return result;
}

}  // namespace chaining
