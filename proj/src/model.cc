#include "chaining/model.h"

#include <charconv>
#include <string_view>

namespace chaining {

TravelMatrix::TravelMatrix(const std::vector<std::vector<Tick>>& rows)
    : size_(static_cast<int>(rows.size())) {
  data_.reserve(rows.size() * rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw std::invalid_argument("travel matrix row " + std::to_string(i) +
                                  " has " + std::to_string(rows[i].size()) +
                                  " entries, expected " +
                                  std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      const Tick t = rows[i][j];
      if (t < 0) {
        throw std::invalid_argument("travel matrix entry (" +
                                    std::to_string(i) + "," +
                                    std::to_string(j) + ") is negative");
      }
      if (i == j && t != 0) {
        throw std::invalid_argument("travel matrix diagonal entry " +
                                    std::to_string(i) + " is not zero");
      }
      data_.push_back(t);
    }
  }
}

std::vector<std::vector<Tick>> TravelMatrix::rows() const {
  std::vector<std::vector<Tick>> out(size_, std::vector<Tick>(size_));
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) out[i][j] = at(i, j);
  }
  return out;
}

bool IsDelayInvariant(const CostPolicy& policy) {
  return std::holds_alternative<policy::FleetSize>(policy) ||
         std::holds_alternative<policy::TravelCost>(policy);
}

std::string PolicyToString(const CostPolicy& p) {
  if (std::holds_alternative<policy::FleetSize>(p)) return "fleet";
  if (std::holds_alternative<policy::TravelCost>(p)) return "cost";
  if (const auto* cap = std::get_if<policy::WaitCapped>(&p)) {
    return "cost-waitcap:" + std::to_string(cap->max_wait);
  }
  const auto& pen = std::get<policy::WaitPenalized>(p);
  if (pen.denominator == 1) {
    return "cost-waitpen:" + std::to_string(pen.numerator);
  }
  return "cost-waitpen:" + std::to_string(pen.numerator) + "/" +
         std::to_string(pen.denominator);
}

namespace {

std::int64_t ParseInteger(std::string_view text, const std::string& whole) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("malformed policy '" + whole + "'");
  }
  return value;
}

}  // namespace

CostPolicy ParsePolicy(const std::string& text) {
  if (text == "fleet") return policy::FleetSize{};
  if (text == "cost") return policy::TravelCost{};
  constexpr std::string_view kCap = "cost-waitcap:";
  constexpr std::string_view kPen = "cost-waitpen:";
  std::string_view view(text);
  if (view.starts_with(kCap)) {
    const Tick cap = ParseInteger(view.substr(kCap.size()), text);
    if (cap < 0) throw std::invalid_argument("negative wait cap in '" + text + "'");
    return policy::WaitCapped{cap};
  }
  if (view.starts_with(kPen)) {
    view.remove_prefix(kPen.size());
    policy::WaitPenalized pen;
    const auto slash = view.find('/');
    if (slash == std::string_view::npos) {
      pen.numerator = ParseInteger(view, text);
    } else {
      pen.numerator = ParseInteger(view.substr(0, slash), text);
      pen.denominator = ParseInteger(view.substr(slash + 1), text);
    }
    if (pen.numerator < 0 || pen.denominator <= 0) {
      throw std::invalid_argument("wait penalty must be a non-negative ratio in '" +
                                  text + "'");
    }
    return pen;
  }
  throw std::invalid_argument("unknown policy '" + text + "'");
}

ChainingInstance::ChainingInstance(std::vector<Plan> plans,
                                   std::vector<Vehicle> vehicles,
                                   TravelMatrix travel, CostPolicy policy)
    : plans_(std::move(plans)),
      vehicles_(std::move(vehicles)),
      travel_(std::move(travel)),
      policy_(policy) {
  for (int i = 0; i < num_plans(); ++i) {
    const Plan& p = plans_[i];
    const std::string name = "plan " + std::to_string(p.id);
    if (!plan_index_.emplace(p.id, i).second) {
      throw std::invalid_argument("duplicate plan id " + std::to_string(p.id));
    }
    if (!travel_.contains(p.origin) || !travel_.contains(p.destination)) {
      throw std::invalid_argument(name + " references an unknown location");
    }
    if (p.t_or < 0) throw std::invalid_argument(name + " has negative t_or");
    if (p.t_or > p.t_de) throw std::invalid_argument(name + " has t_or > t_de");
    if (p.d_max < 0) throw std::invalid_argument(name + " has negative d_max");
  }
  for (int i = 0; i < num_vehicles(); ++i) {
    const Vehicle& v = vehicles_[i];
    const std::string name = "vehicle " + std::to_string(v.id);
    if (!vehicle_index_.emplace(v.id, i).second) {
      throw std::invalid_argument("duplicate vehicle id " + std::to_string(v.id));
    }
    if (!travel_.contains(v.start)) {
      throw std::invalid_argument(name + " references an unknown location");
    }
    if (v.t_st < 0) throw std::invalid_argument(name + " has negative t_st");
  }
  if (const auto* cap = std::get_if<policy::WaitCapped>(&policy_);
      cap && cap->max_wait < 0) {
    throw std::invalid_argument("negative wait cap");
  }
  if (const auto* pen = std::get_if<policy::WaitPenalized>(&policy_);
      pen && (pen->numerator < 0 || pen->denominator <= 0)) {
    throw std::invalid_argument("wait penalty must be a non-negative ratio");
  }
}

int ChainingInstance::plan_index(int plan_id) const {
  auto it = plan_index_.find(plan_id);
  if (it == plan_index_.end()) {
    throw std::out_of_range("unknown plan id " + std::to_string(plan_id));
  }
  return it->second;
}

int ChainingInstance::vehicle_index(int vehicle_id) const {
  auto it = vehicle_index_.find(vehicle_id);
  if (it == vehicle_index_.end()) {
    throw std::out_of_range("unknown vehicle id " + std::to_string(vehicle_id));
  }
  return it->second;
}

ChainingInstance ChainingInstance::WithPolicy(CostPolicy policy) const {
  ChainingInstance copy = *this;
  copy.policy_ = policy;
  return copy;
}

void ChainingInstance::CheckVariant(const VariantRef& v) const {
  if (v.plan < 0 || v.plan >= num_plans()) {
    throw std::out_of_range("unknown plan index " + std::to_string(v.plan));
  }
  if (v.delay < 0 || v.delay > plans_[v.plan].d_max) {
    throw std::out_of_range("delay " + std::to_string(v.delay) +
                            " outside budget of plan " +
                            std::to_string(plans_[v.plan].id));
  }
}

void ChainingInstance::CheckEndpoint(const Endpoint& a) const {
  if (const auto* veh = std::get_if<VehicleRef>(&a)) {
    if (veh->vehicle < 0 || veh->vehicle >= num_vehicles()) {
      throw std::out_of_range("unknown vehicle index " +
                              std::to_string(veh->vehicle));
    }
  } else {
    CheckVariant(std::get<VariantRef>(a));
  }
}

Tick ChainingInstance::origin_time(const VariantRef& v) const {
  CheckVariant(v);
  return plans_[v.plan].t_or + v.delay;
}

Tick ChainingInstance::destination_time(const VariantRef& v) const {
  CheckVariant(v);
  return plans_[v.plan].t_de + v.delay;
}

Tick ChainingInstance::ready_time(const Endpoint& a) const {
  CheckEndpoint(a);
  if (const auto* veh = std::get_if<VehicleRef>(&a)) {
    return vehicles_[veh->vehicle].t_st;
  }
  return destination_time(std::get<VariantRef>(a));
}

Tick ChainingInstance::travel_time(const Endpoint& a, const VariantRef& b) const {
  CheckEndpoint(a);
  CheckVariant(b);
  const LocationId from =
      std::holds_alternative<VehicleRef>(a)
          ? vehicles_[std::get<VehicleRef>(a).vehicle].start
          : plans_[std::get<VariantRef>(a).plan].destination;
  return travel_.at(from, plans_[b.plan].origin);
}

bool ChainingInstance::connection_feasible(const Endpoint& a,
                                           const VariantRef& b) const {
  const auto* from = std::get_if<VariantRef>(&a);
  if (from != nullptr && from->plan == b.plan) {
    throw std::invalid_argument("cannot connect plan " +
                                std::to_string(plans_[b.plan].id) +
                                " to a variant of itself");
  }
  const Tick tt = travel_time(a, b);
  const Tick slack = origin_time(b) - ready_time(a);
  if (tt > slack) return false;
  if (from == nullptr) return true;
  if (tt == 0 && slack == 0) {
    const auto lhs = std::pair(origin_time(*from), plans_[from->plan].id);
    const auto rhs = std::pair(origin_time(b), plans_[b.plan].id);
    return lhs < rhs;
  }
  return true;
}

Tick ChainingInstance::wait_time(const Endpoint& a, const VariantRef& b) const {
  return origin_time(b) - ready_time(a) - travel_time(a, b);
}

std::optional<Cost> ChainingInstance::connection_cost(const Endpoint& a,
                                                      const VariantRef& b) const {
  if (!connection_feasible(a, b)) {
    throw std::invalid_argument("connection is not feasible");
  }
  const bool from_vehicle = std::holds_alternative<VehicleRef>(a);
  if (std::holds_alternative<policy::FleetSize>(policy_)) {
    return from_vehicle ? 1 : 0;
  }
  const Cost tt = travel_time(a, b);
  if (from_vehicle) return tt;
  const Tick wait = wait_time(a, b);
  if (const auto* cap = std::get_if<policy::WaitCapped>(&policy_)) {
    if (wait > cap->max_wait) return std::nullopt;
    return tt;
  }
  if (const auto* pen = std::get_if<policy::WaitPenalized>(&policy_)) {
    // Half-up rounding of numerator * wait / denominator.
    const std::int64_t scaled = pen->numerator * wait;
    return tt + (2 * scaled + pen->denominator) / (2 * pen->denominator);
  }
  return tt;
}

bool ChainingInstance::operator==(const ChainingInstance& other) const {
  return plans_ == other.plans_ && vehicles_ == other.vehicles_ &&
         travel_ == other.travel_ && policy_ == other.policy_;
}

}  // namespace chaining
