#include "chaining/io.h"

#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "json.hpp"

namespace chaining::io {
namespace {

using nlohmann::json;

std::string LineOf(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

json ParseJson(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("syntax error at " + LineOf(text, e.byte) + ": " + e.what());
  }
}

const json& Field(const json& object, const char* key, const std::string& path) {
  if (!object.is_object()) throw InputError("'" + path + "' must be an object");
  auto it = object.find(key);
  if (it == object.end()) {
    throw InputError("missing field '" + path + "." + key + "'");
  }
  return *it;
}

std::int64_t Integer(const json& object, const char* key, const std::string& path) {
  const json& value = Field(object, key, path);
  if (!value.is_number_integer()) {
    throw InputError("field '" + path + "." + key + "' must be an integer");
  }
  return value.get<std::int64_t>();
}

std::string String(const json& object, const char* key, const std::string& path) {
  const json& value = Field(object, key, path);
  if (!value.is_string()) {
    throw InputError("field '" + path + "." + key + "' must be a string");
  }
  return value.get<std::string>();
}

const json& Array(const json& object, const char* key, const std::string& path) {
  const json& value = Field(object, key, path);
  if (!value.is_array()) {
    throw InputError("field '" + path + "." + key + "' must be an array");
  }
  return value;
}

std::string Item(const std::string& path, const char* key, std::size_t i) {
  return path + "." + key + "[" + std::to_string(i) + "]";
}

json VehicleJson(const Vehicle& v) {
  return json{{"id", v.id}, {"start", v.start}, {"t_st", v.t_st}};
}

Vehicle ParseVehicle(const json& j, const std::string& path) {
  return Vehicle{static_cast<int>(Integer(j, "id", path)),
                 static_cast<LocationId>(Integer(j, "start", path)),
                 Integer(j, "t_st", path)};
}

std::vector<Vehicle> ParseVehicles(const json& root) {
  std::vector<Vehicle> out;
  const json& list = Array(root, "vehicles", "$");
  for (std::size_t i = 0; i < list.size(); ++i) {
    out.push_back(ParseVehicle(list[i], Item("$", "vehicles", i)));
  }
  return out;
}

const char* StopKindName(darp::StopKind kind) {
  return kind == darp::StopKind::kPickup ? "pickup" : "dropoff";
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

std::string FormatMs(double ms) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << ms;
  return out.str();
}

// Deterministic draws independent of the standard library's distributions.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  std::int64_t Between(std::int64_t lo, std::int64_t hi) {
    if (hi <= lo) return lo;
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

 private:
  std::mt19937_64 engine_;
};

Coordinates DrawCoordinates(Draw& draw, const GeneratorParams& params) {
  Coordinates coordinates;
  for (int i = 0; i < std::max(1, params.locations); ++i) {
    coordinates.push_back({draw.Between(0, params.grid - 1),
                           draw.Between(0, params.grid - 1)});
  }
  return coordinates;
}

}  // namespace

TravelMatrix GridTravel(const Coordinates& coordinates, Tick ticks_per_unit) {
  if (ticks_per_unit < 0) throw InputError("ticks_per_unit must be non-negative");
  std::vector<std::vector<Tick>> rows(coordinates.size(),
                                      std::vector<Tick>(coordinates.size()));
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    for (std::size_t j = 0; j < coordinates.size(); ++j) {
      rows[i][j] = ticks_per_unit * (std::abs(coordinates[i][0] - coordinates[j][0]) +
                                     std::abs(coordinates[i][1] - coordinates[j][1]));
    }
  }
  return TravelMatrix(rows);
}

InstanceFile ParseInstance(const std::string& text) {
  const json root = ParseJson(text);
  InstanceFile file;
  file.schema_version = static_cast<int>(Integer(root, "schema_version", "$"));
  if (file.schema_version != kSchemaVersion) {
    throw InputError("unsupported schema_version " +
                     std::to_string(file.schema_version));
  }
  const json& locations = Field(root, "locations", "$");
  const std::int64_t count = Integer(locations, "count", "$.locations");
  if (auto it = locations.find("coordinates"); it != locations.end()) {
    if (!it->is_array() || static_cast<std::int64_t>(it->size()) != count) {
      throw InputError("field '$.locations.coordinates' must list " +
                       std::to_string(count) + " points");
    }
    for (const json& point : *it) {
      if (!point.is_array() || point.size() != 2 || !point[0].is_number_integer() ||
          !point[1].is_number_integer()) {
        throw InputError("field '$.locations.coordinates' holds a malformed point");
      }
      file.coordinates.push_back({point[0].get<Tick>(), point[1].get<Tick>()});
    }
  }

  TravelMatrix travel;
  try {
    const json& travel_json = Field(root, "travel", "$");
    const std::string type = String(travel_json, "type", "$.travel");
    if (type == "matrix") {
      const json& rows_json = Array(travel_json, "rows", "$.travel");
      std::vector<std::vector<Tick>> rows;
      for (const json& row : rows_json) {
        if (!row.is_array()) throw InputError("field '$.travel.rows' must hold arrays");
        std::vector<Tick> values;
        for (const json& v : row) {
          if (!v.is_number_integer()) {
            throw InputError("field '$.travel.rows' must hold integers");
          }
          values.push_back(v.get<Tick>());
        }
        rows.push_back(std::move(values));
      }
      travel = TravelMatrix(rows);
    } else if (type == "grid") {
      if (file.coordinates.empty() && count > 0) {
        throw InputError("grid travel needs '$.locations.coordinates'");
      }
      file.grid_ticks_per_unit = Integer(travel_json, "ticks_per_unit", "$.travel");
      travel = GridTravel(file.coordinates, *file.grid_ticks_per_unit);
    } else {
      throw InputError("field '$.travel.type' must be 'matrix' or 'grid'");
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid travel matrix: ") + e.what());
  }
  if (travel.size() != count) {
    throw InputError("travel matrix has dimension " + std::to_string(travel.size()) +
                     " but locations.count is " + std::to_string(count));
  }

  const bool has_plans = root.contains("plans");
  const bool has_requests = root.contains("requests");
  if (has_plans == has_requests) {
    throw InputError("exactly one of '$.plans' and '$.requests' must be present");
  }
  try {
    if (has_plans) {
      std::vector<Plan> plans;
      const json& list = Array(root, "plans", "$");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = Item("$", "plans", i);
        plans.push_back(Plan{static_cast<int>(Integer(list[i], "id", path)),
                             static_cast<LocationId>(Integer(list[i], "origin", path)),
                             static_cast<LocationId>(Integer(list[i], "destination", path)),
                             Integer(list[i], "t_or", path), Integer(list[i], "t_de", path),
                             Integer(list[i], "d_max", path)});
      }
      const CostPolicy policy = root.contains("policy")
                                    ? ParsePolicy(String(root, "policy", "$"))
                                    : CostPolicy{policy::TravelCost{}};
      file.content = ChainingInstance(std::move(plans), ParseVehicles(root), travel, policy);
    } else {
      std::vector<darp::Request> requests;
      const json& list = Array(root, "requests", "$");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string path = Item("$", "requests", i);
        requests.push_back(darp::Request{
            static_cast<int>(Integer(list[i], "id", path)),
            static_cast<LocationId>(Integer(list[i], "origin", path)),
            static_cast<LocationId>(Integer(list[i], "destination", path)),
            Integer(list[i], "t_r", path), Integer(list[i], "max_delay", path)});
      }
      const int capacity = root.contains("capacity")
                               ? static_cast<int>(Integer(root, "capacity", "$"))
                               : darp::kDefaultCapacity;
      darp::Fleet fleet = darp::AutoFleet{};
      const json& vehicles = Field(root, "vehicles", "$");
      if (vehicles.is_string()) {
        if (vehicles.get<std::string>() != "auto") {
          throw InputError("field '$.vehicles' must be a list or \"auto\"");
        }
      } else {
        fleet = ParseVehicles(root);
      }
      file.content = darp::DarpInstance(std::move(requests), travel, capacity,
                                        std::move(fleet));
    }
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return file;
}

InstanceFile LoadInstance(const std::string& path) {
  return ParseInstance(ReadFile(path));
}

std::string SerializeInstance(const InstanceFile& file) {
  const TravelMatrix& travel =
      std::holds_alternative<ChainingInstance>(file.content)
          ? std::get<ChainingInstance>(file.content).travel()
          : std::get<darp::DarpInstance>(file.content).travel();
  json root;
  root["schema_version"] = file.schema_version;
  root["locations"]["count"] = travel.size();
  if (!file.coordinates.empty()) {
    json points = json::array();
    for (const auto& p : file.coordinates) points.push_back({p[0], p[1]});
    root["locations"]["coordinates"] = points;
  }
  if (file.grid_ticks_per_unit) {
    root["travel"] = {{"type", "grid"}, {"ticks_per_unit", *file.grid_ticks_per_unit}};
  } else {
    root["travel"] = {{"type", "matrix"}, {"rows", travel.rows()}};
  }
  if (const auto* chain = std::get_if<ChainingInstance>(&file.content)) {
    json plans = json::array();
    for (const Plan& p : chain->plans()) {
      plans.push_back({{"id", p.id},
                       {"origin", p.origin},
                       {"destination", p.destination},
                       {"t_or", p.t_or},
                       {"t_de", p.t_de},
                       {"d_max", p.d_max}});
    }
    root["plans"] = plans;
    json vehicles = json::array();
    for (const Vehicle& v : chain->vehicles()) vehicles.push_back(VehicleJson(v));
    root["vehicles"] = vehicles;
    root["policy"] = PolicyToString(chain->policy());
  } else {
    const auto& instance = std::get<darp::DarpInstance>(file.content);
    json requests = json::array();
    for (const darp::Request& r : instance.requests()) {
      requests.push_back({{"id", r.id},
                          {"origin", r.origin},
                          {"destination", r.destination},
                          {"t_r", r.t_r},
                          {"max_delay", r.max_delay}});
    }
    root["requests"] = requests;
    root["capacity"] = instance.capacity();
    if (const auto* fleet = std::get_if<std::vector<Vehicle>>(&instance.fleet())) {
      json vehicles = json::array();
      for (const Vehicle& v : *fleet) vehicles.push_back(VehicleJson(v));
      root["vehicles"] = vehicles;
    } else {
      root["vehicles"] = "auto";
    }
  }
  return Dump(root);
}

std::string SerializeChainSolution(const ChainingInstance& instance,
                                   const ChainSolution& solution,
                                   bool include_timing) {
  json root;
  root["schema_version"] = kSchemaVersion;
  root["kind"] = "chain_solution";
  root["policy"] = PolicyToString(instance.policy());
  root["objective"] = solution.objective;
  json chains = json::array();
  for (const Chain& chain : solution.chains) {
    json links = json::array();
    for (std::size_t i = 0; i < chain.plans.size(); ++i) {
      links.push_back({{"plan", instance.plans().at(chain.plans[i].plan).id},
                       {"delay", chain.plans[i].delay},
                       {"cost", chain.link_costs.at(i)},
                       {"wait", chain.link_waits.at(i)}});
    }
    chains.push_back({{"vehicle", instance.vehicles().at(chain.vehicle).id},
                      {"links", links}});
  }
  root["chains"] = chains;
  json stats = {{"branch_nodes", solution.stats.branch_nodes},
                {"relaxations", solution.stats.relaxations},
                {"variants", solution.stats.variants},
                {"connections", solution.stats.connections}};
  if (include_timing) stats["wall_ms"] = solution.stats.wall_ms;
  root["stats"] = stats;
  return Dump(root);
}

ChainSolution ParseChainSolution(const ChainingInstance& instance,
                                 const std::string& text) {
  const json root = ParseJson(text);
  if (String(root, "kind", "$") != "chain_solution") {
    throw InputError("field '$.kind' must be 'chain_solution'");
  }
  ChainSolution solution;
  solution.objective = Integer(root, "objective", "$");
  const json& chains = Array(root, "chains", "$");
  try {
    for (std::size_t c = 0; c < chains.size(); ++c) {
      const std::string path = Item("$", "chains", c);
      Chain chain;
      chain.vehicle =
          instance.vehicle_index(static_cast<int>(Integer(chains[c], "vehicle", path)));
      const json& links = Array(chains[c], "links", path);
      for (std::size_t i = 0; i < links.size(); ++i) {
        const std::string lp = Item(path, "links", i);
        chain.plans.push_back(
            {instance.plan_index(static_cast<int>(Integer(links[i], "plan", lp))),
             Integer(links[i], "delay", lp)});
        chain.link_costs.push_back(Integer(links[i], "cost", lp));
        chain.link_waits.push_back(Integer(links[i], "wait", lp));
      }
      solution.chains.push_back(std::move(chain));
    }
  } catch (const std::out_of_range& e) {
    throw InputError(e.what());
  }
  if (auto it = root.find("stats"); it != root.end()) {
    solution.stats.branch_nodes = it->value("branch_nodes", 0L);
    solution.stats.relaxations = it->value("relaxations", 0L);
    solution.stats.variants = it->value("variants", 0L);
    solution.stats.connections = it->value("connections", 0L);
    solution.stats.wall_ms = it->value("wall_ms", 0.0);
  }
  return solution;
}

std::string SerializeDarpSolution(const darp::DarpInstance& instance,
                                  const darp::DarpSolution& solution,
                                  bool include_timing) {
  json root;
  root["schema_version"] = kSchemaVersion;
  root["kind"] = "darp_solution";
  root["method"] = solution.method;
  root["objective"] = solution.objective;
  if (include_timing) root["comp_time_ms"] = solution.comp_time_ms;
  json routes = json::array();
  for (const darp::VehicleRoute& route : solution.routes) {
    json stops = json::array();
    for (const darp::Stop& s : route.plan.stops) {
      stops.push_back({{"request", instance.requests().at(s.request).id},
                       {"kind", StopKindName(s.kind)},
                       {"location", s.location},
                       {"time", s.time}});
    }
    routes.push_back(
        {{"vehicle", VehicleJson(route.vehicle)}, {"cost", route.plan.cost}, {"stops", stops}});
  }
  root["routes"] = routes;
  json delays = json::array();
  for (std::size_t r = 0; r < solution.delays.size(); ++r) {
    delays.push_back({{"request", instance.requests().at(r).id},
                      {"delay", solution.delays[r]}});
  }
  root["delays"] = delays;
  return Dump(root);
}

darp::DarpSolution ParseDarpSolution(const darp::DarpInstance& instance,
                                     const std::string& text) {
  const json root = ParseJson(text);
  if (String(root, "kind", "$") != "darp_solution") {
    throw InputError("field '$.kind' must be 'darp_solution'");
  }
  darp::DarpSolution solution;
  solution.method = String(root, "method", "$");
  solution.objective = Integer(root, "objective", "$");
  solution.comp_time_ms = root.value("comp_time_ms", 0.0);
  try {
    const json& routes = Array(root, "routes", "$");
    for (std::size_t r = 0; r < routes.size(); ++r) {
      const std::string path = Item("$", "routes", r);
      darp::VehicleRoute route;
      route.vehicle = ParseVehicle(Field(routes[r], "vehicle", path), path + ".vehicle");
      route.plan.cost = Integer(routes[r], "cost", path);
      const json& stops = Array(routes[r], "stops", path);
      for (std::size_t s = 0; s < stops.size(); ++s) {
        const std::string sp = Item(path, "stops", s);
        const std::string kind = String(stops[s], "kind", sp);
        if (kind != "pickup" && kind != "dropoff") {
          throw InputError("field '" + sp + ".kind' must be 'pickup' or 'dropoff'");
        }
        route.plan.stops.push_back(darp::Stop{
            instance.request_index(static_cast<int>(Integer(stops[s], "request", sp))),
            kind == "pickup" ? darp::StopKind::kPickup : darp::StopKind::kDropoff,
            static_cast<LocationId>(Integer(stops[s], "location", sp)),
            Integer(stops[s], "time", sp)});
      }
      solution.routes.push_back(std::move(route));
    }
    solution.delays.assign(instance.requests().size(), 0);
    const json& delays = Array(root, "delays", "$");
    for (std::size_t i = 0; i < delays.size(); ++i) {
      const std::string path = Item("$", "delays", i);
      solution.delays.at(instance.request_index(
          static_cast<int>(Integer(delays[i], "request", path)))) =
          Integer(delays[i], "delay", path);
    }
  } catch (const std::out_of_range& e) {
    throw InputError(e.what());
  }
  return solution;
}

std::string SummaryCsv(const std::vector<SummaryRow>& rows, bool include_timing) {
  std::ostringstream out;
  out << "method,batch_len,total_cost,used_vehicles,comp_time_ms\n";
  for (const SummaryRow& row : rows) {
    out << row.method << ',' << row.batch_len << ',' << row.total_cost << ','
        << row.used_vehicles << ',' << (include_timing ? FormatMs(row.comp_time_ms) : "0")
        << '\n';
  }
  return out.str();
}

std::string HistogramCsv(const darp::Histogram& histogram) {
  std::ostringstream out;
  out << "bucket,mass\n";
  for (const auto& [bucket, mass] : histogram.buckets) {
    out << bucket << ',' << mass << '\n';
  }
  return out.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

InstanceFile GenerateChainInstance(const GeneratorParams& params) {
  Draw draw(params.seed);
  InstanceFile file;
  file.coordinates = DrawCoordinates(draw, params);
  file.grid_ticks_per_unit = params.ticks_per_unit;
  const TravelMatrix travel = GridTravel(file.coordinates, params.ticks_per_unit);
  const int locations = travel.size();
  std::vector<Plan> plans;
  for (int i = 0; i < params.count; ++i) {
    Plan p;
    p.id = i + 1;
    p.origin = static_cast<LocationId>(draw.Between(0, locations - 1));
    p.destination = static_cast<LocationId>(draw.Between(0, locations - 1));
    p.t_or = draw.Between(0, params.horizon);
    p.t_de = p.t_or + travel.at(p.origin, p.destination);
    p.d_max = draw.Between(params.delay_min, params.delay_max);
    plans.push_back(p);
  }
  std::vector<Vehicle> vehicles;
  if (params.dedicated_vehicles) {
    for (const Plan& p : plans) vehicles.push_back(Vehicle{p.id, p.origin, 0});
  } else {
    for (int i = 0; i < params.vehicles; ++i) {
      vehicles.push_back(Vehicle{i + 1,
                                 static_cast<LocationId>(draw.Between(0, locations - 1)),
                                 0});
    }
  }
  file.content = ChainingInstance(std::move(plans), std::move(vehicles), travel,
                                  params.policy);
  return file;
}

InstanceFile GenerateDarpInstance(const GeneratorParams& params) {
  Draw draw(params.seed);
  InstanceFile file;
  file.coordinates = DrawCoordinates(draw, params);
  file.grid_ticks_per_unit = params.ticks_per_unit;
  const TravelMatrix travel = GridTravel(file.coordinates, params.ticks_per_unit);
  const int locations = travel.size();
  std::vector<darp::Request> requests;
  for (int i = 0; i < params.count; ++i) {
    darp::Request r;
    r.id = i + 1;
    r.origin = static_cast<LocationId>(draw.Between(0, locations - 1));
    r.destination = static_cast<LocationId>(draw.Between(0, locations - 1));
    if (locations > 1) {
      while (r.destination == r.origin) {
        r.destination = static_cast<LocationId>(draw.Between(0, locations - 1));
      }
    }
    r.t_r = draw.Between(0, params.horizon);
    r.max_delay = draw.Between(params.delay_min, params.delay_max);
    requests.push_back(r);
  }
  darp::Fleet fleet = darp::AutoFleet{};
  if (params.dedicated_vehicles) {
    std::vector<Vehicle> vehicles;
    for (const darp::Request& r : requests) vehicles.push_back(Vehicle{r.id, r.origin, 0});
    fleet = std::move(vehicles);
  } else if (!params.auto_fleet) {
    std::vector<Vehicle> vehicles;
    for (int i = 0; i < params.vehicles; ++i) {
      vehicles.push_back(Vehicle{i + 1,
                                 static_cast<LocationId>(draw.Between(0, locations - 1)),
                                 0});
    }
    fleet = std::move(vehicles);
  }
  file.content = darp::DarpInstance(std::move(requests), travel, params.capacity,
                                    std::move(fleet));
  return file;
}

}  // namespace chaining::io
