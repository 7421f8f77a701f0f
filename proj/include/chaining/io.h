#ifndef CHAINING_IO_H_
#define CHAINING_IO_H_

// JSON instance and solution files, CSV metric tables and the seeded
// instance generator. All numbers in files are integer ticks.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "chaining/chainsolve.h"
#include "chaining/darp.h"
#include "chaining/model.h"

namespace chaining::io {

inline constexpr int kSchemaVersion = 1;

// Malformed or semantically invalid input. The message names the line (for
// syntax errors) or the field path and violated invariant.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Coordinates = std::vector<std::array<Tick, 2>>;

struct InstanceFile {
  int schema_version = kSchemaVersion;
  // When set, travel times are ticks_per_unit times the Manhattan distance
  // between coordinates and the matrix is not written out.
  std::optional<Tick> grid_ticks_per_unit;
  Coordinates coordinates;
  std::variant<ChainingInstance, darp::DarpInstance> content;

  bool operator==(const InstanceFile&) const = default;
};

TravelMatrix GridTravel(const Coordinates& coordinates, Tick ticks_per_unit);

InstanceFile ParseInstance(const std::string& text);
InstanceFile LoadInstance(const std::string& path);
std::string SerializeInstance(const InstanceFile& file);

std::string SerializeChainSolution(const ChainingInstance& instance,
                                   const ChainSolution& solution,
                                   bool include_timing = true);
ChainSolution ParseChainSolution(const ChainingInstance& instance,
                                 const std::string& text);

std::string SerializeDarpSolution(const darp::DarpInstance& instance,
                                  const darp::DarpSolution& solution,
                                  bool include_timing = true);
darp::DarpSolution ParseDarpSolution(const darp::DarpInstance& instance,
                                     const std::string& text);

struct SummaryRow {
  std::string method;
  Tick batch_len = 0;
  Cost total_cost = 0;
  int used_vehicles = 0;
  double comp_time_ms = 0.0;
};

// Columns: method,batch_len,total_cost,used_vehicles,comp_time_ms
std::string SummaryCsv(const std::vector<SummaryRow>& rows, bool include_timing = true);
// Columns: bucket,mass
std::string HistogramCsv(const darp::Histogram& histogram);

void WriteFile(const std::string& path, const std::string& contents);
std::string ReadFile(const std::string& path);

struct GeneratorParams {
  std::uint64_t seed = 1;
  int locations = 12;
  // Coordinates are drawn from [0, grid) x [0, grid).
  int grid = 10;
  Tick ticks_per_unit = 1;
  Tick horizon = 60;
  // Number of plans or requests.
  int count = 6;
  Tick delay_min = 0;
  Tick delay_max = 10;
  int vehicles = 2;
  // One vehicle per plan or request, parked at its origin with t_st = 0.
  bool dedicated_vehicles = false;
  // DARP only: one virtual vehicle per batch plan.
  bool auto_fleet = false;
  int capacity = darp::kDefaultCapacity;
  CostPolicy policy = policy::TravelCost{};
};

// Plans start uniformly over the horizon and last their direct travel time.
InstanceFile GenerateChainInstance(const GeneratorParams& params);
// Requests with uniform origins, destinations and desired departure times.
InstanceFile GenerateDarpInstance(const GeneratorParams& params);

}  // namespace chaining::io

#endif  // CHAINING_IO_H_
