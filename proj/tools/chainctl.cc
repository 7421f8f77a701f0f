#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "chaining/chainsolve.h"
#include "chaining/darp.h"
#include "chaining/io.h"
#include "chaining/oracle.h"

namespace {

using namespace chaining;

enum Exit { kOk = 0, kInfeasible = 1, kInputError = 2, kGuardExceeded = 3 };

// Raised for infeasible instances so that main maps them to exit code 1.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int DefaultThreads() {
  if (const char* env = std::getenv("CHAINCTL_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring CHAINCTL_THREADS=" << env << "\n";
  }
  return 1;
}

ChainingInstance LoadChaining(const std::string& path) {
  io::InstanceFile file = io::LoadInstance(path);
  if (auto* instance = std::get_if<ChainingInstance>(&file.content)) return *instance;
  throw io::InputError("'" + path + "' holds a DARP instance, expected plans");
}

darp::DarpInstance LoadDarp(const std::string& path) {
  io::InstanceFile file = io::LoadInstance(path);
  if (auto* instance = std::get_if<darp::DarpInstance>(&file.content)) return *instance;
  throw io::InputError("'" + path + "' holds a chaining instance, expected requests");
}

struct ChainArgs {
  std::string instance;
  std::string policy;
  std::string out;
  std::string variants = "auto";
  bool literal = false;
  bool no_timing = false;
};

int ChainSolve(const ChainArgs& args) {
  ChainingInstance instance = LoadChaining(args.instance);
  if (!args.policy.empty()) instance = instance.WithPolicy(ParsePolicy(args.policy));
  SolveOptions options;
  if (args.variants == "minimal") options.variants = VariantSet::kMinimal;
  if (args.variants == "all") options.variants = VariantSet::kAll;
  if (args.literal) options.routing = VariantRouting::kBasePlanNodes;

  const ChainResult result = SolveChaining(instance, options);
  if (const auto* infeasible = std::get_if<ChainingInfeasible>(&result)) {
    throw InfeasibleError(infeasible->reason);
  }
  const auto& solution = std::get<ChainSolution>(result);
  const ValidationReport report =
      ValidateChains(instance, solution.chains, solution.objective);
  if (!report.ok()) {
    std::cerr << "error: solution failed validation\n" << report.ToString();
    return kInfeasible;
  }
  const std::string text =
      io::SerializeChainSolution(instance, solution, !args.no_timing);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    io::WriteFile(args.out, text);
  }
  std::cerr << "objective " << solution.objective << ", " << solution.chains.size()
            << " chains, " << solution.stats.branch_nodes << " branch nodes\n";
  return kOk;
}

int ChainOracle(const ChainArgs& args) {
  ChainingInstance instance = LoadChaining(args.instance);
  if (!args.policy.empty()) instance = instance.WithPolicy(ParsePolicy(args.policy));
  const oracle::OracleResult result = oracle::BruteForceOptimal(instance);
  if (!result.objective) throw InfeasibleError("no feasible chain set exists");
  const ValidationReport report = ValidateChains(instance, result.witness, result.objective);
  if (!report.ok()) {
    std::cerr << "error: oracle witness failed validation\n" << report.ToString();
    return kInfeasible;
  }
  ChainSolution solution;
  solution.chains = result.witness;
  solution.objective = *result.objective;
  const std::string text = io::SerializeChainSolution(instance, solution, false);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    io::WriteFile(args.out, text);
  }
  std::cerr << "objective " << *result.objective << " over " << result.feasible_sets
            << " feasible chain sets\n";
  return kOk;
}

struct DarpArgs {
  std::string instance;
  std::string method = "proposed";
  Tick batch_secs = 60;
  long time_limit_ms = 0;
  std::string policy = "cost";
  std::string out;
  std::string metrics_dir;
  int threads = 1;
  bool no_timing = false;
};

int DarpRun(const DarpArgs& args) {
  const darp::DarpInstance instance = LoadDarp(args.instance);
  darp::DarpSolution solution;
  Tick batch_len = args.batch_secs;
  if (args.method == "ih") {
    if (std::holds_alternative<darp::AutoFleet>(instance.fleet())) {
      throw io::InputError("the insertion heuristic needs an explicit vehicle list");
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      solution = darp::InsertionHeuristic(instance);
    } catch (const std::runtime_error& e) {
      throw InfeasibleError(e.what());
    }
    solution.comp_time_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
    batch_len = 0;
  } else {
    darp::ProposedOptions options;
    options.policy = ParsePolicy(args.policy);
    options.threads = args.threads;
    if (args.time_limit_ms > 0) {
      options.batch.time_limit = std::chrono::milliseconds(args.time_limit_ms);
    }
    if (args.method == "single-batch") {
      batch_len = std::numeric_limits<Tick>::max() / 4;
    } else if (args.batch_secs < 1) {
      throw io::InputError("--batch-secs must be at least 1");
    }
    options.batch_len = batch_len;
    try {
      solution = darp::RunProposed(instance, options);
    } catch (const std::length_error&) {
      throw;
    } catch (const std::runtime_error& e) {
      throw InfeasibleError(e.what());
    }
    if (args.method == "single-batch") {
      solution.method.replace(0, std::string("proposed").size(), "single-batch");
      batch_len = 0;
    }
  }

  const std::vector<std::string> problems = darp::ValidateSolution(instance, solution);
  if (!problems.empty()) {
    std::cerr << "error: solution failed validation\n";
    for (const std::string& p : problems) std::cerr << "  " << p << "\n";
    return kInfeasible;
  }
  const darp::Metrics metrics = darp::EvaluateMetrics(solution, instance);
  const std::string text = io::SerializeDarpSolution(instance, solution, !args.no_timing);
  if (args.out.empty()) {
    std::cout << text;
  } else {
    io::WriteFile(args.out, text);
  }
  if (!args.metrics_dir.empty()) {
    std::filesystem::create_directories(args.metrics_dir);
    const std::filesystem::path dir(args.metrics_dir);
    io::SummaryRow row{solution.method, batch_len, metrics.total_cost,
                       metrics.used_vehicles, solution.comp_time_ms};
    io::WriteFile((dir / "summary.csv").string(), io::SummaryCsv({row}, !args.no_timing));
    io::WriteFile((dir / "occupancy.csv").string(), io::HistogramCsv(metrics.occupancy));
    io::WriteFile((dir / "delay.csv").string(), io::HistogramCsv(metrics.delay));
  }
  std::cerr << solution.method << ": cost " << metrics.total_cost << ", "
            << metrics.used_vehicles << " vehicles\n";
  return kOk;
}

int Generate(const std::string& kind, const io::GeneratorParams& params,
             const std::string& policy, const std::string& out) {
  io::GeneratorParams p = params;
  p.policy = ParsePolicy(policy);
  const io::InstanceFile file =
      kind == "chain" ? io::GenerateChainInstance(p) : io::GenerateDarpInstance(p);
  const std::string text = io::SerializeInstance(file);
  if (out.empty()) {
    std::cout << text;
  } else {
    io::WriteFile(out, text);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact plan chaining and batch-then-chain dial-a-ride"};
  app.require_subcommand(1);

  ChainArgs chain_args;
  auto* chain = app.add_subcommand("chain", "Plan chaining instances");
  chain->require_subcommand(1);
  auto* solve = chain->add_subcommand("solve", "Solve to optimality");
  auto* oracle_cmd = chain->add_subcommand("oracle", "Brute-force reference optimum");
  for (auto* sub : {solve, oracle_cmd}) {
    sub->add_option("--instance", chain_args.instance, "Instance file")->required();
    sub->add_option("--policy", chain_args.policy,
                    "fleet | cost | cost-waitcap:N | cost-waitpen:A (default: from file)");
    sub->add_option("--out", chain_args.out, "Solution file (default: stdout)");
  }
  solve->add_option("--variants", chain_args.variants, "auto | minimal | all")
      ->check(CLI::IsMember({"auto", "minimal", "all"}));
  solve->add_flag("--literal-routing", chain_args.literal,
                  "Let delayed arrivals leave through base-plan connections");
  solve->add_flag("--no-timing", chain_args.no_timing, "Omit wall-clock fields");

  DarpArgs darp_args;
  darp_args.threads = DefaultThreads();
  auto* darp_cmd = app.add_subcommand("darp", "Dial-a-ride instances");
  darp_cmd->require_subcommand(1);
  auto* run = darp_cmd->add_subcommand("run", "Solve with one method");
  run->add_option("--instance", darp_args.instance, "Instance file")->required();
  run->add_option("--method", darp_args.method, "proposed | ih | single-batch")
      ->check(CLI::IsMember({"proposed", "ih", "single-batch"}));
  run->add_option("--batch-secs", darp_args.batch_secs, "Batch length in ticks");
  run->add_option("--time-limit-ms", darp_args.time_limit_ms,
                  "Wall-clock budget per batch partitioning");
  run->add_option("--policy", darp_args.policy, "Chaining cost policy");
  run->add_option("--out", darp_args.out, "Solution file (default: stdout)");
  run->add_option("--metrics-dir", darp_args.metrics_dir,
                  "Directory for summary.csv, occupancy.csv and delay.csv");
  run->add_option("--threads", darp_args.threads,
                  "Worker threads for batch solving (default: CHAINCTL_THREADS or 1)")
      ->check(CLI::PositiveNumber);
  run->add_flag("--no-timing", darp_args.no_timing, "Omit wall-clock fields");

  io::GeneratorParams gen_params;
  std::string gen_kind;
  std::string gen_policy = "cost";
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "Generate a seeded random instance");
  gen->add_option("kind", gen_kind, "chain | darp")
      ->required()
      ->check(CLI::IsMember({"chain", "darp"}));
  gen->add_option("--seed", gen_params.seed);
  gen->add_option("--locations", gen_params.locations)->check(CLI::PositiveNumber);
  gen->add_option("--grid", gen_params.grid)->check(CLI::PositiveNumber);
  gen->add_option("--ticks-per-unit", gen_params.ticks_per_unit)->check(CLI::NonNegativeNumber);
  gen->add_option("--horizon", gen_params.horizon)->check(CLI::NonNegativeNumber);
  gen->add_option("--count", gen_params.count, "Plans or requests")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--delay-min", gen_params.delay_min)->check(CLI::NonNegativeNumber);
  gen->add_option("--delay-max", gen_params.delay_max)->check(CLI::NonNegativeNumber);
  gen->add_option("--vehicles", gen_params.vehicles)->check(CLI::NonNegativeNumber);
  gen->add_flag("--dedicated-vehicles", gen_params.dedicated_vehicles,
                "One vehicle at each plan or request origin");
  gen->add_flag("--auto-fleet", gen_params.auto_fleet,
                "DARP: one virtual vehicle per produced plan");
  gen->add_option("--capacity", gen_params.capacity)->check(CLI::PositiveNumber);
  gen->add_option("--policy", gen_policy, "Chaining cost policy");
  gen->add_option("--out", gen_out, "Instance file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*solve) return ChainSolve(chain_args);
    if (*oracle_cmd) return ChainOracle(chain_args);
    if (*run) return DarpRun(darp_args);
    if (*gen) {
      if (gen_params.delay_min > gen_params.delay_max) {
        throw io::InputError("--delay-min exceeds --delay-max");
      }
      return Generate(gen_kind, gen_params, gen_policy, gen_out);
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::length_error& e) {
    std::cerr << "guard exceeded: " << e.what() << "\n";
    return kGuardExceeded;
  } catch (const io::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
