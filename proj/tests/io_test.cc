#include <gtest/gtest.h>

#include "chaining/chainsolve.h"
#include "chaining/darp.h"
#include "chaining/io.h"
#include "test_util.h"

#ifndef TEST_DATA_DIR
#error "TEST_DATA_DIR must be defined"
#endif

namespace chaining::io {
namespace {

std::string Data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

std::string ErrorOf(const std::string& text) {
  try {
    ParseInstance(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

TEST(LoadInstance, E1GoldenFile) {
  const InstanceFile file = LoadInstance(Data("e1.json"));
  ASSERT_TRUE(std::holds_alternative<ChainingInstance>(file.content));
  EXPECT_EQ(std::get<ChainingInstance>(file.content), testing::E1());
}

TEST(LoadInstance, RoundTripKeepsBytes) {
  const InstanceFile file = LoadInstance(Data("e1.json"));
  const std::string once = SerializeInstance(file);
  EXPECT_EQ(ParseInstance(once), file);
  EXPECT_EQ(SerializeInstance(ParseInstance(once)), once);
}

TEST(LoadInstance, PlanTimesOutOfOrder) {
  std::string text = ReadFile(Data("e1.json"));
  text.replace(text.find("\"t_or\": 5"), 9, "\"t_or\": 50");
  const std::string error = ErrorOf(text);
  EXPECT_NE(error.find("plan 1"), std::string::npos) << error;
}

TEST(LoadInstance, NegativeMatrixEntry) {
  const std::string error = ErrorOf(R"({"schema_version": 1,
    "locations": {"count": 2},
    "travel": {"type": "matrix", "rows": [[0, -3], [3, 0]]},
    "plans": [], "vehicles": []})");
  EXPECT_NE(error.find("negative"), std::string::npos) << error;
}

TEST(LoadInstance, SyntaxErrorNamesTheLine) {
  const std::string error = ErrorOf("{\n  \"schema_version\": 1,\n  oops\n}");
  EXPECT_NE(error.find("line 3"), std::string::npos) << error;
}

TEST(LoadInstance, FieldErrorsNameThePath) {
  std::string text = ReadFile(Data("e1.json"));
  text.replace(text.find("\"d_max\": 3"), 10, "\"d_max\": \"3\"");
  EXPECT_NE(ErrorOf(text).find("$.plans[1].d_max"), std::string::npos) << ErrorOf(text);
}

TEST(LoadInstance, StructuralErrors) {
  EXPECT_NE(ErrorOf(R"({"schema_version": 2})").find("schema_version"), std::string::npos);
  EXPECT_NE(ErrorOf(R"({"schema_version": 1, "locations": {"count": 1},
    "travel": {"type": "matrix", "rows": [[0]]}, "vehicles": []})")
                .find("exactly one"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"schema_version": 1, "locations": {"count": 2},
    "travel": {"type": "matrix", "rows": [[0]]}, "plans": [], "vehicles": []})")
                .find("dimension"),
            std::string::npos);
  EXPECT_NE(ErrorOf(R"({"schema_version": 1, "locations": {"count": 1},
    "travel": {"type": "matrix", "rows": [[0]]},
    "plans": [{"id": 1, "origin": 4, "destination": 0, "t_or": 0, "t_de": 0, "d_max": 0}],
    "vehicles": []})")
                .find("location"),
            std::string::npos);
  EXPECT_THROW(LoadInstance(Data("missing.json")), InputError);
}

TEST(ChainSolution, RoundTrip) {
  const ChainingInstance e1 = testing::E1();
  const ChainSolution s = std::get<ChainSolution>(SolveChaining(e1));
  const std::string text = SerializeChainSolution(e1, s, false);
  const ChainSolution back = ParseChainSolution(e1, text);
  EXPECT_EQ(back.chains, s.chains);
  EXPECT_EQ(back.objective, s.objective);
  EXPECT_EQ(SerializeChainSolution(e1, back, false), text);
  EXPECT_EQ(text.find("wall_ms"), std::string::npos);
}

TEST(DarpSolution, RoundTrip) {
  GeneratorParams params;
  params.seed = 4;
  params.count = 8;
  params.vehicles = 8;
  const InstanceFile file = GenerateDarpInstance(params);
  const auto& inst = std::get<darp::DarpInstance>(file.content);
  darp::ProposedOptions options;
  options.batch_len = 10;
  darp::DarpSolution s = darp::RunProposed(inst, options);
  const std::string text = SerializeDarpSolution(inst, s, true);
  EXPECT_EQ(ParseDarpSolution(inst, text), s);
  EXPECT_EQ(ParseInstance(SerializeInstance(file)), file);
}

TEST(DarpInstance, AutoFleetRoundTrip) {
  GeneratorParams params;
  params.auto_fleet = true;
  const InstanceFile file = GenerateDarpInstance(params);
  EXPECT_TRUE(std::holds_alternative<darp::AutoFleet>(
      std::get<darp::DarpInstance>(file.content).fleet()));
  EXPECT_EQ(ParseInstance(SerializeInstance(file)), file);
}

TEST(MatrixInstance, RoundTrip) {
  InstanceFile file;
  file.content = testing::E1(policy::WaitPenalized{1, 3});
  EXPECT_EQ(ParseInstance(SerializeInstance(file)), file);
}

TEST(Generator, SameSeedSameBytes) {
  GeneratorParams params;
  params.seed = 77;
  params.count = 20;
  EXPECT_EQ(SerializeInstance(GenerateChainInstance(params)),
            SerializeInstance(GenerateChainInstance(params)));
  EXPECT_EQ(SerializeInstance(GenerateDarpInstance(params)),
            SerializeInstance(GenerateDarpInstance(params)));
  GeneratorParams other = params;
  other.seed = 78;
  EXPECT_NE(SerializeInstance(GenerateChainInstance(params)),
            SerializeInstance(GenerateChainInstance(other)));
}

TEST(Generator, EmptyInstance) {
  GeneratorParams params;
  params.count = 0;
  const InstanceFile file = GenerateChainInstance(params);
  EXPECT_EQ(std::get<ChainingInstance>(file.content).num_plans(), 0);
  EXPECT_EQ(ParseInstance(SerializeInstance(file)), file);
}

TEST(Generator, ZeroDelayRange) {
  GeneratorParams params;
  params.count = 15;
  params.delay_max = 0;
  for (const Plan& p : std::get<ChainingInstance>(GenerateChainInstance(params).content).plans()) {
    EXPECT_EQ(p.d_max, 0);
  }
}

TEST(Generator, DedicatedVehiclesSitAtPlanOrigins) {
  GeneratorParams params;
  params.dedicated_vehicles = true;
  const auto inst = std::get<ChainingInstance>(GenerateChainInstance(params).content);
  ASSERT_EQ(inst.num_vehicles(), inst.num_plans());
  for (int i = 0; i < inst.num_plans(); ++i) {
    EXPECT_EQ(inst.vehicles()[i].start, inst.plans()[i].origin);
  }
}

TEST(Csv, Layout) {
  EXPECT_EQ(SummaryCsv({SummaryRow{"ih", 0, 12, 2, 1.5}}),
            "method,batch_len,total_cost,used_vehicles,comp_time_ms\nih,0,12,2,1.500\n");
  EXPECT_EQ(SummaryCsv({SummaryRow{"ih", 0, 12, 2, 1.5}}, false),
            "method,batch_len,total_cost,used_vehicles,comp_time_ms\nih,0,12,2,0\n");
  darp::Histogram h;
  h.buckets = {{0, 3}, {60, 1}};
  EXPECT_EQ(HistogramCsv(h), "bucket,mass\n0,3\n60,1\n");
}

TEST(GridTravel, Manhattan) {
  const TravelMatrix m = GridTravel({{0, 0}, {3, 4}}, 2);
  EXPECT_EQ(m.at(0, 1), 14);
  EXPECT_EQ(m.at(1, 0), 14);
}

}  // namespace
}  // namespace chaining::io
