#include <benchmark/benchmark.h>

#include <fstream>
#include <memory>
#include <sstream>

#include "planfit/catalog.h"
#include "planfit/plan.h"
#include "planfit/retrieval.h"
#include "planfit/summary.h"
#include "planfit/synthesizer.h"

using namespace planfit;

namespace {

std::string source_path(const std::string& rel) { return std::string(PLANFIT_SOURCE_DIR) + "/" + rel; }

std::shared_ptr<const Catalog> catalog() {
  static const auto c = std::make_shared<const Catalog>(load_catalog_file(source_path("data/catalog.csv")));
  return c;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

PlanSummary sample_summary() {
  return summary_from_json(Json::parse(read_file(source_path("tests/fixtures/summary.json"))));
}

WeeklyPlan sample_plan() {
  return synthesize(sample_summary(), *catalog()).plan;
}

void bm_index_build(benchmark::State& state) {
  for (auto _ : state) {
    ExerciseIndex index(catalog(), RetrievalConfig{});
    benchmark::DoNotOptimize(index.vectors().data());
  }
}
BENCHMARK(bm_index_build);

void bm_retrieve_top_k(benchmark::State& state) {
  const ExerciseIndex index(catalog(), RetrievalConfig{});
  const RetrievalConfig cfg;
  const std::vector<std::string> query{"lose", "weight", "knee", "friendly", "cardio"};
  for (auto _ : state) benchmark::DoNotOptimize(retrieve_top_k(query, index, cfg));
}
BENCHMARK(bm_retrieve_top_k);

void bm_synthesize(benchmark::State& state) {
  const PlanSummary summary = sample_summary();
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(summary, *catalog()));
}
BENCHMARK(bm_synthesize);

void bm_serialize_plan(benchmark::State& state) {
  const WeeklyPlan plan = sample_plan();
  for (auto _ : state) benchmark::DoNotOptimize(serialize_plan_xml(plan));
}
BENCHMARK(bm_serialize_plan);

void bm_parse_plan(benchmark::State& state) {
  const std::string xml = serialize_plan_xml(sample_plan());
  for (auto _ : state) benchmark::DoNotOptimize(parse_plan_xml(xml));
}
BENCHMARK(bm_parse_plan);

void bm_apply_edits(benchmark::State& state) {
  const PlanSummary base = sample_summary();
  const std::vector<EditCommand> batch{
      EditCommand::add(Target::Goal, Json{{"label", "Sleep better"}}),
      EditCommand::add(Target::Obstacle, Json{{"label", "Late meetings"}, {"linked_availability_ids", {"a1"}}}),
      EditCommand::update(Target::Availability, "a2", Json{{"time_spec", "before 9 am"}}),
      EditCommand::remove(Target::Goal, "g1")};
  for (auto _ : state) benchmark::DoNotOptimize(apply_edits(base, batch, catalog().get()));
}
BENCHMARK(bm_apply_edits);

}  // namespace

BENCHMARK_MAIN();
