#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "planfit/guideline.h"
#include "planfit/orchestrator.h"
#include "planfit/retrieval.h"

namespace planfit {

/// A scripted test user. Constraint lists are free text; the
/// selection and iteration turns are scripted choices.
struct PersonaFixture {
  std::string id;  // "P1".."P18"
  std::string user_name;
  std::vector<std::string> goals;
  std::vector<std::string> availabilities;
  std::vector<std::string> obstacles;
  std::vector<std::string> scripted_selection;  // catalog exercise names
  std::string balance_followup = "No, that's fine.";
  std::vector<std::string> iteration_scenario;  // empty: satisfied, accept progression
  std::string note;

  void validate() const;  // throws InvalidArgument
};

PersonaFixture persona_from_json(const Json& j);
Json to_json(const PersonaFixture& p);

/// Every *.json fixture in `dir`, ordered by numeric id. Throws NoFixtures.
std::vector<PersonaFixture> load_personas(const std::string& dir);

/// User turns the harness sends before the iteration phase, in order.
/// Selection and balance turns are included; the balance answer is only sent
/// when the agent asks for the other exercise type.
struct PersonaScript {
  std::vector<std::string> goal_turns;
  std::vector<std::string> availability_turns;
  std::vector<std::string> obstacle_turns;  // one per availability
  std::string selection_turn;
  std::string approval_turn = "Looks good, thanks!";
};
PersonaScript script_for(const PersonaFixture& p);

struct PhaseResult {
  std::optional<WeeklyPlan> plan;
  GuidelineReport report;
  bool amount_strict = false;  // minimum reached without any waiver
  std::vector<Advisory> advisories;
};

struct PersonaRun {
  std::string id;
  bool feasible = false;  // available days x hard cap can reach the target
  bool completed = false;
  std::string error;      // set when the pipeline failed
  std::vector<Turn> transcript;
  PhaseResult initial;
  PhaseResult final_phase;
  std::string session_json;  // canonical dump of the final session
};

struct EvalConfig {
  OrchestratorConfig orchestrator;
  std::string data_dir;  // per-persona logs under <data_dir>/<lowercase id>; empty keeps them in memory
};

/// Drives one persona to Done through the service layer in template mode.
/// Pipeline errors are reported in PersonaRun::error, never thrown.
PersonaRun run_persona(const PersonaFixture& fixture, std::shared_ptr<const Catalog> catalog,
                       std::shared_ptr<const ExerciseIndex> index, const EvalConfig& config = {});

struct ComplianceCount {
  int amount = 0;  // waivers applied
  int amount_strict = 0;
  int balance = 0;
  int rest = 0;
};

struct AdherenceTable {
  std::vector<PersonaRun> runs;
  int personas = 0;
  int feasible = 0;
  int completed = 0;
  ComplianceCount initial;
  ComplianceCount final_phase;

  Json to_json() const;           // deterministic; used for the golden file
  std::string to_markdown() const;
};

/// Runs every fixture (in parallel, results in fixture order). Throws NoFixtures.
AdherenceTable run_suite(const std::vector<PersonaFixture>& fixtures, std::shared_ptr<const Catalog> catalog,
                         std::shared_ptr<const ExerciseIndex> index, const EvalConfig& config = {});

/// Reference amount-compliance counts shown beside the harness results.
inline constexpr int kReferenceInitialAmount = 15;
inline constexpr int kReferenceFinalAmount = 14;
inline constexpr int kReferencePersonas = 18;

}  // namespace planfit
