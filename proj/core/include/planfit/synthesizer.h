#pragma once

#include <string>
#include <vector>

#include "planfit/availability.h"
#include "planfit/catalog.h"
#include "planfit/guideline.h"
#include "planfit/json.h"
#include "planfit/plan.h"
#include "planfit/summary.h"

namespace planfit {

struct SynthesisConfig {
  int target_effective_minutes = 150;
  int default_session_minutes = 30;
  int soft_session_cap = 60;
  int hard_session_cap = 90;
  int progression_percent = 10;
  int increment_minutes = 5;
  GuidelineConfig guideline;

  void validate() const;  // default <= soft <= hard, positive increment
};

enum class AdvisoryKind { Balance, InsufficientAmount, RestConcession, AvailabilityConflict };

std::string_view to_string(AdvisoryKind k) noexcept;
AdvisoryKind advisory_kind_from_string(std::string_view s);

/// Structured note for the orchestrator and UI.
struct Advisory {
  AdvisoryKind kind = AdvisoryKind::Balance;
  std::string message;

  friend bool operator==(const Advisory&, const Advisory&) = default;
};

Json to_json(const Advisory& a);
Advisory advisory_from_json(const Json& j);
Json to_json(const std::vector<Advisory>& advisories);

struct DayChoice {
  std::vector<Weekday> days;          // Monday-first
  std::vector<DayPair> concessions;   // adjacent pairs admitted to reach the target
};

/// Greedy alternate-day pick over the available days, then smallest-violation
/// admission while days x hard cap (intensity weighted) cannot reach the target.
DayChoice choose_days(const std::vector<AvailabilitySlot>& slots, const std::vector<const ExerciseEntry*>& exercises,
                      const SynthesisConfig& config);

struct Allocation {
  std::vector<PlanRule> rules;
  int effective_minutes = 0;
  bool insufficient = false;
};

/// Round-robin exercises over days, then raise every session in 5-minute
/// steps (soft cap first, then hard cap) until the target is met.
/// Throws NoExercisesSelected.
Allocation allocate_amounts(const std::vector<Weekday>& days, const std::vector<const ExerciseEntry*>& exercises,
                            const SynthesisConfig& config, const std::vector<AvailabilitySlot>& slots = {});

/// One coping plan per (exercise day, applicable obstacle). Obstacles linked
/// to availabilities apply to the days those availabilities cover; unlinked
/// ones (or links that match no scheduled day) apply everywhere.
std::vector<CopingPlan> attach_coping_plans(const std::vector<PlanRule>& rules, const std::vector<SummaryEntity>& obstacles,
                                            const std::vector<AvailabilitySlot>& slots, const SynthesisConfig& config);

struct SynthesisResult {
  WeeklyPlan plan;
  GuidelineReport report;
  std::vector<Advisory> advisories;
  std::vector<DayPair> concessions;
  bool insufficient = false;
};

/// Throws NoAvailability, NoExercisesSelected, UnknownExercise.
SynthesisResult synthesize(const PlanSummary& summary, const Catalog& catalog, const SynthesisConfig& config = {},
                           const std::vector<Waiver>& waivers = {});

/// Effective-minute step for one progression round: percent of the current
/// total rounded to the nearest 5 (half up), at least 5.
int progression_step(int effective, const SynthesisConfig& config);

/// Grows sessions by the progression step (or the largest amount <= step that
/// 5-minute increments within the hard cap allow). Throws CapsSaturated.
WeeklyPlan apply_progression(const WeeklyPlan& plan, const SynthesisConfig& config = {});

struct RepairResult {
  WeeklyPlan plan;
  std::vector<Advisory> advisories;
};

/// Minimal fix-up of an externally produced plan: extend sessions for the
/// amount, move sessions off adjacent days, advise on balance.
/// Throws UnrepairableWithinConstraints for a plan without rules, UnknownExercise.
RepairResult repair(const WeeklyPlan& plan, const PlanSummary& summary, const Catalog& catalog,
                    const SynthesisConfig& config = {});

}  // namespace planfit
