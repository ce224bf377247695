#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "planfit/catalog.h"
#include "planfit/json.h"
#include "planfit/weekday.h"

namespace planfit {

/// IF <day situation> THEN <exercise> for <amount> at <intensity>.
struct PlanRule {
  std::string id;
  Weekday day = Weekday::Mon;
  std::string situation;        // "after work"
  std::string exercise_row_id;  // may be empty until resolved against a catalog
  std::string exercise_name;
  int amount_minutes = 0;
  Intensity intensity = Intensity::Moderate;

  friend bool operator==(const PlanRule&, const PlanRule&) = default;
};

/// Plan B for one or more rules: IF <obstacle clause> THEN <alternative>.
struct CopingPlan {
  std::string id;
  std::vector<std::string> parent_rule_ids;
  std::string obstacle_clause;
  std::string alternative;

  friend bool operator==(const CopingPlan&, const CopingPlan&) = default;
};

struct WeeklyPlan {
  std::vector<PlanRule> rules;
  std::vector<CopingPlan> coping_plans;

  bool empty() const noexcept { return rules.empty() && coping_plans.empty(); }
  const PlanRule* find_rule(std::string_view id) const;

  /// Throws InvalidPlan: duplicate ids, non-positive amounts, unresolved parents.
  void validate() const;

  friend bool operator==(const WeeklyPlan&, const WeeklyPlan&) = default;
};

struct RecommendationItem {
  std::string exercise_row_id;
  std::string exercise_name;
  std::string rationale;

  friend bool operator==(const RecommendationItem&, const RecommendationItem&) = default;
};

/// Weekly dose with vigorous minutes weighted: multiplier*x + y.
int effective_minutes(const WeeklyPlan& plan, int vigorous_multiplier = 2);

DaySet exercise_days(const WeeklyPlan& plan);

/// Fills empty exercise_row_id fields by name lookup. Throws UnknownExercise.
void resolve_exercises(WeeklyPlan& plan, const Catalog& catalog);

/// "<N> minutes - <intensity> intensity" with tolerant case, spacing and dash.
/// Throws UnparseableAmount.
struct Amount {
  int minutes = 0;
  Intensity intensity = Intensity::Moderate;
};
Amount parse_amount(std::string_view text);
std::string format_amount(int minutes, Intensity intensity);

/// Extracts the If/Then pairs embedded in a prose message.
/// Throws NoPlanFound, UnparseableAmount or MissingDay.
WeeklyPlan parse_plan_xml(std::string_view message);

/// Canonical writer; its output re-parses to an equal plan.
std::string serialize_plan_xml(const WeeklyPlan& plan);

/// One item per well-formed <Output> block, in document order.
std::vector<RecommendationItem> parse_recommendations_xml(std::string_view message);
std::string serialize_recommendations_xml(const std::vector<RecommendationItem>& items);

Json to_json(const PlanRule& rule);
Json to_json(const CopingPlan& coping);
Json to_json(const WeeklyPlan& plan);
Json to_json(const RecommendationItem& item);
PlanRule rule_from_json(const Json& j);
CopingPlan coping_from_json(const Json& j);
WeeklyPlan plan_from_json(const Json& j);
RecommendationItem recommendation_from_json(const Json& j);

}  // namespace planfit
