#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "planfit/catalog.h"
#include "planfit/json.h"
#include "planfit/plan.h"
#include "planfit/weekday.h"

namespace planfit {

struct GuidelineConfig {
  int weekly_minimum_effective_minutes = 150;
  int vigorous_multiplier = 2;
  bool require_rest_gap = true;
  bool week_is_cyclic = true;

  void validate() const;
};

enum class WaiverKind { UserFixedDays, UserReducedAmount, InjuryExclusion };

std::string_view to_string(WaiverKind k) noexcept;
WaiverKind waiver_kind_from_string(std::string_view s);

/// A user mandate that excuses a guideline violation. For UserFixedDays,
/// `days` lists the days the user insisted on (empty = every day).
struct Waiver {
  WaiverKind kind = WaiverKind::UserFixedDays;
  std::string note;
  DaySet days;

  friend bool operator==(const Waiver&, const Waiver&) = default;
};

using DayPair = std::pair<Weekday, Weekday>;

struct GuidelineReport {
  int effective_minutes = 0;
  bool amount_ok = false;
  std::set<Category> categories_present;
  bool balance_ok = false;
  bool rest_ok = false;
  std::vector<DayPair> violating_day_pairs;
  std::vector<Waiver> waivers;

  bool all_ok() const noexcept { return amount_ok && balance_ok && rest_ok; }

  friend bool operator==(const GuidelineReport&, const GuidelineReport&) = default;
};

struct AmountCheck {
  int effective_minutes = 0;
  bool ok = false;
};
/// ok iff effective minutes reach the weekly minimum (>=).
AmountCheck check_amount(const WeeklyPlan& plan, const GuidelineConfig& config);

struct BalanceCheck {
  std::set<Category> categories_present;
  bool ok = false;
};
/// Throws UnknownExercise for rules whose exercise is not in the catalog.
BalanceCheck check_balance(const WeeklyPlan& plan, const Catalog& catalog);

struct RestCheck {
  std::vector<DayPair> violating_day_pairs;
  bool ok = false;
};
/// Consecutive exercise days, (Sun, Mon) included when the week is cyclic.
/// Violations covered by a UserFixedDays waiver do not fail the check.
RestCheck check_rest(const WeeklyPlan& plan, const GuidelineConfig& config, const std::vector<Waiver>& waivers = {});

/// Adjacent pairs inside a day set (the core of check_rest).
std::vector<DayPair> adjacent_pairs(DaySet days, bool cyclic);

GuidelineReport evaluate(const WeeklyPlan& plan, const Catalog& catalog, const GuidelineConfig& config = {},
                         const std::vector<Waiver>& waivers = {});

Json to_json(const Waiver& w);
Waiver waiver_from_json(const Json& j);
Json to_json(const GuidelineReport& report);

}  // namespace planfit
