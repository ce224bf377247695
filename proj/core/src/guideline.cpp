#include "planfit/guideline.h"

#include <algorithm>

#include "planfit/error.h"

namespace planfit {

void GuidelineConfig::validate() const {
  if (weekly_minimum_effective_minutes <= 0) throw Error(ErrorCode::InvalidConfig, "weekly_minimum_effective_minutes");
  if (vigorous_multiplier < 1) throw Error(ErrorCode::InvalidConfig, "vigorous_multiplier");
}

std::string_view to_string(WaiverKind k) noexcept {
  switch (k) {
    case WaiverKind::UserFixedDays: return "user_fixed_days";
    case WaiverKind::UserReducedAmount: return "user_reduced_amount";
    case WaiverKind::InjuryExclusion: return "injury_exclusion";
  }
  return "user_fixed_days";
}

WaiverKind waiver_kind_from_string(std::string_view s) {
  for (auto k : {WaiverKind::UserFixedDays, WaiverKind::UserReducedAmount, WaiverKind::InjuryExclusion}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorCode::InvalidArgument, std::string(s), "unknown waiver kind");
}

namespace {

bool has_waiver(const std::vector<Waiver>& waivers, WaiverKind kind) {
  return std::any_of(waivers.begin(), waivers.end(), [&](const Waiver& w) { return w.kind == kind; });
}

bool covered(const DayPair& pair, const std::vector<Waiver>& waivers) {
  return std::any_of(waivers.begin(), waivers.end(), [&](const Waiver& w) {
    if (w.kind != WaiverKind::UserFixedDays) return false;
    return w.days.empty() || (w.days.contains(pair.first) && w.days.contains(pair.second));
  });
}

}  // namespace

AmountCheck check_amount(const WeeklyPlan& plan, const GuidelineConfig& config) {
  AmountCheck out;
  out.effective_minutes = effective_minutes(plan, config.vigorous_multiplier);
  out.ok = out.effective_minutes >= config.weekly_minimum_effective_minutes;
  return out;
}

BalanceCheck check_balance(const WeeklyPlan& plan, const Catalog& catalog) {
  BalanceCheck out;
  for (const auto& r : plan.rules) {
    const ExerciseEntry* e = r.exercise_row_id.empty() ? catalog.find_by_name(r.exercise_name)
                                                       : catalog.find(r.exercise_row_id);
    if (e == nullptr) {
      throw Error(ErrorCode::UnknownExercise, r.exercise_row_id.empty() ? r.exercise_name : r.exercise_row_id);
    }
    out.categories_present.insert(e->category);
  }
  out.ok = out.categories_present.count(Category::Cardio) > 0 && out.categories_present.count(Category::Strength) > 0;
  return out;
}

std::vector<DayPair> adjacent_pairs(DaySet days, bool cyclic) {
  std::vector<DayPair> out;
  for (int i = 0; i < 6; ++i) {
    Weekday a = weekday_at(i);
    Weekday b = weekday_at(i + 1);
    if (days.contains(a) && days.contains(b)) out.emplace_back(a, b);
  }
  if (cyclic && days.contains(Weekday::Sun) && days.contains(Weekday::Mon)) out.emplace_back(Weekday::Sun, Weekday::Mon);
  return out;
}

RestCheck check_rest(const WeeklyPlan& plan, const GuidelineConfig& config, const std::vector<Waiver>& waivers) {
  RestCheck out;
  out.violating_day_pairs = adjacent_pairs(exercise_days(plan), config.week_is_cyclic);
  if (!config.require_rest_gap) {
    out.ok = true;
    return out;
  }
  out.ok = std::all_of(out.violating_day_pairs.begin(), out.violating_day_pairs.end(),
                       [&](const DayPair& p) { return covered(p, waivers); });
  return out;
}

GuidelineReport evaluate(const WeeklyPlan& plan, const Catalog& catalog, const GuidelineConfig& config,
                         const std::vector<Waiver>& waivers) {
  config.validate();
  GuidelineReport r;
  const auto amount = check_amount(plan, config);
  r.effective_minutes = amount.effective_minutes;
  r.amount_ok = amount.ok || has_waiver(waivers, WaiverKind::UserReducedAmount);
  auto balance = check_balance(plan, catalog);
  r.categories_present = std::move(balance.categories_present);
  r.balance_ok = balance.ok || has_waiver(waivers, WaiverKind::InjuryExclusion);
  auto rest = check_rest(plan, config, waivers);
  r.violating_day_pairs = std::move(rest.violating_day_pairs);
  r.rest_ok = rest.ok;
  r.waivers = waivers;
  return r;
}

Json to_json(const Waiver& w) {
  Json days = Json::array();
  for (auto d : w.days.days()) days.push_back(std::string(short_name(d)));
  return Json{{"kind", std::string(to_string(w.kind))}, {"note", w.note}, {"days", std::move(days)}};
}

Waiver waiver_from_json(const Json& j) {
  Waiver w;
  w.kind = waiver_kind_from_string(j.at("kind").get<std::string>());
  w.note = j.value("note", "");
  for (const auto& d : j.value("days", Json::array())) w.days.insert(weekday_from_string(d.get<std::string>()));
  return w;
}

Json to_json(const GuidelineReport& r) {
  Json cats = Json::array();
  for (auto c : r.categories_present) cats.push_back(std::string(to_string(c)));
  Json pairs = Json::array();
  for (const auto& [a, b] : r.violating_day_pairs) {
    pairs.push_back(Json::array({std::string(short_name(a)), std::string(short_name(b))}));
  }
  Json waivers = Json::array();
  for (const auto& w : r.waivers) waivers.push_back(to_json(w));
  return Json{{"effective_minutes", r.effective_minutes},
              {"amount_ok", r.amount_ok},
              {"categories_present", std::move(cats)},
              {"balance_ok", r.balance_ok},
              {"rest_ok", r.rest_ok},
              {"violating_day_pairs", std::move(pairs)},
              {"waivers", std::move(waivers)}};
}

}  // namespace planfit
