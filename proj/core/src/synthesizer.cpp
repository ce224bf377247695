#include "planfit/synthesizer.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "planfit/error.h"
#include "planfit/text.h"

namespace planfit {

void SynthesisConfig::validate() const {
  if (increment_minutes <= 0) throw Error(ErrorCode::InvalidConfig, "increment_minutes");
  if (default_session_minutes <= 0 || default_session_minutes > soft_session_cap || soft_session_cap > hard_session_cap) {
    throw Error(ErrorCode::InvalidConfig, "session caps", "require 0 < default <= soft cap <= hard cap");
  }
  if (target_effective_minutes <= 0) throw Error(ErrorCode::InvalidConfig, "target_effective_minutes");
  if (progression_percent < 0) throw Error(ErrorCode::InvalidConfig, "progression_percent");
  guideline.validate();
}

std::string_view to_string(AdvisoryKind k) noexcept {
  switch (k) {
    case AdvisoryKind::Balance: return "balance";
    case AdvisoryKind::InsufficientAmount: return "insufficient_amount";
    case AdvisoryKind::RestConcession: return "rest_concession";
    case AdvisoryKind::AvailabilityConflict: return "availability_conflict";
  }
  return "balance";
}

AdvisoryKind advisory_kind_from_string(std::string_view s) {
  for (auto k : {AdvisoryKind::Balance, AdvisoryKind::InsufficientAmount, AdvisoryKind::RestConcession,
                 AdvisoryKind::AvailabilityConflict}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorCode::InvalidArgument, std::string(s), "unknown advisory kind");
}

Json to_json(const Advisory& a) { return Json{{"kind", std::string(to_string(a.kind))}, {"message", a.message}}; }

Advisory advisory_from_json(const Json& j) {
  return {advisory_kind_from_string(j.at("kind").get<std::string>()), j.at("message").get<std::string>()};
}

Json to_json(const std::vector<Advisory>& advisories) {
  Json out = Json::array();
  for (const auto& a : advisories) out.push_back(to_json(a));
  return out;
}

namespace {

int multiplier(Intensity i, const SynthesisConfig& c) {
  return i == Intensity::Vigorous ? c.guideline.vigorous_multiplier : 1;
}

int effective_of(const std::vector<PlanRule>& rules, const SynthesisConfig& c) {
  int total = 0;
  for (const auto& r : rules) total += r.amount_minutes * multiplier(r.intensity, c);
  return total;
}

/// Capacity of `days` when every session sits at the hard cap.
int capacity(std::size_t ndays, const std::vector<const ExerciseEntry*>& exercises, const SynthesisConfig& c) {
  if (ndays == 0 || exercises.empty()) return 0;
  const std::size_t n = std::max(ndays, exercises.size());
  int total = 0;
  for (std::size_t i = 0; i < n; ++i) total += c.hard_session_cap * multiplier(exercises[i % exercises.size()]->intensity, c);
  return total;
}

bool adjacent(Weekday a, Weekday b, bool cyclic) {
  int d = std::abs(index_of(a) - index_of(b));
  return d == 1 || (cyclic && d == 6);
}

/// Raises sessions in uniform steps, soft cap first, then hard cap.
int raise_uniformly(std::vector<PlanRule>& rules, const SynthesisConfig& c) {
  int eff = effective_of(rules, c);
  for (int cap : {c.soft_session_cap, c.hard_session_cap}) {
    while (eff < c.target_effective_minutes) {
      bool grew = false;
      for (auto& r : rules) {
        if (r.amount_minutes < cap) {
          r.amount_minutes = std::min(r.amount_minutes + c.increment_minutes, cap);
          grew = true;
        }
      }
      if (!grew) break;
      eff = effective_of(rules, c);
    }
  }
  return eff;
}

std::string situation_for(Weekday day, const std::vector<AvailabilitySlot>& slots) {
  for (const auto& s : slots) {
    if (s.day == day) return s.time_spec;
  }
  return {};
}

std::string pair_text(const DayPair& p) {
  return std::string(full_name(p.first)) + " and " + std::string(full_name(p.second));
}

std::vector<const ExerciseEntry*> selected_entries(const PlanSummary& summary, const Catalog& catalog) {
  std::vector<const ExerciseEntry*> out;
  for (const auto& rid : summary.selected_exercise_row_ids) out.push_back(&catalog.at(rid));
  return out;
}

std::optional<Advisory> balance_advisory(const std::set<Category>& cats) {
  if (cats.size() != 1) return std::nullopt;
  const bool cardio = cats.count(Category::Cardio) > 0;
  return Advisory{AdvisoryKind::Balance, std::string("Only ") + (cardio ? "cardio" : "strength") +
                                             " exercises are in the plan; consider adding a " +
                                             (cardio ? "strength" : "cardio") + " exercise for balance."};
}

Advisory insufficiency_advisory(int effective, const SynthesisConfig& c) {
  return {AdvisoryKind::InsufficientAmount,
          "The available days allow " + std::to_string(effective) + " effective minutes per week, short of the " +
              std::to_string(c.target_effective_minutes) + "-minute target. More availability would help."};
}

}  // namespace

DayChoice choose_days(const std::vector<AvailabilitySlot>& slots, const std::vector<const ExerciseEntry*>& exercises,
                      const SynthesisConfig& config) {
  const bool cyclic = config.guideline.week_is_cyclic;
  const DaySet available = available_days(slots);
  DayChoice out;
  if (available.empty()) return out;

  DaySet chosen;
  std::optional<Weekday> first;
  std::optional<Weekday> last;
  for (auto d : available.days()) {
    if (last && index_of(d) - index_of(*last) < 2) continue;
    if (cyclic && first && adjacent(d, *first, true)) continue;
    chosen.insert(d);
    if (!first) first = d;
    last = d;
  }

  while (capacity(static_cast<std::size_t>(chosen.size()), exercises, config) < config.target_effective_minutes) {
    DaySet remaining = available - chosen;
    if (remaining.empty()) break;
    std::optional<Weekday> best;
    int best_violation = 99;
    for (auto d : remaining.days()) {
      int v = 0;
      for (auto c : chosen.days()) v += adjacent(d, c, cyclic) ? 1 : 0;
      if (v < best_violation) {
        best_violation = v;
        best = d;
      }
    }
    chosen.insert(*best);
  }
  out.days = chosen.days();
  out.concessions = adjacent_pairs(chosen, cyclic);
  return out;
}

Allocation allocate_amounts(const std::vector<Weekday>& days, const std::vector<const ExerciseEntry*>& exercises,
                            const SynthesisConfig& config, const std::vector<AvailabilitySlot>& slots) {
  config.validate();
  if (exercises.empty()) throw Error(ErrorCode::NoExercisesSelected, "");
  if (days.empty()) throw Error(ErrorCode::NoAvailability, "", "no exercise days");

  struct Assignment {
    std::size_t day;
    std::size_t exercise;
  };
  const std::size_t n = std::max(days.size(), exercises.size());
  std::vector<Assignment> assignments;
  for (std::size_t i = 0; i < n; ++i) assignments.push_back({i % days.size(), i % exercises.size()});
  std::stable_sort(assignments.begin(), assignments.end(),
                   [](const Assignment& a, const Assignment& b) { return a.day < b.day; });

  Allocation out;
  for (const auto& a : assignments) {
    const ExerciseEntry& e = *exercises[a.exercise];
    PlanRule r;
    r.id = "r" + std::to_string(out.rules.size() + 1);
    r.day = days[a.day];
    r.situation = situation_for(r.day, slots);
    r.exercise_row_id = e.row_id;
    r.exercise_name = e.name;
    r.amount_minutes = config.default_session_minutes;
    r.intensity = e.intensity;
    out.rules.push_back(std::move(r));
  }
  out.effective_minutes = raise_uniformly(out.rules, config);
  out.insufficient = out.effective_minutes < config.target_effective_minutes;
  return out;
}

namespace {

std::string coping_clause(const std::string& obstacle, Weekday day) {
  std::string label = text::trim(obstacle);
  while (!label.empty() && (label.back() == '.' || label.back() == '!')) label.pop_back();
  if (find_first_weekday(label)) return "On " + std::string(full_name(day)) + ", " + text::lowercase_first(label);
  return label + " on " + std::string(full_name(day));
}

std::string coping_alternative(Weekday day, DaySet scheduled, DaySet available, bool cyclic) {
  const DaySet others = scheduled - DaySet{day};
  for (int k = 1; k < 7; ++k) {
    Weekday c = next_day(day, k);
    if (!available.contains(c) || scheduled.contains(c)) continue;
    bool clash = false;
    for (auto o : others.days()) clash = clash || adjacent(c, o, cyclic);
    if (clash) continue;
    return "Do the same exercises on " + std::string(full_name(c));
  }
  return "Do the same exercises later the same day";
}

}  // namespace

std::vector<CopingPlan> attach_coping_plans(const std::vector<PlanRule>& rules, const std::vector<SummaryEntity>& obstacles,
                                            const std::vector<AvailabilitySlot>& slots, const SynthesisConfig& config) {
  std::vector<CopingPlan> out;
  if (rules.empty() || obstacles.empty()) return out;

  std::vector<Weekday> session_days;
  DaySet scheduled;
  for (const auto& r : rules) {
    if (!scheduled.contains(r.day)) session_days.push_back(r.day);
    scheduled.insert(r.day);
  }
  std::sort(session_days.begin(), session_days.end());
  const DaySet available = slots.empty() ? DaySet::all() : available_days(slots);

  auto days_of_links = [&](const SummaryEntity& o) {
    DaySet d;
    auto it = o.payload.find("linked_availability_ids");
    if (it == o.payload.end()) return d;
    for (const auto& id : *it) {
      for (const auto& s : slots) {
        if (s.source_entity_id == id.get<std::string>()) d.insert(s.day);
      }
    }
    return d;
  };

  for (auto day : session_days) {
    std::vector<std::string> parents;
    for (const auto& r : rules) {
      if (r.day == day) parents.push_back(r.id);
    }
    for (const auto& o : obstacles) {
      DaySet linked = days_of_links(o);
      bool applies = (linked & scheduled).empty() || linked.contains(day);
      if (!applies) continue;
      CopingPlan c;
      c.id = "c" + std::to_string(out.size() + 1);
      c.parent_rule_ids = parents;
      c.obstacle_clause = coping_clause(o.label(), day);
      c.alternative = coping_alternative(day, scheduled, available, config.guideline.week_is_cyclic);
      out.push_back(std::move(c));
    }
  }
  return out;
}

SynthesisResult synthesize(const PlanSummary& summary, const Catalog& catalog, const SynthesisConfig& config,
                           const std::vector<Waiver>& waivers) {
  config.validate();
  const auto exercises = selected_entries(summary, catalog);
  if (exercises.empty()) throw Error(ErrorCode::NoExercisesSelected, "");
  const Expansion expansion = expand_availabilities_detailed(summary);

  SynthesisResult out;
  const DayChoice choice = choose_days(expansion.slots, exercises, config);
  Allocation alloc = allocate_amounts(choice.days, exercises, config, expansion.slots);
  out.plan.rules = std::move(alloc.rules);
  out.plan.coping_plans = attach_coping_plans(out.plan.rules, summary.obstacles, expansion.slots, config);
  out.plan.validate();
  out.concessions = choice.concessions;
  out.insufficient = alloc.insufficient;

  if (expansion.exclusions_ignored) {
    out.advisories.push_back({AdvisoryKind::AvailabilityConflict,
                              "The stated exclusions rule out every available day, so they were not applied."});
  }
  std::set<Category> selected_categories;
  for (const auto* e : exercises) selected_categories.insert(e->category);
  if (auto b = balance_advisory(selected_categories)) out.advisories.push_back(*b);
  if (alloc.insufficient) out.advisories.push_back(insufficiency_advisory(alloc.effective_minutes, config));
  for (const auto& p : choice.concessions) {
    out.advisories.push_back({AdvisoryKind::RestConcession,
                              "Sessions on " + pair_text(p) + " are back to back to reach the weekly target."});
  }
  out.report = evaluate(out.plan, catalog, config.guideline, waivers);
  return out;
}

int progression_step(int effective, const SynthesisConfig& config) {
  const double raw = effective * config.progression_percent / 100.0;
  const int inc = config.increment_minutes;
  int step = static_cast<int>(std::floor(raw / inc + 0.5)) * inc;
  return std::max(step, inc);
}

WeeklyPlan apply_progression(const WeeklyPlan& plan, const SynthesisConfig& config) {
  config.validate();
  if (plan.rules.empty()) throw Error(ErrorCode::CapsSaturated, "", "empty plan");
  const int inc = config.increment_minutes;
  const int mult = config.guideline.vigorous_multiplier;
  const int step = progression_step(effective_of(plan.rules, config), config);

  auto headroom = [&](const PlanRule& r) { return std::max(0, (config.hard_session_cap - r.amount_minutes) / inc); };
  int moderate_room = 0;
  int vigorous_room = 0;
  for (const auto& r : plan.rules) (r.intensity == Intensity::Vigorous ? vigorous_room : moderate_room) += headroom(r);

  const int vigorous_steps = std::min(vigorous_room, step / (inc * mult));
  const int moderate_steps = std::min(moderate_room, (step - vigorous_steps * inc * mult) / inc);
  if (vigorous_steps + moderate_steps == 0) throw Error(ErrorCode::CapsSaturated, "", "no session can grow");

  WeeklyPlan out = plan;
  auto distribute = [&](Intensity kind, int steps) {
    while (steps > 0) {
      bool grew = false;
      for (auto& r : out.rules) {
        if (steps == 0) break;
        if (r.intensity != kind || r.amount_minutes + inc > config.hard_session_cap) continue;
        r.amount_minutes += inc;
        --steps;
        grew = true;
      }
      if (!grew) break;
    }
  };
  distribute(Intensity::Vigorous, vigorous_steps);
  distribute(Intensity::Moderate, moderate_steps);
  return out;
}

RepairResult repair(const WeeklyPlan& input, const PlanSummary& summary, const Catalog& catalog,
                    const SynthesisConfig& config) {
  config.validate();
  if (input.rules.empty()) throw Error(ErrorCode::UnrepairableWithinConstraints, "", "plan has no rules");
  RepairResult out;
  out.plan = input;
  resolve_exercises(out.plan, catalog);

  const int eff = raise_uniformly(out.plan.rules, config);
  if (eff < config.target_effective_minutes) out.advisories.push_back(insufficiency_advisory(eff, config));

  std::vector<AvailabilitySlot> slots;
  if (!summary.availabilities.empty()) slots = expand_availabilities(summary);
  const DaySet available = available_days(slots);
  const bool cyclic = config.guideline.week_is_cyclic;

  std::vector<DayPair> conceded;
  auto is_conceded = [&](const DayPair& p) { return std::find(conceded.begin(), conceded.end(), p) != conceded.end(); };
  while (config.guideline.require_rest_gap) {
    const DaySet scheduled = exercise_days(out.plan);
    std::optional<DayPair> pending;
    for (const auto& p : adjacent_pairs(scheduled, cyclic)) {
      if (!is_conceded(p)) {
        pending = p;
        break;
      }
    }
    if (!pending) break;

    bool moved = false;
    for (Weekday from : {pending->second, pending->first}) {
      const DaySet others = scheduled - DaySet{from};
      for (int k = 1; k < 7 && !moved; ++k) {
        Weekday to = next_day(from, k);
        if (!available.contains(to) || scheduled.contains(to)) continue;
        bool clash = false;
        for (auto o : others.days()) clash = clash || adjacent(to, o, cyclic);
        if (clash) continue;
        std::vector<std::string> moved_ids;
        for (auto& r : out.plan.rules) {
          if (r.day != from) continue;
          r.day = to;
          r.situation = situation_for(to, slots);
          moved_ids.push_back(r.id);
        }
        for (auto& c : out.plan.coping_plans) {
          bool affected = std::any_of(c.parent_rule_ids.begin(), c.parent_rule_ids.end(), [&](const std::string& id) {
            return std::find(moved_ids.begin(), moved_ids.end(), id) != moved_ids.end();
          });
          if (!affected) continue;
          const std::string old_name(full_name(from));
          if (auto pos = c.obstacle_clause.find(old_name); pos != std::string::npos) {
            c.obstacle_clause.replace(pos, old_name.size(), full_name(to));
          }
        }
        moved = true;
      }
      if (moved) break;
    }
    if (!moved) {
      conceded.push_back(*pending);
      out.advisories.push_back({AdvisoryKind::RestConcession,
                                "No free non-adjacent day to move the session on " + pair_text(*pending) + " to."});
    }
  }

  const auto balance = check_balance(out.plan, catalog);
  if (auto b = balance_advisory(balance.categories_present)) out.advisories.push_back(*b);
  return out;
}

}  // namespace planfit
