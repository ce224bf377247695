#include <doctest.h>

#include <random>

#include "planfit/error.h"
#include "planfit/guideline.h"
#include "test_support.h"

using namespace planfit;

namespace {

PlanRule rule(Weekday day, int minutes, const std::string& row_id, Intensity intensity = Intensity::Moderate) {
  PlanRule r;
  r.id = "r" + std::to_string(index_of(day) + 1) + "_" + row_id;
  r.day = day;
  r.exercise_row_id = row_id;
  r.exercise_name = testing::shared_catalog()->at(row_id).name;
  r.amount_minutes = minutes;
  r.intensity = intensity;
  return r;
}

WeeklyPlan plan_on(DaySet days, int minutes = 30) {
  WeeklyPlan p;
  for (auto d : days.days()) p.rules.push_back(rule(d, minutes, "1"));
  return p;
}

// Independent oracle: scan consecutive indices, wrap only when cyclic.
std::vector<DayPair> oracle_pairs(unsigned mask, bool cyclic) {
  std::vector<DayPair> out;
  auto has = [&](int i) { return (mask >> i) & 1U; };
  for (int i = 0; i + 1 < 7; ++i) {
    if (has(i) && has(i + 1)) out.emplace_back(weekday_at(i), weekday_at(i + 1));
  }
  if (cyclic && has(6) && has(0)) out.emplace_back(Weekday::Sun, Weekday::Mon);
  return out;
}

DaySet from_mask(unsigned mask) {
  DaySet s;
  for (int i = 0; i < 7; ++i) {
    if ((mask >> i) & 1U) s.insert(weekday_at(i));
  }
  return s;
}

}  // namespace

TEST_SUITE("guideline") {
  TEST_CASE("amount threshold is inclusive") {
    GuidelineConfig cfg;
    WeeklyPlan p;
    p.rules = {rule(Weekday::Mon, 75, "1"), rule(Weekday::Thu, 75, "1")};
    CHECK(check_amount(p, cfg).ok);
    p.rules[1].amount_minutes = 70;
    CHECK(check_amount(p, cfg).effective_minutes == 145);
    CHECK_FALSE(check_amount(p, cfg).ok);
    p.rules[1] = rule(Weekday::Thu, 40, "14", Intensity::Vigorous);
    CHECK(check_amount(p, cfg).effective_minutes == 155);
    CHECK(check_amount(p, cfg).ok);
  }

  TEST_CASE("balance needs one cardio and one strength exercise") {
    const auto& c = *testing::shared_catalog();
    WeeklyPlan p;
    p.rules = {rule(Weekday::Mon, 30, "1"), rule(Weekday::Wed, 30, "6")};
    CHECK_FALSE(check_balance(p, c).ok);
    p.rules.push_back(rule(Weekday::Fri, 30, "60"));
    const auto b = check_balance(p, c);
    CHECK(b.ok);
    CHECK(b.categories_present == std::set<Category>{Category::Cardio, Category::Strength});
    p.rules[0].exercise_row_id = "9999";
    CHECK_THROWS_AS(check_balance(p, c), Error);
  }

  TEST_CASE("rest oracle over every day subset") {
    for (bool cyclic : {true, false}) {
      GuidelineConfig cfg;
      cfg.week_is_cyclic = cyclic;
      for (unsigned mask = 0; mask < 128; ++mask) {
        CAPTURE(mask);
        CAPTURE(cyclic);
        const auto expected = oracle_pairs(mask, cyclic);
        CHECK(adjacent_pairs(from_mask(mask), cyclic) == expected);
        const auto r = check_rest(plan_on(from_mask(mask)), cfg);
        CHECK(r.violating_day_pairs == expected);
        CHECK(r.ok == expected.empty());
      }
    }
  }

  TEST_CASE("rest check can be switched off") {
    GuidelineConfig cfg;
    cfg.require_rest_gap = false;
    const auto r = check_rest(plan_on(DaySet::all()), cfg);
    CHECK(r.ok);
    CHECK(r.violating_day_pairs.size() == 7);
  }

  TEST_CASE("waivers") {
    const auto& c = *testing::shared_catalog();
    WeeklyPlan p;
    p.rules = {rule(Weekday::Mon, 30, "1"), rule(Weekday::Tue, 30, "1")};
    const auto plain = evaluate(p, c);
    CHECK_FALSE(plain.amount_ok);
    CHECK_FALSE(plain.balance_ok);
    CHECK_FALSE(plain.rest_ok);

    const auto waived = evaluate(p, c, {},
                                 {{WaiverKind::UserReducedAmount, "only 60 minutes", {}},
                                  {WaiverKind::InjuryExclusion, "shoulder", {}},
                                  {WaiverKind::UserFixedDays, "insists", DaySet{Weekday::Mon, Weekday::Tue}}});
    CHECK(waived.all_ok());
    CHECK(waived.effective_minutes == 60);
    CHECK(waived.violating_day_pairs.size() == 1);

    const auto partial = evaluate(p, c, {}, {{WaiverKind::UserFixedDays, "", DaySet{Weekday::Tue, Weekday::Wed}}});
    CHECK_FALSE(partial.rest_ok);
    CHECK(evaluate(p, c, {}, {{WaiverKind::UserFixedDays, "", {}}}).rest_ok);
  }

  TEST_CASE("soundness against randomised plans") {
    const auto& c = *testing::shared_catalog();
    std::mt19937 rng(7);
    const auto& entries = c.entries();
    for (int n = 0; n < 300; ++n) {
      WeeklyPlan p;
      const unsigned mask = rng() % 128;
      int expected_eff = 0;
      bool cardio = false, strength = false;
      for (auto d : from_mask(mask).days()) {
        const auto& e = entries[rng() % entries.size()];
        const int minutes = 5 * (1 + static_cast<int>(rng() % 18));
        p.rules.push_back(rule(d, minutes, e.row_id, e.intensity));
        expected_eff += minutes * (e.intensity == Intensity::Vigorous ? 2 : 1);
        (e.category == Category::Cardio ? cardio : strength) = true;
      }
      const auto r = evaluate(p, c);
      CHECK(r.effective_minutes == expected_eff);
      CHECK(r.amount_ok == (expected_eff >= 150));
      CHECK(r.balance_ok == (cardio && strength));
      CHECK(r.rest_ok == oracle_pairs(mask, true).empty());
    }
  }

  TEST_CASE("config and json") {
    GuidelineConfig cfg;
    cfg.vigorous_multiplier = 0;
    CHECK_THROWS_AS(cfg.validate(), Error);
    const Waiver w{WaiverKind::UserFixedDays, "fixed", DaySet{Weekday::Sat, Weekday::Sun}};
    CHECK(waiver_from_json(to_json(w)) == w);
    CHECK_THROWS_AS(waiver_kind_from_string("bogus"), Error);
    const auto j = to_json(evaluate(plan_on(DaySet{Weekday::Mon}), *testing::shared_catalog()));
    CHECK(j["effective_minutes"] == 30);
  }
}
