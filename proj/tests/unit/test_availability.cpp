#include <doctest.h>

#include "planfit/availability.h"
#include "planfit/error.h"
#include "planfit/summary.h"

using namespace planfit;

namespace {

using W = Weekday;

PlanSummary with_availabilities(const std::vector<Json>& payloads) {
  std::vector<EditCommand> cmds;
  for (const auto& p : payloads) cmds.push_back(EditCommand::add(Target::Availability, p));
  return apply_edits(PlanSummary{}, cmds);
}

}  // namespace

TEST_SUITE("availability") {
  TEST_CASE("day phrases") {
    struct Case {
      const char* phrase;
      DaySet days;
      const char* time_spec;
    };
    const std::vector<Case> cases{
        {"Everyday after 7 pm except for Sat", DaySet::all() - DaySet{W::Sat}, "after 7 pm"},
        {"Thu--Sun after 7 pm", DaySet::range(W::Thu, W::Sun), "after 7 pm"},
        {"Fri to Mon mornings", DaySet{W::Fri, W::Sat, W::Sun, W::Mon}, "mornings"},
        {"Weekdays at lunch", DaySet::range(W::Mon, W::Fri), "at lunch"},
        {"weekends", DaySet{W::Sat, W::Sun}, ""},
        {"Monday, Wednesday and Friday evenings", DaySet{W::Mon, W::Wed, W::Fri}, "evenings"},
        {"Tuesday through Thursday", DaySet::range(W::Tue, W::Thu), ""},
        {"Daily before breakfast", DaySet::all(), "before breakfast"},
    };
    for (const auto& c : cases) {
      CAPTURE(c.phrase);
      const auto dp = parse_day_phrase(c.phrase);
      CHECK(dp.recognized);
      CHECK_FALSE(dp.negated);
      CHECK(dp.days == c.days);
      CHECK(dp.time_spec == c.time_spec);
    }
  }

  TEST_CASE("unrecognised phrases cover the whole week") {
    const auto dp = parse_day_phrase("after work");
    CHECK_FALSE(dp.recognized);
    CHECK(dp.days == DaySet::all());
    CHECK(dp.time_spec == "after work");
  }

  TEST_CASE("negated phrases") {
    const auto dp = parse_day_phrase("Unable to exercise on Wednesdays");
    CHECK(dp.negated);
    CHECK(dp.days == DaySet{W::Wed});
  }

  TEST_CASE("expansion order and sources") {
    const auto s = with_availabilities({Json{{"label", "Tue and Thu after work"}}, Json{{"label", "Saturday morning"}}});
    const auto slots = expand_availabilities(s);
    REQUIRE(slots.size() == 3);
    CHECK(slots[0] == AvailabilitySlot{W::Tue, "after work", "a1"});
    CHECK(slots[1] == AvailabilitySlot{W::Thu, "after work", "a1"});
    CHECK(slots[2] == AvailabilitySlot{W::Sat, "morning", "a2"});
    CHECK(available_days(slots) == DaySet{W::Tue, W::Thu, W::Sat});
  }

  TEST_CASE("structured day specs win over the label") {
    const auto s = with_availabilities(
        {Json{{"label", "whenever"}, {"day_spec", Json::array({"monday", "friday"})}, {"time_spec", "7 am"}}});
    const auto slots = expand_availabilities(s);
    REQUIRE(slots.size() == 2);
    CHECK(slots[1] == AvailabilitySlot{W::Fri, "7 am", "a1"});
  }

  TEST_CASE("exclusions remove days unless they would remove everything") {
    const auto s = with_availabilities({Json{{"label", "Weekdays after work"}}, Json{{"label", "Can't do Mondays"}}});
    const auto e = expand_availabilities_detailed(s);
    CHECK_FALSE(e.exclusions_ignored);
    CHECK(available_days(e.slots) == DaySet::range(W::Tue, W::Fri));

    const auto all_out = with_availabilities({Json{{"label", "Monday evenings"}}, Json{{"label", "Unable to train on Monday"}}});
    const auto e2 = expand_availabilities_detailed(all_out);
    CHECK(e2.exclusions_ignored);
    CHECK(available_days(e2.slots) == DaySet{W::Mon});
  }

  TEST_CASE("no availability") {
    CHECK_THROWS_AS(expand_availabilities(PlanSummary{}), Error);
    CHECK_THROWS_AS(expand_availabilities(with_availabilities({Json{{"label", "Not available on Sunday"}}})), Error);
  }
}
