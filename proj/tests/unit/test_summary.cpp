#include <doctest.h>

#include "planfit/error.h"
#include "planfit/summary.h"
#include "test_support.h"

using namespace planfit;

namespace {

ErrorCode error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

PlanSummary with_goal_and_slot() {
  return apply_edits(PlanSummary{}, {EditCommand::add(Target::Goal, Json{{"label", "Lose weight"}}),
                                     EditCommand::add(Target::Availability, Json{{"label", "Weekdays after work"}})});
}

}  // namespace

TEST_SUITE("summary") {
  TEST_CASE("adds assign prefixed ids and bump the revision once per batch") {
    const PlanSummary s = with_goal_and_slot();
    CHECK(s.revision == 1);
    REQUIRE(s.goals.size() == 1);
    CHECK(s.goals[0].id == "g1");
    CHECK(s.availabilities[0].id == "a1");
    CHECK(s.goals[0].label() == "Lose weight");
  }

  TEST_CASE("empty batch leaves the summary untouched") {
    const PlanSummary s = with_goal_and_slot();
    CHECK(apply_edits(s, {}) == s);
  }

  TEST_CASE("ids are never reused after removal") {
    PlanSummary s = with_goal_and_slot();
    s = apply_edits(s, {EditCommand::remove(Target::Goal, "g1")});
    s = apply_edits(s, {EditCommand::add(Target::Goal, Json{{"label", "Sleep better"}})});
    CHECK(s.goals[0].id == "g2");
  }

  TEST_CASE("label aliases fold and unknown fields drop") {
    const auto s = apply_edits(PlanSummary{}, {EditCommand::add(Target::Goal, Json{{"name", "Run a 10k"}, {"x", 1}})});
    CHECK(s.goals[0].payload == Json{{"label", "Run a 10k"}});
  }

  TEST_CASE("updates merge fields") {
    PlanSummary s = with_goal_and_slot();
    s = apply_edits(s, {EditCommand::update(Target::Goal, "g1", Json{{"label", "Lose 5 kg"}})});
    CHECK(s.goals[0].label() == "Lose 5 kg");
    CHECK(s.revision == 2);
  }

  TEST_CASE("failed batches are all-or-nothing") {
    const PlanSummary s = with_goal_and_slot();
    const std::vector<EditCommand> batch{EditCommand::add(Target::Goal, Json{{"label", "Swim"}}),
                                         EditCommand::remove(Target::Obstacle, "o7")};
    PlanSummary copy = s;
    CHECK(error_of([&] { copy = apply_edits(s, batch); }) == ErrorCode::UnknownId);
    CHECK(copy == s);
    try {
      apply_edits(s, batch);
    } catch (const Error& e) {
      CHECK(e.detail() == "obstacle:o7");
    }
  }

  TEST_CASE("malformed payloads report the command index") {
    const PlanSummary s = with_goal_and_slot();
    try {
      apply_edits(s, {EditCommand::add(Target::Goal, Json{{"label", "ok"}}), EditCommand::add(Target::Goal, Json{})});
      FAIL("expected MalformedCommand");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MalformedCommand);
      CHECK(e.detail() == "1");
    }
  }

  TEST_CASE("obstacle links must resolve and are cleared on cascade") {
    PlanSummary s = with_goal_and_slot();
    CHECK(error_of([&] {
            apply_edits(s, {EditCommand::add(Target::Obstacle,
                                             Json{{"label", "Rain"}, {"linked_availability_ids", {"a9"}}})});
          }) == ErrorCode::MalformedCommand);
    s = apply_edits(s, {EditCommand::add(Target::Obstacle, Json{{"label", "Rain"}, {"linked_availability_ids", {"a1"}}})});
    s = apply_edits(s, {EditCommand::remove(Target::Availability, "a1")});
    CHECK(s.obstacles[0].payload["linked_availability_ids"].empty());
  }

  TEST_CASE("intention parents may use caller aliases within a batch") {
    EditCommand rule = EditCommand::add(Target::ImplementationIntention,
                                        Json{{"id", "r1"}, {"kind", "rule"}, {"day", "Monday"}, {"situation", "after work"},
                                             {"exercise_name", "Running"}, {"amount_minutes", 30}, {"intensity", "moderate"}});
    EditCommand coping = EditCommand::add(Target::ImplementationIntention,
                                          Json{{"kind", "coping"}, {"obstacle_clause", "Rain on Monday"},
                                               {"alternative", "Treadmill"}});
    coping.params["parent_ids"] = Json::array({"r1"});
    const auto s = apply_edits(PlanSummary{}, {rule, coping});
    REQUIRE(s.implementation_intentions.size() == 2);
    CHECK(s.implementation_intentions[1].parent_ids == std::vector<std::string>{"p1"});
    const auto removed = apply_edits(s, {EditCommand::remove(Target::ImplementationIntention, "p1")});
    CHECK(removed.implementation_intentions[0].parent_ids.empty());
  }

  TEST_CASE("recommended exercises are checked against the catalog") {
    const auto& catalog = *testing::shared_catalog();
    const auto ok = apply_edits(PlanSummary{}, {EditCommand::add(Target::RecommendedExercise, Json{{"row_id", 1}})}, &catalog);
    CHECK(ok.recommended_exercises[0].payload["exercise_row_id"] == "1");
    CHECK(error_of([&] {
            apply_edits(PlanSummary{}, {EditCommand::add(Target::RecommendedExercise, Json{{"row_id", "999"}})}, &catalog);
          }) == ErrorCode::MalformedCommand);
  }

  TEST_CASE("selection") {
    const auto& catalog = *testing::shared_catalog();
    PlanSummary s = select_exercise(PlanSummary{}, "1", catalog);
    CHECK(s.is_selected("1"));
    CHECK(s.revision == 1);
    CHECK(select_exercise(s, "1", catalog) == s);
    s = deselect_exercise(s, "1", catalog);
    CHECK_FALSE(s.is_selected("1"));
    CHECK(error_of([&] { select_exercise(s, "nope", catalog); }) == ErrorCode::UnknownExercise);
  }

  TEST_CASE("command json parsing") {
    const auto cmds = parse_commands_json(
        "Sure, here you go:\n```json\n[{\"target\":\"goal\",\"method\":\"add\",\"params\":{\"entity\":{\"label\":\"x]\"}}},"
        "{\"target\":\"goal\",\"method\":\"remove\",\"params\":{\"id\":\"g1\"}}]\n```");
    REQUIRE(cmds.size() == 2);
    CHECK(cmds[0] == EditCommand::add(Target::Goal, Json{{"label", "x]"}}));
    CHECK(cmds[1] == EditCommand::remove(Target::Goal, "g1"));
    CHECK(parse_commands_json("[]").empty());
    CHECK(error_of([] { parse_commands_json("no array here"); }) == ErrorCode::NoArrayFound);
    CHECK(error_of([] { parse_commands_json(R"([{"target":"mood","method":"add","params":{}}])"); }) ==
          ErrorCode::UnknownTarget);
    CHECK(error_of([] { parse_commands_json(R"([{"target":"goal","method":"zap","params":{}}])"); }) ==
          ErrorCode::MalformedCommand);
    CHECK(error_of([] { parse_commands_json(R"([{"target":"goal","method":"remove","params":{}}])"); }) ==
          ErrorCode::MalformedCommand);
  }

  TEST_CASE("wire form round trip") {
    const auto cmd = EditCommand::update(Target::Availability, "a1", Json{{"time_spec", "7 pm"}});
    CHECK(command_from_json(to_json(cmd), 0) == cmd);
  }

  TEST_CASE("summary json round trip keeps counters") {
    PlanSummary s = with_goal_and_slot();
    s = apply_edits(s, {EditCommand::remove(Target::Goal, "g1")});
    s = select_exercise(s, "60", *testing::shared_catalog());
    const PlanSummary back = summary_from_json(to_json(s));
    CHECK(back == s);
    CHECK(apply_edits(back, {EditCommand::add(Target::Goal, Json{{"label", "y"}})}).goals[0].id == "g2");
  }
}
