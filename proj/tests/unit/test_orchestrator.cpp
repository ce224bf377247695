#include <doctest.h>

#include "planfit/error.h"
#include "planfit/orchestrator.h"
#include "test_support.h"

using namespace planfit;

namespace {

/// Keeps the live session and every event it produced.
struct Driver {
  std::shared_ptr<const Orchestrator> orch;
  Session session;
  std::vector<SessionEvent> log;
  std::string reply;

  explicit Driver(std::shared_ptr<const Orchestrator> o = testing::template_orchestrator()) : orch(std::move(o)) {
    take(orch->create_session("s1", "Ada"));
  }
  void take(TurnResult r) {
    session = std::move(r.session);
    reply = std::move(r.reply);
    for (auto& e : r.events) log.push_back(std::move(e));
  }
  Driver& say(std::string_view text) {
    take(orch->handle_user_message(session, text));
    return *this;
  }
  Driver& iterate() {
    take(orch->start_iteration(session));
    return *this;
  }
};

/// Template replies, except that chosen cues fail as if the network were down.
class FlakyProvider final : public Provider {
 public:
  explicit FlakyProvider(std::set<Cue> failing) : failing_(std::move(failing)) {}
  ProviderMode mode() const noexcept override { return ProviderMode::Template; }
  ProviderReply respond(const ResponseRequest& r, const std::vector<Turn>& h) const override {
    if (failing_.count(r.cue)) throw Error(ErrorCode::ProviderUnavailable, "test", "offline");
    return inner_.respond(r, h);
  }
  std::vector<EditCommand> analyze(const AnalyzeRequest& r) const override { return inner_.analyze(r); }

 private:
  std::set<Cue> failing_;
  TemplateProvider inner_;
};

Driver to_selection() {
  Driver d;
  d.say("I want to lose weight and build strength")
      .say("Nothing else.")
      .say("Monday, Wednesday and Friday after work")
      .say("No, that's all.")
      .say("Late meetings at the office");
  return d;
}

Driver to_done() {
  Driver d = to_selection();
  d.say("I'd like to do Running and Squats.").say("Looks good, thanks!");
  return d;
}

}  // namespace

TEST_SUITE("orchestrator") {
  TEST_CASE("a new session greets the user by name") {
    Driver d;
    CHECK(d.session.stage() == Stage::GatherGoals);
    CHECK(d.reply.find("Ada") != std::string::npos);
    REQUIRE(d.log.size() == 2);
    CHECK(d.log[0].kind == EventKind::SessionCreated);
    CHECK(d.log[1].kind == EventKind::AgentMsg);
    CHECK_THROWS_AS(d.orch->create_session("s2", "   "), Error);
    CHECK_THROWS_AS(d.orch->create_session("", "Bob"), Error);
  }

  TEST_CASE("gathering moves through goals, availability and obstacles") {
    Driver d;
    d.say("I want to lose weight and build strength");
    CHECK(d.session.summary.goals.size() == 2);
    CHECK(d.session.stage() == Stage::GatherGoals);
    d.say("Nothing else.");
    CHECK(d.session.stage() == Stage::GatherAvailability);
    d.say("Monday, Wednesday and Friday after work; Saturday mornings");
    CHECK(d.session.summary.availabilities.size() == 2);
    d.say("No, that's all.");
    CHECK(d.session.stage() == Stage::GatherObstacles);
    CHECK(d.reply.find("Monday, Wednesday and Friday after work") != std::string::npos);
    d.say("Late meetings");
    CHECK(d.session.stage() == Stage::GatherObstacles);
    CHECK(d.session.control.obstacle_cursor == 1);
    CHECK(d.session.summary.obstacles[0].payload["linked_availability_ids"] == Json::array({"a1"}));
    d.say("Family breakfasts");
    CHECK(d.session.stage() == Stage::AwaitSelection);
    CHECK(d.session.summary.recommended_exercises.size() == 5);
    CHECK(d.reply.find("<RowID>") != std::string::npos);
  }

  TEST_CASE("a negative reply with nothing recorded asks again") {
    Driver d;
    d.say("No.");
    CHECK(d.session.stage() == Stage::GatherGoals);
    CHECK(d.session.summary.goals.empty());
  }

  TEST_CASE("selection, plan and approval") {
    Driver d = to_selection();
    d.say("I'd like to do Running and Squats.");
    CHECK(d.session.stage() == Stage::Plan);
    REQUIRE(d.session.plan.has_value());
    const auto report = evaluate(*d.session.plan, *testing::shared_catalog());
    CHECK(report.all_ok());
    CHECK(d.reply.find("<If>") != std::string::npos);
    CHECK_FALSE(d.session.summary.implementation_intentions.empty());
    d.say("Looks good, thanks!");
    CHECK(d.session.stage() == Stage::Done);
    CHECK_THROWS_AS(d.say("hello?"), Error);
  }

  TEST_CASE("a single category selection prompts for the other type once") {
    Driver d = to_selection();
    d.say("Running please");
    CHECK(d.session.stage() == Stage::AwaitSelection);
    CHECK(d.session.control.balance_prompted);
    CHECK(d.reply.find("strength") != std::string::npos);
    d.say("No, that's fine.");
    CHECK(d.session.stage() == Stage::Plan);
    CHECK_FALSE(evaluate(*d.session.plan, *testing::shared_catalog()).balance_ok);
  }

  TEST_CASE("unmatched selections ask for clarification and refresh on request") {
    Driver d = to_selection();
    d.say("Hmm, maybe the blue one?");
    CHECK(d.session.stage() == Stage::AwaitSelection);
    std::set<std::string> before;
    for (const auto& e : d.session.summary.recommended_exercises) before.insert(e.payload["exercise_row_id"].get<std::string>());
    d.say("Could you show me other options?");
    CHECK(d.session.control.refresh_count == 1);
    for (const auto& e : d.session.summary.recommended_exercises) CHECK(before.count(e.payload["exercise_row_id"].get<std::string>()) == 0);
  }

  TEST_CASE("plan feedback edits the plan") {
    Driver d = to_selection();
    d.say("I'd like to do Running and Squats.");
    d.say("Please remove Squats");
    CHECK_FALSE(d.session.summary.is_selected("60"));
    CHECK(d.session.stage() == Stage::Plan);
    for (const auto& r : d.session.plan->rules) CHECK(r.exercise_name != "Squats");
    d.say("Hmm.");
    CHECK(d.session.stage() == Stage::Plan);
  }

  TEST_CASE("iteration with satisfaction offers a progression") {
    Driver d = to_done();
    const int before = effective_minutes(*d.session.plan);
    CHECK_THROWS_AS(d.orch->start_iteration(Driver{}.session), Error);
    d.iterate();
    CHECK(d.session.stage() == Stage::Iterate);
    CHECK(d.session.control.iteration == 1);
    d.say("Yes, I followed the plan and I was satisfied.");
    CHECK(d.session.control.progression_offered);
    CHECK(effective_minutes(*d.session.plan) == before);
    d.say("Yes, please.");
    CHECK(d.session.stage() == Stage::Done);
    CHECK(effective_minutes(*d.session.plan) == before + progression_step(before, SynthesisConfig{}));
  }

  TEST_CASE("declining the progression keeps the plan") {
    Driver d = to_done();
    const auto plan = *d.session.plan;
    d.iterate().say("Yes, it went well.").say("No, keep it as is.");
    CHECK(d.session.stage() == Stage::Done);
    CHECK(*d.session.plan == plan);
  }

  TEST_CASE("a reduced amount becomes a waiver") {
    Driver d = to_done();
    d.iterate().say("It was too much for me, I could only manage 100 minutes a week.");
    CHECK(d.session.control.reduced_target == 100);
    // Three sessions move in 5-minute steps, so 3 x 35 is the first total >= 100.
    CHECK(effective_minutes(*d.session.plan) == 105);
    const auto report = evaluate(*d.session.plan, *testing::shared_catalog(), {}, d.session.control.waivers);
    CHECK(report.amount_ok);
  }

  TEST_CASE("an injury removes the exercise and excuses balance") {
    Driver d = to_done();
    d.iterate().say("My knee hurt when doing Squats, please remove it.");
    CHECK_FALSE(d.session.summary.is_selected("60"));
    REQUIRE_FALSE(d.session.control.waivers.empty());
    CHECK(d.session.control.waivers.back().kind == WaiverKind::InjuryExclusion);
    CHECK(evaluate(*d.session.plan, *testing::shared_catalog(), {}, d.session.control.waivers).balance_ok);
  }

  TEST_CASE("a new goal during iteration refreshes recommendations") {
    Driver d = to_done();
    d.iterate().say("I also want to sleep better.");
    CHECK(d.session.summary.goals.size() == 3);
    CHECK(d.session.stage() == Stage::AwaitSelection);
  }

  TEST_CASE("replaying the event log reproduces the session") {
    Driver d = to_done();
    d.iterate().say("Yes, I followed the plan and I was satisfied.").say("Yes, please.");
    const Session replayed = d.orch->replay(d.log);
    CHECK(replayed == d.session);
    CHECK(to_json(replayed).dump() == to_json(d.session).dump());
  }

  TEST_CASE("provider failures leave no events") {
    auto flaky = std::make_shared<const Orchestrator>(testing::shared_catalog(), testing::shared_index(),
                                                      std::make_shared<FlakyProvider>(std::set<Cue>{Cue::AskMoreGoals}));
    Driver d(flaky);
    const Session before = d.session;
    const auto r = flaky->handle_user_message(d.session, "I want to swim");
    CHECK(r.provider_failed);
    CHECK(r.events.empty());
    CHECK(r.session.summary == before.summary);
    CHECK(r.session.history.size() == before.history.size() + 2);
    CHECK_FALSE(r.failure.empty());

    auto no_greeting = std::make_shared<const Orchestrator>(
        testing::shared_catalog(), testing::shared_index(), std::make_shared<FlakyProvider>(std::set<Cue>{Cue::Greeting}));
    CHECK_THROWS_AS(no_greeting->create_session("x", "Bob"), Error);
  }

  TEST_CASE("empty messages are rejected") {
    Driver d;
    CHECK_THROWS_AS(d.say("   "), Error);
  }

  TEST_CASE("instructions carry the planning status") {
    Driver d = to_done();
    const auto text = build_instruction(Cue::PresentPlan, d.session);
    CHECK(text.find("Lose weight") != std::string::npos);
    CHECK(text.find("<If>") != std::string::npos);
  }

  TEST_CASE("logical clock counts from one") {
    auto c = logical_clock();
    auto copy = c;
    CHECK(c() == 1);
    CHECK(copy() == 2);
    CHECK(system_clock_ms()() > 1'600'000'000'000LL);
  }
}
