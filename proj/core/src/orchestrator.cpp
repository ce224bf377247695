#include "planfit/orchestrator.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>

#include "planfit/availability.h"
#include "planfit/error.h"
#include "planfit/log.h"
#include "planfit/text.h"

namespace planfit {

Clock logical_clock() {
  auto counter = std::make_shared<std::atomic<std::int64_t>>(0);
  return [counter] { return ++*counter; };
}

Clock system_clock_ms() {
  return [] {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
  };
}

namespace {

std::string task_for(Cue cue) {
  switch (cue) {
    case Cue::Greeting:
    case Cue::AskGoals:
    case Cue::AskMoreGoals:
      return "You are a friendly exercise coach building a weekly plan with the user. Ask about their exercise "
             "goals one question at a time. Once goals are recorded, ask whether they want to add anything.";
    case Cue::AskAvailability:
    case Cue::AskMoreAvailability:
      return "Ask when during the week the user can exercise. Once availability is recorded, ask whether there "
             "are other times.";
    case Cue::AskObstacle:
      return "Ask about possible obstacles for the availability currently under discussion. Ask about one "
             "availability per message.";
    case Cue::RequestRetrieval:
      return "Identify exercise-related keywords from the user's goals and obstacles.";
    case Cue::PresentRecommendations:
    case Cue::ClarifySelection:
      return "Present the recommended exercises as <Output><Exercise>name</Exercise> (<RowID>id</RowID>): "
             "reason</Output> lines and ask which ones the user wants.";
    case Cue::AskOtherType:
      return "The selected exercises are all of one type. Ask whether the user wants to add the other type.";
    case Cue::PresentPlan:
    case Cue::AskPlanFeedback:
      return "Write a weekly plan as <If>day situation</If><Then><Exercise>name</Exercise><Amount>N minutes - "
             "moderate|vigorous intensity</Amount></Then> blocks plus <CopingPlan> blocks for obstacles. Reach "
             "150 minutes where vigorous minutes count double, include cardio and strength, and leave a rest "
             "day between sessions where possible. Then ask for feedback.";
    case Cue::Closing:
      return "Confirm the plan is final and close warmly.";
    case Cue::AskAdherence:
    case Cue::AskWhatToChange:
      return "Ask whether the user followed last week's plan and whether they were satisfied; if not, ask what "
             "should change.";
    case Cue::OfferProgression:
    case Cue::ProgressionApplied:
      return "Suggest slightly longer sessions for progression and confirm the updated plan.";
  }
  return {};
}

std::size_t user_turns(const Session& s) {
  return static_cast<std::size_t>(
      std::count_if(s.history.begin(), s.history.end(), [](const Turn& t) { return t.role == Role::User; }));
}

bool is_provider_failure(const Error& e) {
  return e.code() == ErrorCode::ProviderUnavailable || e.code() == ErrorCode::ScriptExhausted;
}

std::string apology() {
  return "Sorry, I'm having trouble responding right now. Could you send that again in a moment?";
}

}  // namespace

std::string build_instruction(Cue cue, const Session& session) {
  std::string out = task_for(cue);
  out += " Always phrase your message as a question or end with one, and acknowledge the user's feelings.";
  out += "\n\nUser name: " + session.user_name;
  out += "\n\nPlanning status:\n" + to_json(session.summary).dump(2);
  if (session.plan) out += "\n\nCurrent plan:\n" + serialize_plan_xml(*session.plan);
  return out;
}

/// Accumulates the events of one turn; every change goes through apply_event.
class TurnBuilder {
 public:
  TurnBuilder(const Orchestrator& o, Session s) : o_(o), s_(std::move(s)) {}

  Session& session() { return s_; }
  std::vector<SessionEvent>& events() { return events_; }

  void emit(EventKind kind, Json payload) {
    SessionEvent e{kind, std::move(payload), o_.clock_()};
    apply_event(s_, e, *o_.catalog_);
    events_.push_back(std::move(e));
  }

  void set_control(const Control& c) {
    if (c == s_.control) return;
    emit(EventKind::StageChange, Json{{"control", to_json(c)}});
  }

  void set_stage(Stage stage) {
    Control c = s_.control;
    c.stage = stage;
    set_control(c);
  }

  /// Applies a batch atomically; invalid batches are dropped with a warning.
  bool apply_commands(const std::vector<EditCommand>& cmds) {
    if (cmds.empty()) return false;
    try {
      PlanSummary next = apply_edits(s_.summary, cmds, o_.catalog_.get());
      emit(EventKind::EditsApplied,
           Json{{"ops", Json::array({Json{{"op", "edits"}, {"commands", to_json(cmds)}}})}, {"revision", next.revision}});
      return true;
    } catch (const Error& e) {
      log_warning(std::string("edit batch ignored: ") + e.what());
      return false;
    }
  }

  bool select(const std::string& row_id, bool on) {
    if (s_.summary.is_selected(row_id) == on) return false;
    PlanSummary next = on ? select_exercise(s_.summary, row_id, *o_.catalog_)
                          : deselect_exercise(s_.summary, row_id, *o_.catalog_);
    emit(EventKind::EditsApplied, Json{{"ops", Json::array({Json{{"op", on ? "select" : "deselect"}, {"row_id", row_id}}})},
                                       {"revision", next.revision}});
    return true;
  }

  void set_plan(const std::optional<WeeklyPlan>& plan, const std::vector<Advisory>& advisories) {
    emit(EventKind::PlanSet, Json{{"plan", plan ? to_json(*plan) : Json()}, {"advisories", to_json(advisories)}});
    mirror_intentions();
  }

  ResponseRequest request(Cue cue) const {
    ResponseRequest r;
    r.instruction = build_instruction(cue, s_);
    r.cue = cue;
    r.stage = s_.control.stage;
    r.turn_index = user_turns(s_);
    r.user_name = s_.user_name;
    r.summary = s_.summary;
    r.plan = s_.plan;
    r.advisories = s_.advisories;
    return r;
  }

  ProviderReply respond(const ResponseRequest& r) { return o_.provider_->respond(r, s_.history); }

  std::string render(Cue cue) {
    auto r = request(cue);
    return respond(r).text;
  }

  void reply(std::string text) {
    reply_ = text;
    emit(EventKind::AgentMsg, Json{{"text", std::move(text)}});
  }
  const std::string& reply_text() const { return reply_; }

  // -- stage handlers -------------------------------------------------------

  std::string on_user_message(std::string_view text) {
    const Stage stage = s_.control.stage;
    AnalyzeRequest ar;
    ar.agent_text = s_.history.empty() ? std::string() : s_.history.back().text;
    ar.user_text = std::string(text);
    ar.stage = stage;
    ar.turn_index = user_turns(s_);
    ar.summary = s_.summary;
    ar.catalog = o_.catalog_.get();
    if (stage == Stage::GatherObstacles) {
      const auto& av = s_.summary.availabilities;
      const auto cursor = static_cast<std::size_t>(s_.control.obstacle_cursor);
      if (cursor < av.size()) ar.focus_availability_id = av[cursor].id;
    }
    emit(EventKind::UserMsg, Json{{"text", std::string(text)}});
    const auto cmds = o_.provider_->analyze(ar);
    const bool applied = apply_commands(cmds);

    switch (stage) {
      case Stage::GatherGoals: return gather_goals(text, applied);
      case Stage::GatherAvailability: return gather_availability(text, applied);
      case Stage::GatherObstacles: return gather_obstacles();
      case Stage::Recommend: return enter_recommend(true);
      case Stage::AwaitSelection: return await_selection(text);
      case Stage::Plan: return plan_feedback(text, applied, cmds);
      case Stage::Iterate: return iterate(text, applied, cmds);
      case Stage::Done: break;
    }
    throw Error(ErrorCode::SessionDone, s_.id);
  }

  std::string gather_goals(std::string_view text, bool applied) {
    if (applied && !s_.summary.goals.empty()) return render(Cue::AskMoreGoals);
    if (intent::is_negative(text) && !s_.summary.goals.empty()) {
      set_stage(Stage::GatherAvailability);
      return render(Cue::AskAvailability);
    }
    return render(Cue::AskGoals);
  }

  std::string gather_availability(std::string_view text, bool applied) {
    if (applied && !s_.summary.availabilities.empty()) return render(Cue::AskMoreAvailability);
    if (intent::is_negative(text) && !s_.summary.availabilities.empty()) {
      Control c = s_.control;
      c.stage = Stage::GatherObstacles;
      c.obstacle_cursor = 0;
      set_control(c);
      return ask_obstacle();
    }
    return render(Cue::AskAvailability);
  }

  std::string ask_obstacle() {
    auto r = request(Cue::AskObstacle);
    r.focus = s_.summary.availabilities.at(static_cast<std::size_t>(s_.control.obstacle_cursor)).label();
    return respond(r).text;
  }

  std::string gather_obstacles() {
    Control c = s_.control;
    c.obstacle_cursor = std::min<int>(c.obstacle_cursor + 1, static_cast<int>(s_.summary.availabilities.size()));
    if (c.obstacle_cursor < static_cast<int>(s_.summary.availabilities.size())) {
      set_control(c);
      return ask_obstacle();
    }
    set_control(c);
    return enter_recommend(false);
  }

  std::string rationale(const ExerciseEntry& e) const {
    const auto entry_tokens = text::word_tokens(e.index_text());
    for (const auto& g : s_.summary.goals) {
      for (const auto& k : extract_keywords({g.label()})) {
        if (std::find(entry_tokens.begin(), entry_tokens.end(), k) != entry_tokens.end()) {
          return "Fits your goal to " + text::lowercase_first(g.label()) + ".";
        }
      }
    }
    return "A " + std::string(to_string(e.intensity)) + " " + std::string(to_string(e.category)) +
           " exercise that can fit around your schedule.";
  }

  std::string enter_recommend(bool refresh) {
    set_stage(Stage::Recommend);
    const auto first = respond(request(Cue::RequestRetrieval));
    std::vector<std::string> keywords;
    if (first.retrieval_request) keywords = first.retrieval_request->keywords;
    if (keywords.empty()) {
      std::vector<std::string> phrases;
      for (const auto& g : s_.summary.goals) phrases.push_back(g.label());
      for (const auto& ob : s_.summary.obstacles) phrases.push_back(ob.label());
      keywords = extract_keywords(phrases);
    }
    if (keywords.empty()) keywords = {"exercise"};

    std::set<std::string> shown;
    if (refresh) {
      for (const auto& e : s_.summary.recommended_exercises) shown.insert(e.payload.value("exercise_row_id", ""));
    }
    RetrievalConfig rc = o_.config_.retrieval;
    rc.k = o_.config_.retrieval.k + static_cast<int>(shown.size());
    auto hits = retrieve_top_k(keywords, *o_.index_, rc);
    std::vector<ScoredExercise> fresh;
    for (auto& h : hits) {
      if (shown.count(h.entry.row_id) == 0 && static_cast<int>(fresh.size()) < o_.config_.retrieval.k) fresh.push_back(h);
    }
    if (fresh.empty()) {
      for (auto& h : hits) {
        if (static_cast<int>(fresh.size()) < o_.config_.retrieval.k) fresh.push_back(h);
      }
    }

    std::vector<EditCommand> cmds;
    for (const auto& e : s_.summary.recommended_exercises) cmds.push_back(EditCommand::remove(Target::RecommendedExercise, e.id));
    for (const auto& h : fresh) {
      cmds.push_back(EditCommand::add(Target::RecommendedExercise, Json{{"exercise_row_id", h.entry.row_id},
                                                                         {"exercise_name", h.entry.name},
                                                                         {"rationale", rationale(h.entry)}}));
    }
    apply_commands(cmds);
    Control c = s_.control;
    c.stage = Stage::AwaitSelection;
    if (refresh) ++c.refresh_count;
    set_control(c);
    return render(Cue::PresentRecommendations);
  }

  std::set<Category> selected_categories() const {
    std::set<Category> cats;
    for (const auto& rid : s_.summary.selected_exercise_row_ids) cats.insert(o_.catalog_->at(rid).category);
    return cats;
  }

  std::string await_selection(std::string_view text) {
    const auto mentions = o_.catalog_->mentioned_in(text);
    const bool removing = intent::wants_removal(text);
    for (const auto* e : mentions) select(e->row_id, !removing);
    const bool have = !s_.summary.selected_exercise_row_ids.empty();

    if (mentions.empty()) {
      if (have && (intent::is_negative(text) || intent::is_affirmative(text))) return enter_plan();
      if (intent::is_negative(text) || intent::wants_refresh(text)) return enter_recommend(true);
      return render(Cue::ClarifySelection);
    }
    if (!have) return render(Cue::ClarifySelection);
    const auto cats = selected_categories();
    if (cats.size() == 1 && !s_.control.balance_prompted) {
      Control c = s_.control;
      c.balance_prompted = true;
      set_control(c);
      auto r = request(Cue::AskOtherType);
      r.focus = std::string(to_string(*cats.begin()));
      return respond(r).text;
    }
    return enter_plan();
  }

  SynthesisConfig synthesis_config() const {
    SynthesisConfig cfg = o_.config_.synthesis;
    if (s_.control.reduced_target > 0) cfg.target_effective_minutes = s_.control.reduced_target;
    return cfg;
  }

  void mirror_intentions() {
    std::vector<EditCommand> cmds;
    for (const auto& p : s_.summary.implementation_intentions) {
      const std::string kind = p.payload.value("kind", "");
      if (kind == "rule" || kind == "coping") cmds.push_back(EditCommand::remove(Target::ImplementationIntention, p.id));
    }
    if (s_.plan) {
      for (const auto& r : s_.plan->rules) {
        Json e = to_json(r);
        e["kind"] = "rule";
        cmds.push_back(EditCommand::add(Target::ImplementationIntention, std::move(e)));
      }
      for (const auto& c : s_.plan->coping_plans) {
        Json e{{"id", c.id}, {"kind", "coping"}, {"obstacle_clause", c.obstacle_clause}, {"alternative", c.alternative}};
        EditCommand cmd = EditCommand::add(Target::ImplementationIntention, std::move(e));
        cmd.params["parent_ids"] = c.parent_rule_ids;
        cmds.push_back(std::move(cmd));
      }
    }
    apply_commands(cmds);
  }

  std::string enter_plan() {
    set_stage(Stage::Plan);
    const SynthesisConfig cfg = synthesis_config();
    if (o_.provider_->writes_plans()) {
      auto r = request(Cue::PresentPlan);
      const auto reply = respond(r);
      try {
        WeeklyPlan parsed = parse_plan_xml(reply.text);
        auto repaired = repair(parsed, s_.summary, *o_.catalog_, cfg);
        set_plan(repaired.plan, repaired.advisories);
        std::string text = reply.text;
        if (!(repaired.plan == parsed)) {
          text += "\n\nI adjusted the plan to follow the exercise guidelines:\n" + serialize_plan_xml(repaired.plan);
        }
        return text;
      } catch (const Error& e) {
        log_warning(std::string("model plan rejected, synthesizing instead: ") + e.what());
      }
    }
    try {
      auto result = synthesize(s_.summary, *o_.catalog_, cfg, s_.control.waivers);
      set_plan(result.plan, result.advisories);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoAvailability && e.code() != ErrorCode::NoExercisesSelected) throw;
      set_plan(std::nullopt, {Advisory{AdvisoryKind::AvailabilityConflict,
                                       "I couldn't find a day to schedule exercise; could you tell me when you are free?"}});
      auto r = request(Cue::AskPlanFeedback);
      return TemplateProvider::render(r) + "\nNote: " + s_.advisories.front().message;
    }
    if (o_.provider_->writes_plans()) return TemplateProvider::render(request(Cue::PresentPlan));
    return render(Cue::PresentPlan);
  }

  static bool touches(const std::vector<EditCommand>& cmds, Target t) {
    return std::any_of(cmds.begin(), cmds.end(), [&](const EditCommand& c) { return c.target == t; });
  }

  std::string plan_feedback(std::string_view text, bool applied, const std::vector<EditCommand>& cmds) {
    const auto mentions = o_.catalog_->mentioned_in(text);
    if (!mentions.empty()) {
      const bool removing = intent::wants_removal(text);
      for (const auto* e : mentions) select(e->row_id, !removing);
      if (s_.summary.selected_exercise_row_ids.empty()) return enter_recommend(true);
      return enter_plan();
    }
    if (applied && (touches(cmds, Target::Goal) || touches(cmds, Target::Obstacle))) return enter_recommend(false);
    if (applied) return enter_plan();
    if (intent::is_affirmative(text)) {
      set_stage(Stage::Done);
      return render(Cue::Closing);
    }
    return render(Cue::AskPlanFeedback);
  }

  std::string finish_with_progression() {
    Control c = s_.control;
    c.progression_offered = false;
    c.stage = Stage::Done;
    try {
      WeeklyPlan next = apply_progression(*s_.plan, synthesis_config());
      set_control(c);
      set_plan(next, s_.advisories);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapsSaturated) throw;
      set_control(c);
    }
    return render(Cue::ProgressionApplied);
  }

  std::string iterate(std::string_view text, bool applied, const std::vector<EditCommand>& cmds) {
    if (s_.control.progression_offered) {
      if (intent::is_affirmative(text)) return finish_with_progression();
      Control c = s_.control;
      c.progression_offered = false;
      c.stage = Stage::Done;
      set_control(c);
      return render(Cue::Closing);
    }

    bool changed = false;
    const auto mentions = o_.catalog_->mentioned_in(text);
    const bool injury = intent::mentions_injury(text);
    Control c = s_.control;
    if (!mentions.empty()) {
      const bool dropping = intent::wants_removal(text) || injury || intent::is_dissatisfied(text);
      for (const auto* e : mentions) changed = select(e->row_id, !dropping) || changed;
      if (injury && dropping) {
        DaySet none;
        c.waivers.push_back(Waiver{WaiverKind::InjuryExclusion, text::trim(text), none});
      }
    }
    if (auto minutes = intent::reduced_minutes(text)) {
      c.reduced_target = *minutes;
      c.waivers.push_back(Waiver{WaiverKind::UserReducedAmount, text::trim(text), DaySet{}});
      changed = true;
    }
    set_control(c);

    if (applied && (touches(cmds, Target::Goal) || touches(cmds, Target::Obstacle))) return enter_recommend(false);
    if (applied) changed = true;
    if (changed) {
      if (s_.summary.selected_exercise_row_ids.empty()) return enter_recommend(true);
      return enter_plan();
    }
    if (intent::is_affirmative(text)) {
      try {
        auto r = request(Cue::OfferProgression);
        r.preview = apply_progression(*s_.plan, synthesis_config());
        Control offered = s_.control;
        offered.progression_offered = true;
        set_control(offered);
        r.instruction = build_instruction(Cue::OfferProgression, s_);
        return respond(r).text;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CapsSaturated) throw;
        set_stage(Stage::Done);
        return render(Cue::Closing);
      }
    }
    return render(Cue::AskWhatToChange);
  }

 private:
  const Orchestrator& o_;
  Session s_;
  std::vector<SessionEvent> events_;
  std::string reply_;
};

Orchestrator::Orchestrator(std::shared_ptr<const Catalog> catalog, std::shared_ptr<const ExerciseIndex> index,
                           std::shared_ptr<const Provider> provider, OrchestratorConfig config, Clock clock)
    : catalog_(std::move(catalog)),
      index_(std::move(index)),
      provider_(std::move(provider)),
      config_(std::move(config)),
      clock_(std::move(clock)) {
  if (!catalog_ || !index_ || !provider_) throw Error(ErrorCode::InvalidConfig, "orchestrator", "missing collaborator");
  config_.retrieval.validate();
  config_.synthesis.validate();
  if (!clock_) clock_ = logical_clock();
}

TurnResult Orchestrator::create_session(std::string id, std::string user_name) const {
  user_name = text::trim(user_name);
  if (user_name.empty()) throw Error(ErrorCode::InvalidArgument, "user_name", "user name is empty");
  if (id.empty()) throw Error(ErrorCode::InvalidArgument, "session_id", "session id is empty");
  TurnBuilder b(*this, Session{});
  b.emit(EventKind::SessionCreated, Json{{"session_id", id}, {"user_name", user_name}});
  b.reply(b.render(Cue::Greeting));
  return {b.session(), b.reply_text(), std::move(b.events()), false, {}};
}

TurnResult Orchestrator::handle_user_message(const Session& session, std::string_view text) const {
  if (session.control.stage == Stage::Done) throw Error(ErrorCode::SessionDone, session.id);
  if (text::trim(text).empty()) throw Error(ErrorCode::InvalidArgument, "text", "message is empty");
  TurnBuilder b(*this, session);
  try {
    std::string reply = b.on_user_message(text);
    b.reply(std::move(reply));
    return {b.session(), b.reply_text(), std::move(b.events()), false, {}};
  } catch (const Error& e) {
    if (!is_provider_failure(e)) throw;
    log_warning(std::string("provider failure: ") + e.what());
    TurnResult out;
    out.session = session;
    out.session.history.push_back({Role::User, std::string(text), clock_()});
    out.session.history.push_back({Role::Agent, apology(), clock_()});
    out.reply = apology();
    out.provider_failed = true;
    out.failure = e.what();
    return out;
  }
}

TurnResult Orchestrator::start_iteration(const Session& session) const {
  if (!session.plan) throw Error(ErrorCode::NoPlanYet, session.id);
  TurnBuilder b(*this, session);
  try {
    Control c = session.control;
    c.stage = Stage::Iterate;
    c.iteration += 1;
    c.progression_offered = false;
    b.set_control(c);
    b.reply(b.render(Cue::AskAdherence));
    return {b.session(), b.reply_text(), std::move(b.events()), false, {}};
  } catch (const Error& e) {
    if (!is_provider_failure(e)) throw;
    TurnResult out;
    out.session = session;
    out.reply = apology();
    out.provider_failed = true;
    out.failure = e.what();
    return out;
  }
}

Session Orchestrator::replay(const std::vector<SessionEvent>& events) const {
  Session s;
  for (const auto& e : events) apply_event(s, e, *catalog_);
  return s;
}

}  // namespace planfit
