#include "planfit/dialogue.h"

#include <algorithm>
#include <array>

#include "planfit/error.h"

namespace planfit {

namespace {

constexpr std::array<Stage, 8> kStages = {Stage::GatherGoals, Stage::GatherAvailability, Stage::GatherObstacles,
                                          Stage::Recommend,   Stage::AwaitSelection,     Stage::Plan,
                                          Stage::Iterate,     Stage::Done};

constexpr std::array<EventKind, 6> kEventKinds = {EventKind::SessionCreated, EventKind::UserMsg,  EventKind::AgentMsg,
                                                  EventKind::EditsApplied,   EventKind::PlanSet, EventKind::StageChange};

Error corrupt(std::string detail, std::string message) {
  return Error(ErrorCode::CorruptLog, std::move(detail), std::move(message));
}

}  // namespace

std::string_view to_string(Stage s) noexcept {
  switch (s) {
    case Stage::GatherGoals: return "gather_goals";
    case Stage::GatherAvailability: return "gather_availability";
    case Stage::GatherObstacles: return "gather_obstacles";
    case Stage::Recommend: return "recommend";
    case Stage::AwaitSelection: return "await_selection";
    case Stage::Plan: return "plan";
    case Stage::Iterate: return "iterate";
    case Stage::Done: return "done";
  }
  return "gather_goals";
}

Stage stage_from_string(std::string_view s) {
  for (auto st : kStages) {
    if (s == to_string(st)) return st;
  }
  throw Error(ErrorCode::InvalidArgument, std::string(s), "unknown stage");
}

bool is_allowed_transition(Stage from, Stage to) noexcept {
  if (from == to) return from != Stage::Recommend;
  switch (from) {
    case Stage::GatherGoals: return to == Stage::GatherAvailability;
    case Stage::GatherAvailability: return to == Stage::GatherObstacles;
    case Stage::GatherObstacles: return to == Stage::Recommend;
    case Stage::Recommend: return to == Stage::AwaitSelection;
    case Stage::AwaitSelection: return to == Stage::Recommend || to == Stage::Plan;
    case Stage::Plan: return to == Stage::Done || to == Stage::Recommend || to == Stage::Iterate;
    case Stage::Iterate: return to == Stage::Recommend || to == Stage::Plan || to == Stage::Done;
    case Stage::Done: return to == Stage::Iterate;
  }
  return false;
}

std::string_view to_string(Role r) noexcept { return r == Role::Agent ? "agent" : "user"; }

Json to_json(const Control& c) {
  Json waivers = Json::array();
  for (const auto& w : c.waivers) waivers.push_back(to_json(w));
  return Json{{"stage", std::string(to_string(c.stage))},
              {"obstacle_cursor", c.obstacle_cursor},
              {"balance_prompted", c.balance_prompted},
              {"progression_offered", c.progression_offered},
              {"refresh_count", c.refresh_count},
              {"iteration", c.iteration},
              {"reduced_target", c.reduced_target},
              {"waivers", std::move(waivers)}};
}

Control control_from_json(const Json& j) {
  Control c;
  c.stage = stage_from_string(j.at("stage").get<std::string>());
  c.obstacle_cursor = j.value("obstacle_cursor", 0);
  c.balance_prompted = j.value("balance_prompted", false);
  c.progression_offered = j.value("progression_offered", false);
  c.refresh_count = j.value("refresh_count", 0);
  c.iteration = j.value("iteration", 0);
  c.reduced_target = j.value("reduced_target", 0);
  for (const auto& w : j.value("waivers", Json::array())) c.waivers.push_back(waiver_from_json(w));
  return c;
}

Json to_json(const Turn& t) {
  return Json{{"role", std::string(to_string(t.role))}, {"text", t.text}, {"timestamp", t.timestamp}};
}

Json to_json(const Session& s) {
  Json history = Json::array();
  for (const auto& t : s.history) history.push_back(to_json(t));
  return Json{{"id", s.id},
              {"user_name", s.user_name},
              {"control", to_json(s.control)},
              {"history", std::move(history)},
              {"summary", to_json(s.summary)},
              {"plan", s.plan ? to_json(*s.plan) : Json()},
              {"advisories", to_json(s.advisories)}};
}

Session session_from_json(const Json& j) {
  Session s;
  s.id = j.at("id").get<std::string>();
  s.user_name = j.at("user_name").get<std::string>();
  s.control = control_from_json(j.at("control"));
  for (const auto& t : j.at("history")) {
    const std::string role = t.at("role").get<std::string>();
    s.history.push_back({role == "user" ? Role::User : Role::Agent, t.at("text").get<std::string>(),
                         t.at("timestamp").get<std::int64_t>()});
  }
  s.summary = summary_from_json(j.at("summary"));
  if (const auto& p = j.at("plan"); !p.is_null()) s.plan = plan_from_json(p);
  for (const auto& a : j.at("advisories")) s.advisories.push_back(advisory_from_json(a));
  return s;
}

std::string_view to_string(EventKind k) noexcept {
  switch (k) {
    case EventKind::SessionCreated: return "session_created";
    case EventKind::UserMsg: return "user_msg";
    case EventKind::AgentMsg: return "agent_msg";
    case EventKind::EditsApplied: return "edits_applied";
    case EventKind::PlanSet: return "plan_set";
    case EventKind::StageChange: return "stage_change";
  }
  return "user_msg";
}

EventKind event_kind_from_string(std::string_view s) {
  for (auto k : kEventKinds) {
    if (s == to_string(k)) return k;
  }
  throw corrupt(std::string(s), "unknown event kind");
}

void apply_event(Session& session, const SessionEvent& event, const Catalog& catalog) {
  const Json& p = event.payload;
  try {
    switch (event.kind) {
      case EventKind::SessionCreated:
        if (!session.id.empty()) throw corrupt("session_created", "session already exists");
        session.id = p.at("session_id").get<std::string>();
        session.user_name = p.at("user_name").get<std::string>();
        return;
      case EventKind::UserMsg:
      case EventKind::AgentMsg: {
        // A user turn always answers an agent turn; an agent may open a new week
        // right after its own closing message.
        const Role role = event.kind == EventKind::UserMsg ? Role::User : Role::Agent;
        const bool after_agent = !session.history.empty() && session.history.back().role == Role::Agent;
        if (session.id.empty()) throw corrupt(std::string(to_string(event.kind)), "message before session_created");
        if (role == Role::User && !after_agent) {
          throw corrupt("user_msg", "a user turn must follow an agent turn");
        }
        session.history.push_back({role, p.at("text").get<std::string>(), event.timestamp});
        return;
      }
      case EventKind::EditsApplied: {
        PlanSummary s = session.summary;
        for (const auto& op : p.at("ops")) {
          const std::string kind = op.at("op").get<std::string>();
          if (kind == "edits") {
            std::vector<EditCommand> cmds;
            const auto& list = op.at("commands");
            for (std::size_t i = 0; i < list.size(); ++i) cmds.push_back(command_from_json(list[i], i));
            s = apply_edits(s, cmds, &catalog);
          } else if (kind == "select") {
            s = select_exercise(s, op.at("row_id").get<std::string>(), catalog);
          } else if (kind == "deselect") {
            s = deselect_exercise(s, op.at("row_id").get<std::string>(), catalog);
          } else {
            throw corrupt(kind, "unknown edit op");
          }
        }
        if (s.revision != p.at("revision").get<std::int64_t>()) {
          throw corrupt("revision", "replayed revision " + std::to_string(s.revision) + " differs from log");
        }
        session.summary = std::move(s);
        return;
      }
      case EventKind::PlanSet: {
        const Json& plan = p.at("plan");
        session.plan = plan.is_null() ? std::nullopt : std::optional<WeeklyPlan>(plan_from_json(plan));
        session.advisories.clear();
        for (const auto& a : p.at("advisories")) session.advisories.push_back(advisory_from_json(a));
        return;
      }
      case EventKind::StageChange: {
        Control next = control_from_json(p.at("control"));
        if (!is_allowed_transition(session.control.stage, next.stage)) {
          throw corrupt(std::string(to_string(session.control.stage)) + "->" + std::string(to_string(next.stage)),
                        "illegal stage transition");
        }
        session.control = std::move(next);
        return;
      }
    }
  } catch (const Json::exception& e) {
    throw corrupt(std::string(to_string(event.kind)), e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptLog) throw;
    throw corrupt(std::string(to_string(event.kind)), e.what());
  }
}

}  // namespace planfit
