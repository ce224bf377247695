#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planfit/catalog.h"
#include "planfit/guideline.h"
#include "planfit/json.h"
#include "planfit/plan.h"
#include "planfit/summary.h"
#include "planfit/synthesizer.h"

namespace planfit {

enum class Stage { GatherGoals, GatherAvailability, GatherObstacles, Recommend, AwaitSelection, Plan, Iterate, Done };

std::string_view to_string(Stage s) noexcept;  // "gather_goals", ...
Stage stage_from_string(std::string_view s);

/// Legal stage edges. Recommend is transient and always exits to AwaitSelection.
bool is_allowed_transition(Stage from, Stage to) noexcept;

enum class Role { Agent, User };

std::string_view to_string(Role r) noexcept;

struct Turn {
  Role role = Role::Agent;
  std::string text;
  std::int64_t timestamp = 0;

  friend bool operator==(const Turn&, const Turn&) = default;
};

/// Conversation bookkeeping beyond the stage itself.
struct Control {
  Stage stage = Stage::GatherGoals;
  int obstacle_cursor = 0;          // index into summary.availabilities
  bool balance_prompted = false;    // other-type question already asked
  bool progression_offered = false; // preview shown, awaiting yes/no
  int refresh_count = 0;            // recommendation refreshes
  int iteration = 0;                // completed start_iteration calls
  int reduced_target = 0;           // user-requested weekly target, 0 = default
  std::vector<Waiver> waivers;

  friend bool operator==(const Control&, const Control&) = default;
};

Json to_json(const Control& c);
Control control_from_json(const Json& j);

struct Session {
  std::string id;
  std::string user_name;
  std::vector<Turn> history;
  PlanSummary summary;
  Control control;
  std::optional<WeeklyPlan> plan;
  std::vector<Advisory> advisories;

  Stage stage() const noexcept { return control.stage; }
  friend bool operator==(const Session&, const Session&) = default;
};

Json to_json(const Turn& t);
Json to_json(const Session& s);
Session session_from_json(const Json& j);

enum class EventKind { SessionCreated, UserMsg, AgentMsg, EditsApplied, PlanSet, StageChange };

std::string_view to_string(EventKind k) noexcept;
EventKind event_kind_from_string(std::string_view s);

/// A state change produced by the orchestrator. Sessions are only ever mutated
/// through apply_event, so replaying a log reproduces the live session.
///
/// Payloads:
///   session_created {session_id, user_name}
///   user_msg / agent_msg {text}
///   edits_applied {ops: [{op:"edits", commands:[...]} | {op:"select"|"deselect", row_id}], revision}
///   plan_set {plan: WeeklyPlan|null, advisories: [...]}
///   stage_change {control}
struct SessionEvent {
  EventKind kind = EventKind::UserMsg;
  Json payload = Json::object();
  std::int64_t timestamp = 0;
};

/// Throws CorruptLog when the event does not fit the session (e.g. the
/// revision after replaying edits differs from the recorded one).
void apply_event(Session& session, const SessionEvent& event, const Catalog& catalog);

}  // namespace planfit
