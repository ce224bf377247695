#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planfit/catalog.h"
#include "planfit/json.h"

namespace planfit {

enum class Target { Goal, Availability, Obstacle, RecommendedExercise, ImplementationIntention };
enum class Method { Add, Update, Remove };

inline constexpr std::array<Target, 5> kAllTargets = {Target::Goal, Target::Availability, Target::Obstacle,
                                                      Target::RecommendedExercise, Target::ImplementationIntention};

std::string_view to_string(Target t) noexcept;  // wire token, e.g. "recommended_exercise"
std::string_view to_string(Method m) noexcept;
std::optional<Target> parse_target(std::string_view token);
std::optional<Method> parse_method(std::string_view token);
char id_prefix(Target t) noexcept;  // g a o r p

/// One element of a summary collection. `payload` holds the target-specific
/// fields (see validate_payload); `parent_ids` is only used by implementation
/// intentions.
struct SummaryEntity {
  std::string id;
  Json payload = Json::object();
  std::vector<std::string> parent_ids;

  std::string label() const;  // payload "label" or empty

  friend bool operator==(const SummaryEntity&, const SummaryEntity&) = default;
};

/// Checks and normalises a payload for `target`: aliases ("name",
/// "description", "text") fold into "label"; unknown fields are dropped.
/// Returns the reason on failure.
std::optional<std::string> validate_payload(Target target, Json& payload);

/// Analyzer instruction. `params` keeps the wire shape:
///   add    -> {"entity": {...}, optional "parent_ids"}
///   update -> {"id": "...", "update": {...}}
///   remove -> {"id": "..."}
struct EditCommand {
  Target target = Target::Goal;
  Method method = Method::Add;
  Json params = Json::object();

  static EditCommand add(Target target, Json entity);
  static EditCommand update(Target target, std::string id, Json fields);
  static EditCommand remove(Target target, std::string id);

  friend bool operator==(const EditCommand&, const EditCommand&) = default;
};

Json to_json(const EditCommand& command);
Json to_json(const std::vector<EditCommand>& commands);

/// Parses one wire object; `index` is reported in MalformedCommand errors.
EditCommand command_from_json(const Json& j, std::size_t index);

/// Locates the first JSON array in `text` (prose and code fences allowed
/// around it) and parses every element. Throws NoArrayFound, UnknownTarget,
/// MalformedCommand.
std::vector<EditCommand> parse_commands_json(std::string_view text);

struct PlanSummary {
  std::vector<SummaryEntity> goals;
  std::vector<SummaryEntity> availabilities;
  std::vector<SummaryEntity> obstacles;
  std::vector<SummaryEntity> recommended_exercises;
  std::vector<std::string> selected_exercise_row_ids;
  std::vector<SummaryEntity> implementation_intentions;
  std::int64_t revision = 0;
  std::array<int, 5> id_counters{};  // last id number issued per target; never reused

  std::vector<SummaryEntity>& collection(Target t);
  const std::vector<SummaryEntity>& collection(Target t) const;
  const SummaryEntity* find(Target t, std::string_view id) const;
  bool is_selected(std::string_view row_id) const;

  friend bool operator==(const PlanSummary&, const PlanSummary&) = default;
};

/// Applies the batch in order, all-or-nothing. Returns the new summary with
/// revision+1 (unchanged for an empty batch). When `catalog` is given,
/// recommended_exercise adds must name a known row id.
/// Throws UnknownId("target:id"), MalformedCommand(index).
PlanSummary apply_edits(const PlanSummary& summary, const std::vector<EditCommand>& commands,
                        const Catalog* catalog = nullptr);

/// Appends row_id to the selection if absent. Throws UnknownExercise.
PlanSummary select_exercise(const PlanSummary& summary, std::string_view row_id, const Catalog& catalog);
/// Removes row_id from the selection if present. Throws UnknownExercise.
PlanSummary deselect_exercise(const PlanSummary& summary, std::string_view row_id, const Catalog& catalog);

Json to_json(const SummaryEntity& entity);
Json to_json(const PlanSummary& summary);
PlanSummary summary_from_json(const Json& j);

}  // namespace planfit
