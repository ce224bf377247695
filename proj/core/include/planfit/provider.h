#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "planfit/dialogue.h"
#include "planfit/json.h"

namespace planfit {

enum class ProviderMode { Scripted, Template, Remote };

std::string_view to_string(ProviderMode m) noexcept;
ProviderMode provider_mode_from_string(std::string_view s);

struct ProviderConfig {
  ProviderMode mode = ProviderMode::Template;
  std::string model_name = "gpt-4";
  double temperature = 0.5;
  double top_p = 1.0;
  double frequency_penalty = 0.0;
  double presence_penalty = 0.0;
  std::string base_url = "https://api.openai.com";
  std::string api_key;
  int timeout_seconds = 60;
  std::string script_path;  // scripted mode fixture

  /// Throws InvalidConfig (remote without credentials, scripted without a script).
  void validate() const;
};

/// What the orchestrator wants the next agent message to do.
enum class Cue {
  Greeting,
  AskGoals,
  AskMoreGoals,
  AskAvailability,
  AskMoreAvailability,
  AskObstacle,
  RequestRetrieval,
  PresentRecommendations,
  ClarifySelection,
  AskOtherType,
  PresentPlan,
  AskPlanFeedback,
  Closing,
  AskAdherence,
  OfferProgression,
  ProgressionApplied,
  AskWhatToChange,
};

std::string_view to_string(Cue c) noexcept;

/// Everything a provider may draw on for one reply. `instruction` is the full
/// prompt (task description plus serialized planning status); structured
/// fields serve the offline providers.
struct ResponseRequest {
  std::string instruction;
  Cue cue = Cue::Greeting;
  Stage stage = Stage::GatherGoals;
  std::size_t turn_index = 0;  // number of user turns so far
  std::string user_name;
  PlanSummary summary;
  std::string focus;  // availability under discussion, etc.
  std::optional<WeeklyPlan> plan;
  std::optional<WeeklyPlan> preview;
  std::vector<Advisory> advisories;
};

struct RetrievalRequest {
  std::vector<std::string> keywords;
};

struct ProviderReply {
  std::string text;
  std::optional<RetrievalRequest> retrieval_request;
};

struct AnalyzeRequest {
  std::string agent_text;
  std::string user_text;
  Stage stage = Stage::GatherGoals;
  std::size_t turn_index = 0;
  PlanSummary summary;
  std::string focus_availability_id;  // obstacle inquiry target
  const Catalog* catalog = nullptr;
};

class Provider {
 public:
  virtual ~Provider() = default;
  virtual ProviderMode mode() const noexcept = 0;

  /// Throws ProviderUnavailable, ScriptExhausted.
  virtual ProviderReply respond(const ResponseRequest& request, const std::vector<Turn>& history) const = 0;

  /// Edit commands for one (agent, user) turn pair. Throws ProviderUnavailable
  /// only; unparseable model output yields an empty list and a warning.
  virtual std::vector<EditCommand> analyze(const AnalyzeRequest& request) const = 0;

  /// True when PresentPlan replies carry a model-written plan to be parsed and repaired.
  virtual bool writes_plans() const noexcept { return false; }
};

/// Deterministic English templates and rule-based extraction; no network.
class TemplateProvider final : public Provider {
 public:
  ProviderMode mode() const noexcept override { return ProviderMode::Template; }
  ProviderReply respond(const ResponseRequest& request, const std::vector<Turn>& history) const override;
  std::vector<EditCommand> analyze(const AnalyzeRequest& request) const override;

  static std::string render(const ResponseRequest& request);
};

/// Replays fixture replies keyed by (stage, turn index). Fixture: JSON array of
/// {"stage", "turn", "text", optional "retrieval_keywords", optional "commands"}.
/// Entries with "commands" answer analyze(); the rest answer respond().
class ScriptedProvider final : public Provider {
 public:
  explicit ScriptedProvider(Json script);
  static ScriptedProvider from_file(const std::string& path);

  ProviderMode mode() const noexcept override { return ProviderMode::Scripted; }
  ProviderReply respond(const ResponseRequest& request, const std::vector<Turn>& history) const override;
  std::vector<EditCommand> analyze(const AnalyzeRequest& request) const override;

 private:
  Json script_;
};

/// Chat-completions client (`POST /v1/chat/completions`).
class RemoteProvider final : public Provider {
 public:
  explicit RemoteProvider(ProviderConfig config);

  ProviderMode mode() const noexcept override { return ProviderMode::Remote; }
  ProviderReply respond(const ResponseRequest& request, const std::vector<Turn>& history) const override;
  std::vector<EditCommand> analyze(const AnalyzeRequest& request) const override;
  bool writes_plans() const noexcept override { return true; }

  /// Request body for a reply; exposed for inspection in tests.
  Json build_respond_body(const ResponseRequest& request, const std::vector<Turn>& history) const;
  Json build_analyze_body(const AnalyzeRequest& request) const;

 private:
  std::string complete(const Json& body) const;
  ProviderConfig config_;
};

std::unique_ptr<Provider> make_provider(const ProviderConfig& config);

/// Shared intent heuristics used by the template analyzer and the orchestrator.
namespace intent {
bool is_negative(std::string_view text);     // "no", "nothing else", "that's all"
bool is_affirmative(std::string_view text);  // "yes", "looks good", "I was satisfied"
bool is_dissatisfied(std::string_view text); // "not satisfied", "didn't", "too hard"
bool wants_removal(std::string_view text);   // remove / delete / drop / stop
bool wants_refresh(std::string_view text);   // "other options", "something else"
/// "I want to lose weight and fix my posture" -> {"Lose weight", "Fix my posture"}.
std::vector<std::string> split_goals(std::string_view text);
/// Clauses separated by ';' or new lines, trimmed, trailing punctuation removed.
std::vector<std::string> split_clauses(std::string_view text);
/// "only 100 minutes" style cap on the weekly amount, if stated.
std::optional<int> reduced_minutes(std::string_view text);
bool mentions_injury(std::string_view text);
}  // namespace intent

}  // namespace planfit
