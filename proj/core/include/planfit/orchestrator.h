#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "planfit/dialogue.h"
#include "planfit/provider.h"
#include "planfit/retrieval.h"
#include "planfit/synthesizer.h"

namespace planfit {

/// Source of event and turn timestamps (milliseconds or logical ticks).
using Clock = std::function<std::int64_t()>;

/// 1, 2, 3, ... shared by every copy; deterministic runs use this.
Clock logical_clock();
/// Milliseconds since the Unix epoch.
Clock system_clock_ms();

struct OrchestratorConfig {
  RetrievalConfig retrieval;
  SynthesisConfig synthesis;
};

struct TurnResult {
  Session session;
  std::string reply;
  std::vector<SessionEvent> events;  // empty when the provider failed
  bool provider_failed = false;
  std::string failure;
};

/// Runs the analyze -> apply -> advance -> respond cycle. Stateless apart from
/// its shared read-only collaborators, so one instance serves many sessions.
class Orchestrator {
 public:
  Orchestrator(std::shared_ptr<const Catalog> catalog, std::shared_ptr<const ExerciseIndex> index,
               std::shared_ptr<const Provider> provider, OrchestratorConfig config = {}, Clock clock = logical_clock());

  /// New session at GatherGoals with the greeting turn. Throws InvalidArgument
  /// for an empty name, ProviderUnavailable / ScriptExhausted from the provider.
  TurnResult create_session(std::string id, std::string user_name) const;

  /// Throws SessionDone, InvalidArgument (empty text). Provider failures are
  /// reported through TurnResult::provider_failed with an apology reply.
  TurnResult handle_user_message(const Session& session, std::string_view text) const;

  /// Opens a follow-up week. Throws NoPlanYet.
  TurnResult start_iteration(const Session& session) const;

  /// Rebuilds a session from its events. Throws CorruptLog.
  Session replay(const std::vector<SessionEvent>& events) const;

  const Catalog& catalog() const noexcept { return *catalog_; }
  const OrchestratorConfig& config() const noexcept { return config_; }
  const Provider& provider() const noexcept { return *provider_; }
  std::int64_t now() const { return clock_(); }

 private:
  friend class TurnBuilder;
  std::shared_ptr<const Catalog> catalog_;
  std::shared_ptr<const ExerciseIndex> index_;
  std::shared_ptr<const Provider> provider_;
  OrchestratorConfig config_;
  Clock clock_;
};

/// Task description plus serialized planning status handed to the responder.
std::string build_instruction(Cue cue, const Session& session);

}  // namespace planfit
