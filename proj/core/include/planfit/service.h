#pragma once

#include <condition_variable>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "planfit/event_log.h"
#include "planfit/orchestrator.h"

namespace planfit {

struct ServiceConfig {
  std::string data_dir;     // empty keeps sessions in memory
  int snapshot_every = 50;  // events between snapshots; 0 disables them
};

/// Session registry with event-sourced persistence. Turns on one session are
/// mutually exclusive (TurnInFlight); different sessions run concurrently.
class SessionService {
 public:
  using IdGenerator = std::function<std::string()>;

  /// Recovers every stored session (snapshot, then the events after it).
  SessionService(std::shared_ptr<const Orchestrator> orchestrator, ServiceConfig config = {},
                 IdGenerator ids = nullptr);

  /// Throws InvalidArgument (empty name) or provider errors.
  TurnResult create_session(const std::string& user_name);

  /// Throws SessionNotFound, TurnInFlight, SessionDone, InvalidArgument, and
  /// ProviderUnavailable when the provider failed (nothing is committed).
  TurnResult post_message(const std::string& session_id, const std::string& text);

  /// Throws SessionNotFound, TurnInFlight, NoPlanYet, ProviderUnavailable.
  TurnResult start_iteration(const std::string& session_id);

  /// Toggles (or sets, when `selected` is given) a dashboard selection.
  /// Throws SessionNotFound, TurnInFlight, UnknownExercise.
  Session set_selection(const std::string& session_id, const std::string& row_id, std::optional<bool> selected);

  Session session(const std::string& session_id) const;  // throws SessionNotFound
  std::vector<std::string> session_ids() const;

  /// Events with seq > since; waits up to wait_ms for new ones when none exist.
  std::vector<PersistedEvent> events_since(const std::string& session_id, std::int64_t since, int wait_ms = 0) const;

  /// Replays the stored log of one session from scratch (no snapshot).
  Session replay_from_log(const std::string& session_id) const;

  const Orchestrator& orchestrator() const noexcept { return *orchestrator_; }

 private:
  struct Entry {
    std::mutex turn;                 // held for the whole turn
    mutable std::mutex state;        // guards session/events
    mutable std::condition_variable changed;
    Session session;
    std::vector<PersistedEvent> events;  // full in-memory log
    std::int64_t last_snapshot_seq = 0;
  };

  std::shared_ptr<Entry> find(const std::string& id) const;
  void commit(Entry& entry, const TurnResult& result);
  void recover();

  std::shared_ptr<const Orchestrator> orchestrator_;
  ServiceConfig config_;
  IdGenerator ids_;
  EventStore store_;
  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

/// "s-" followed by 16 random hex digits.
std::string random_session_id();

}  // namespace planfit
