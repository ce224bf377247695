#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "planfit/dialogue.h"
#include "planfit/json.h"

namespace planfit {

struct PersistedEvent {
  std::string session_id;
  std::int64_t seq = 0;  // 1-based, contiguous per session
  SessionEvent event;
};

Json to_json(const PersistedEvent& e);
PersistedEvent persisted_event_from_json(const Json& j);

struct Snapshot {
  std::int64_t seq = 0;  // last event folded into `session`
  Json session;
};

/// JSON-lines event log, one file per session under `<dir>/sessions/`, with
/// optional snapshots beside it. An empty directory keeps everything in memory.
class EventStore {
 public:
  explicit EventStore(std::filesystem::path dir = {});

  bool persistent() const noexcept { return !dir_.empty(); }

  /// Appends a batch with a single write. Throws CorruptLog when the batch's
  /// sequence numbers do not continue the stored ones.
  void append(const std::vector<PersistedEvent>& batch);

  /// Every event of a session in order. A torn final line (crash during a
  /// write) is dropped; any other damage throws CorruptLog.
  std::vector<PersistedEvent> load(const std::string& session_id) const;

  std::vector<std::string> session_ids() const;

  void write_snapshot(const std::string& session_id, const Snapshot& snapshot);
  std::optional<Snapshot> load_snapshot(const std::string& session_id) const;

 private:
  std::vector<PersistedEvent> load_unlocked(const std::string& session_id) const;
  std::filesystem::path log_path(const std::string& session_id) const;
  std::filesystem::path snapshot_path(const std::string& session_id) const;

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<PersistedEvent>> memory_;
  std::map<std::string, Snapshot> memory_snapshots_;
  std::map<std::string, std::int64_t> last_seq_;
};

}  // namespace planfit
