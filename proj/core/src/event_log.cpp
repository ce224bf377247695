#include "planfit/event_log.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "planfit/error.h"
#include "planfit/log.h"

namespace planfit {

namespace fs = std::filesystem;

Json to_json(const PersistedEvent& e) {
  return Json{{"session_id", e.session_id},
              {"seq", e.seq},
              {"kind", std::string(to_string(e.event.kind))},
              {"timestamp", e.event.timestamp},
              {"payload", e.event.payload}};
}

PersistedEvent persisted_event_from_json(const Json& j) {
  try {
    PersistedEvent e;
    e.session_id = j.at("session_id").get<std::string>();
    e.seq = j.at("seq").get<std::int64_t>();
    e.event.kind = event_kind_from_string(j.at("kind").get<std::string>());
    e.event.timestamp = j.at("timestamp").get<std::int64_t>();
    e.event.payload = j.at("payload");
    return e;
  } catch (const Json::exception& ex) {
    throw Error(ErrorCode::CorruptLog, "event", ex.what());
  }
}

EventStore::EventStore(fs::path dir) : dir_(std::move(dir)) {
  if (!dir_.empty()) fs::create_directories(dir_ / "sessions");
}

fs::path EventStore::log_path(const std::string& id) const { return dir_ / "sessions" / (id + ".jsonl"); }

fs::path EventStore::snapshot_path(const std::string& id) const { return dir_ / "sessions" / (id + ".snapshot.json"); }

namespace {

/// Cuts a partially written final line so new appends start on a fresh line.
void truncate_torn_tail(const fs::path& path) {
  if (!fs::exists(path)) return;
  std::ifstream in(path, std::ios::binary);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (content.empty() || content.back() == '\n') return;
  const auto nl = content.rfind('\n');
  in.close();
  fs::resize_file(path, nl == std::string::npos ? 0 : nl + 1);
}

}  // namespace

void EventStore::append(const std::vector<PersistedEvent>& batch) {
  if (batch.empty()) return;
  std::lock_guard lock(mutex_);
  const std::string& id = batch.front().session_id;
  auto it = last_seq_.find(id);
  std::int64_t last = 0;
  if (it != last_seq_.end()) {
    last = it->second;
  } else {
    auto existing = load_unlocked(id);
    last = existing.empty() ? 0 : existing.back().seq;
    if (persistent()) truncate_torn_tail(log_path(id));
  }
  std::string lines;
  for (const auto& e : batch) {
    if (e.session_id != id || e.seq != last + 1) {
      throw Error(ErrorCode::CorruptLog, id, "non-contiguous sequence number " + std::to_string(e.seq));
    }
    last = e.seq;
    lines += to_json(e).dump() + "\n";
  }
  if (persistent()) {
    std::ofstream out(log_path(id), std::ios::app | std::ios::binary);
    out << lines;
    out.flush();
    if (!out) throw Error(ErrorCode::CorruptLog, id, "write failed");
  } else {
    auto& list = memory_[id];
    list.insert(list.end(), batch.begin(), batch.end());
  }
  last_seq_[id] = last;
}

std::vector<PersistedEvent> EventStore::load(const std::string& id) const {
  std::lock_guard lock(mutex_);
  return load_unlocked(id);
}

std::vector<PersistedEvent> EventStore::load_unlocked(const std::string& id) const {
  if (!persistent()) {
    auto it = memory_.find(id);
    return it == memory_.end() ? std::vector<PersistedEvent>{} : it->second;
  }
  std::ifstream in(log_path(id), std::ios::binary);
  if (!in) return {};
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string content = buf.str();
  std::vector<PersistedEvent> out;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < content.size()) {
    ++line_no;
    const std::size_t nl = content.find('\n', pos);
    if (nl == std::string::npos) {
      log_warning("dropping torn final line in log of session " + id);
      break;
    }
    const std::string line = content.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::CorruptLog, id + ":" + std::to_string(line_no), e.what());
    }
    PersistedEvent e = persisted_event_from_json(j);
    const std::int64_t expected = out.empty() ? 1 : out.back().seq + 1;
    if (e.seq != expected) {
      throw Error(ErrorCode::CorruptLog, id + ":" + std::to_string(line_no), "sequence gap");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::string> EventStore::session_ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> ids;
  if (!persistent()) {
    for (const auto& [id, _] : memory_) ids.push_back(id);
    return ids;
  }
  for (const auto& entry : fs::directory_iterator(dir_ / "sessions")) {
    const std::string name = entry.path().filename().string();
    const std::string suffix = ".jsonl";
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      ids.push_back(name.substr(0, name.size() - suffix.size()));
    }
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

void EventStore::write_snapshot(const std::string& id, const Snapshot& snapshot) {
  std::lock_guard lock(mutex_);
  if (!persistent()) {
    memory_snapshots_[id] = snapshot;
    return;
  }
  const fs::path target = snapshot_path(id);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc | std::ios::binary);
    out << Json{{"seq", snapshot.seq}, {"session", snapshot.session}}.dump() << "\n";
    if (!out) throw Error(ErrorCode::CorruptLog, id, "snapshot write failed");
  }
  fs::rename(tmp, target);
}

std::optional<Snapshot> EventStore::load_snapshot(const std::string& id) const {
  std::lock_guard lock(mutex_);
  if (!persistent()) {
    auto it = memory_snapshots_.find(id);
    if (it == memory_snapshots_.end()) return std::nullopt;
    return it->second;
  }
  std::ifstream in(snapshot_path(id), std::ios::binary);
  if (!in) return std::nullopt;
  try {
    Json j = Json::parse(in);
    return Snapshot{j.at("seq").get<std::int64_t>(), j.at("session")};
  } catch (const Json::exception& e) {
    log_warning("ignoring unreadable snapshot of session " + id + ": " + e.what());
    return std::nullopt;
  }
}

}  // namespace planfit
