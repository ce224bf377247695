#include "planfit/service.h"

#include <chrono>
#include <random>

#include "planfit/error.h"
#include "planfit/log.h"

namespace planfit {

std::string random_session_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char kHex[] = "0123456789abcdef";
  std::uint64_t v = rng();
  std::string out = "s-";
  for (int i = 0; i < 16; ++i) {
    out += kHex[v & 0xF];
    v >>= 4;
  }
  return out;
}

SessionService::SessionService(std::shared_ptr<const Orchestrator> orchestrator, ServiceConfig config, IdGenerator ids)
    : orchestrator_(std::move(orchestrator)),
      config_(std::move(config)),
      ids_(ids ? std::move(ids) : IdGenerator(random_session_id)),
      store_(config_.data_dir) {
  if (!orchestrator_) throw Error(ErrorCode::InvalidConfig, "orchestrator");
  recover();
}

void SessionService::recover() {
  for (const auto& id : store_.session_ids()) {
    auto entry = std::make_shared<Entry>();
    entry->events = store_.load(id);
    std::int64_t from = 0;
    if (auto snap = store_.load_snapshot(id); snap && snap->seq <= static_cast<std::int64_t>(entry->events.size())) {
      entry->session = session_from_json(snap->session);
      from = snap->seq;
      entry->last_snapshot_seq = snap->seq;
    }
    for (const auto& e : entry->events) {
      if (e.seq > from) apply_event(entry->session, e.event, orchestrator_->catalog());
    }
    sessions_[id] = std::move(entry);
  }
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string& id) const {
  std::shared_lock lock(registry_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::SessionNotFound, id);
  return it->second;
}

void SessionService::commit(Entry& entry, const TurnResult& result) {
  std::vector<PersistedEvent> batch;
  {
    std::lock_guard lock(entry.state);
    std::int64_t seq = entry.events.empty() ? 0 : entry.events.back().seq;
    for (const auto& e : result.events) batch.push_back({result.session.id, ++seq, e});
  }
  store_.append(batch);
  std::lock_guard lock(entry.state);
  entry.events.insert(entry.events.end(), batch.begin(), batch.end());
  entry.session = result.session;
  const std::int64_t last = entry.events.empty() ? 0 : entry.events.back().seq;
  if (config_.snapshot_every > 0 && last - entry.last_snapshot_seq >= config_.snapshot_every) {
    try {
      store_.write_snapshot(entry.session.id, Snapshot{last, to_json(entry.session)});
      entry.last_snapshot_seq = last;
    } catch (const std::exception& e) {
      log_warning(std::string("snapshot skipped: ") + e.what());
    }
  }
  entry.changed.notify_all();
}

TurnResult SessionService::create_session(const std::string& user_name) {
  std::string id;
  {
    std::shared_lock lock(registry_mutex_);
    for (int attempt = 0;; ++attempt) {
      id = ids_();
      if (sessions_.count(id) == 0) break;
      if (attempt >= 16) throw Error(ErrorCode::InvalidArgument, id, "session id generator keeps colliding");
    }
  }
  TurnResult result = orchestrator_->create_session(id, user_name);
  auto entry = std::make_shared<Entry>();
  std::lock_guard turn(entry->turn);
  {
    std::unique_lock lock(registry_mutex_);
    if (sessions_.count(id) > 0) throw Error(ErrorCode::InvalidArgument, id, "session id collision");
    sessions_[id] = entry;
  }
  commit(*entry, result);
  return result;
}

namespace {

void raise_if_failed(const TurnResult& r) {
  if (r.provider_failed) throw Error(ErrorCode::ProviderUnavailable, "turn", r.failure);
}

}  // namespace

TurnResult SessionService::post_message(const std::string& session_id, const std::string& text) {
  auto entry = find(session_id);
  std::unique_lock turn(entry->turn, std::try_to_lock);
  if (!turn.owns_lock()) throw Error(ErrorCode::TurnInFlight, session_id);
  Session current = session(session_id);
  TurnResult result = orchestrator_->handle_user_message(current, text);
  raise_if_failed(result);
  commit(*entry, result);
  return result;
}

TurnResult SessionService::start_iteration(const std::string& session_id) {
  auto entry = find(session_id);
  std::unique_lock turn(entry->turn, std::try_to_lock);
  if (!turn.owns_lock()) throw Error(ErrorCode::TurnInFlight, session_id);
  TurnResult result = orchestrator_->start_iteration(session(session_id));
  raise_if_failed(result);
  commit(*entry, result);
  return result;
}

Session SessionService::set_selection(const std::string& session_id, const std::string& row_id,
                                      std::optional<bool> selected) {
  auto entry = find(session_id);
  std::unique_lock turn(entry->turn, std::try_to_lock);
  if (!turn.owns_lock()) throw Error(ErrorCode::TurnInFlight, session_id);
  Session current = session(session_id);
  const Catalog& catalog = orchestrator_->catalog();
  catalog.at(row_id);
  const bool on = selected.value_or(!current.summary.is_selected(row_id));
  if (current.summary.is_selected(row_id) == on) return current;
  PlanSummary next = on ? select_exercise(current.summary, row_id, catalog)
                        : deselect_exercise(current.summary, row_id, catalog);
  SessionEvent e{EventKind::EditsApplied,
                 Json{{"ops", Json::array({Json{{"op", on ? "select" : "deselect"}, {"row_id", row_id}}})},
                      {"revision", next.revision}},
                 orchestrator_->now()};
  TurnResult result;
  result.session = current;
  apply_event(result.session, e, catalog);
  result.events.push_back(std::move(e));
  commit(*entry, result);
  return result.session;
}

Session SessionService::session(const std::string& session_id) const {
  auto entry = find(session_id);
  std::lock_guard lock(entry->state);
  return entry->session;
}

std::vector<std::string> SessionService::session_ids() const {
  std::shared_lock lock(registry_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

std::vector<PersistedEvent> SessionService::events_since(const std::string& session_id, std::int64_t since,
                                                         int wait_ms) const {
  auto entry = find(session_id);
  std::unique_lock lock(entry->state);
  auto newer = [&] { return !entry->events.empty() && entry->events.back().seq > since; };
  if (!newer() && wait_ms > 0) entry->changed.wait_for(lock, std::chrono::milliseconds(wait_ms), newer);
  std::vector<PersistedEvent> out;
  for (const auto& e : entry->events) {
    if (e.seq > since) out.push_back(e);
  }
  return out;
}

Session SessionService::replay_from_log(const std::string& session_id) const {
  find(session_id);
  std::vector<SessionEvent> events;
  for (auto& e : store_.load(session_id)) events.push_back(std::move(e.event));
  return orchestrator_->replay(events);
}

}  // namespace planfit
