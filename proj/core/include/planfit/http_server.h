#pragma once

#include <memory>
#include <string>

#include "planfit/error.h"
#include "planfit/service.h"

namespace planfit {

/// HTTP status for a domain error on a given route family.
int http_status_for(ErrorCode code, bool selection_route = false) noexcept;

/// Dashboard state returned by message and iteration posts.
Json dashboard_json(const Session& session, const std::string& reply);

/// Plan, guideline report and advisories. Throws NoPlanYet.
Json plan_json(const Session& session, const Orchestrator& orchestrator);

/// JSON/HTTP front end:
///   POST /sessions                      {user_name}        -> 201 {session_id, greeting, stage}
///   POST /sessions/{id}/messages        {text}             -> 200 dashboard
///   POST /sessions/{id}/iteration                          -> 200 dashboard
///   GET  /sessions/{id}/summary                            -> PlanSummary
///   GET  /sessions/{id}/plan                               -> {plan, report, advisories}
///   POST /sessions/{id}/selection       {row_id, selected?} -> PlanSummary
///   GET  /sessions/{id}/events?since=N&wait_ms=M           -> {events: [...]}
///   GET  /exercises/{row_id}                               -> ExerciseEntry
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<SessionService> service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Blocks until stop(). Returns false when the address cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it (-1 on failure); follow with listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  bool is_running() const;
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace planfit
