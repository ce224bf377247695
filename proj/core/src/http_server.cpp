#include "planfit/http_server.h"

#include <httplib.h>

#include <atomic>

#include "planfit/log.h"

namespace planfit {

int http_status_for(ErrorCode code, bool selection_route) noexcept {
  switch (code) {
    case ErrorCode::SessionNotFound:
    case ErrorCode::NoPlanYet: return 404;
    case ErrorCode::UnknownExercise: return selection_route ? 422 : 404;
    case ErrorCode::TurnInFlight:
    case ErrorCode::SessionDone: return 409;
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyText: return 400;
    case ErrorCode::ProviderUnavailable:
    case ErrorCode::ScriptExhausted: return 502;
    default: return 500;
  }
}

Json dashboard_json(const Session& s, const std::string& reply) {
  return Json{{"session_id", s.id},
              {"reply", reply},
              {"summary", to_json(s.summary)},
              {"plan", s.plan ? to_json(*s.plan) : Json()},
              {"advisories", to_json(s.advisories)},
              {"stage", std::string(to_string(s.stage()))},
              {"revision", s.summary.revision}};
}

Json plan_json(const Session& s, const Orchestrator& o) {
  if (!s.plan) throw Error(ErrorCode::NoPlanYet, s.id);
  const auto report = evaluate(*s.plan, o.catalog(), o.config().synthesis.guideline, s.control.waivers);
  return Json{{"plan", to_json(*s.plan)}, {"report", to_json(report)}, {"advisories", to_json(s.advisories)}};
}

namespace {

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& detail,
                const std::string& message) {
  send_json(res, status, Json{{"error", code}, {"detail", detail}, {"message", message}});
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    Json j = Json::parse(req.body);
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "body", "body must be a JSON object");
    return j;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "body", e.what());
  }
}

std::string string_field(const Json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) return {};
  return it->get<std::string>();
}

long long int_param(const httplib::Request& req, const char* key, long long fallback) {
  if (!req.has_param(key)) return fallback;
  try {
    return std::stoll(req.get_param_value(key));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, key, "expected an integer");
  }
}

template <typename F>
httplib::Server::Handler guarded(F&& f, bool selection_route = false) {
  return [f = std::forward<F>(f), selection_route](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, http_status_for(e.code(), selection_route), std::string(error_code_name(e.code())), e.detail(),
                 e.what());
    } catch (const std::exception& e) {
      log_message(LogLevel::Error, e.what());
      send_error(res, 500, "Internal", "", e.what());
    }
  };
}

}  // namespace

struct HttpServer::Impl {
  std::shared_ptr<SessionService> service;
  httplib::Server server;
};

HttpServer::HttpServer(std::shared_ptr<SessionService> service) : impl_(std::make_unique<Impl>()) {
  impl_->service = std::move(service);
  auto& srv = impl_->server;
  auto svc = impl_->service;

  srv.Post("/sessions", guarded([svc](const httplib::Request& req, httplib::Response& res) {
             const Json body = parse_body(req);
             const std::string name = string_field(body, "user_name");
             if (name.find_first_not_of(" \t\r\n") == std::string::npos) {
               throw Error(ErrorCode::InvalidArgument, "user_name", "user_name must be non-empty");
             }
             auto r = svc->create_session(name);
             send_json(res, 201, Json{{"session_id", r.session.id},
                                      {"greeting", r.reply},
                                      {"stage", std::string(to_string(r.session.stage()))}});
           }));

  srv.Post(R"(/sessions/([^/]+)/messages)", guarded([svc](const httplib::Request& req, httplib::Response& res) {
             const Json body = parse_body(req);
             auto r = svc->post_message(req.matches[1], string_field(body, "text"));
             send_json(res, 200, dashboard_json(r.session, r.reply));
           }));

  srv.Post(R"(/sessions/([^/]+)/iteration)", guarded([svc](const httplib::Request& req, httplib::Response& res) {
             auto r = svc->start_iteration(req.matches[1]);
             send_json(res, 200, dashboard_json(r.session, r.reply));
           }));

  srv.Get(R"(/sessions/([^/]+)/summary)", guarded([svc](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, to_json(svc->session(req.matches[1]).summary));
          }));

  srv.Get(R"(/sessions/([^/]+)/plan)", guarded([svc](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, plan_json(svc->session(req.matches[1]), svc->orchestrator()));
          }));

  srv.Post(R"(/sessions/([^/]+)/selection)",
           guarded(
               [svc](const httplib::Request& req, httplib::Response& res) {
                 const Json body = parse_body(req);
                 std::string row_id = string_field(body, "row_id");
                 if (auto it = body.find("row_id"); it != body.end() && it->is_number_integer()) {
                   row_id = std::to_string(it->get<long long>());
                 }
                 if (row_id.empty()) throw Error(ErrorCode::InvalidArgument, "row_id", "row_id is required");
                 std::optional<bool> selected;
                 if (auto it = body.find("selected"); it != body.end() && it->is_boolean()) selected = it->get<bool>();
                 send_json(res, 200, to_json(svc->set_selection(req.matches[1], row_id, selected).summary));
               },
               true));

  srv.Get(R"(/sessions/([^/]+)/events)", guarded([svc](const httplib::Request& req, httplib::Response& res) {
            const auto since = int_param(req, "since", 0);
            const auto wait = std::clamp<long long>(int_param(req, "wait_ms", 0), 0, 30000);
            Json events = Json::array();
            for (const auto& e : svc->events_since(req.matches[1], since, static_cast<int>(wait))) {
              events.push_back(to_json(e));
            }
            send_json(res, 200, Json{{"events", std::move(events)}});
          }));

  srv.Get(R"(/exercises/([^/]+))", guarded([svc](const httplib::Request& req, httplib::Response& res) {
            send_json(res, 200, to_json(svc->orchestrator().catalog().at(req.matches[1].str())));
          }));
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int HttpServer::bind_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpServer::listen_after_bind() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

bool HttpServer::is_running() const { return impl_->server.is_running(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace planfit
