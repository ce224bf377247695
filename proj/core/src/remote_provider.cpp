#include <algorithm>

#include "http_client.h"
#include "planfit/error.h"
#include "planfit/log.h"
#include "planfit/provider.h"
#include "planfit/text.h"

namespace planfit {

namespace {

constexpr const char* kAnalyzerPrompt =
    "You maintain a structured record of a user's exercise planning conversation. Read the latest agent message "
    "and user reply, compare them with the current record, and output a JSON array of edit commands. Each "
    "command is an object {\"target\", \"method\", \"params\"} where target is one of goal, availability, "
    "obstacle, recommended_exercise or implementation_intention and method is add, update or remove. Use "
    "params {\"entity\": {...}} for add, {\"id\": \"...\", \"update\": {...}} for update and {\"id\": \"...\"} "
    "for remove. Goals, availabilities and obstacles carry a \"label\"; obstacles may list "
    "\"linked_availability_ids\". Output [] when nothing changed. Output only the array.";

constexpr const char* kRetrievalPrompt =
    "List exercise-related search keywords for this user as a JSON array of strings. Output only the array.";

std::string summary_block(const PlanSummary& s) { return to_json(s).dump(2); }

}  // namespace

std::string_view to_string(ProviderMode m) noexcept {
  switch (m) {
    case ProviderMode::Scripted: return "scripted";
    case ProviderMode::Template: return "template";
    case ProviderMode::Remote: return "remote";
  }
  return "template";
}

ProviderMode provider_mode_from_string(std::string_view s) {
  for (auto m : {ProviderMode::Scripted, ProviderMode::Template, ProviderMode::Remote}) {
    if (text::iequals(s, to_string(m))) return m;
  }
  throw Error(ErrorCode::InvalidConfig, std::string(s), "unknown provider mode");
}

void ProviderConfig::validate() const {
  if (mode == ProviderMode::Remote && api_key.empty()) {
    throw Error(ErrorCode::InvalidConfig, "api_key", "remote provider requires credentials");
  }
  if (mode == ProviderMode::Scripted && script_path.empty()) {
    throw Error(ErrorCode::InvalidConfig, "script_path", "scripted provider requires a script");
  }
  if (temperature < 0.0 || temperature > 2.0) throw Error(ErrorCode::InvalidConfig, "temperature");
  if (top_p <= 0.0 || top_p > 1.0) throw Error(ErrorCode::InvalidConfig, "top_p");
}

std::string_view to_string(Cue c) noexcept {
  switch (c) {
    case Cue::Greeting: return "greeting";
    case Cue::AskGoals: return "ask_goals";
    case Cue::AskMoreGoals: return "ask_more_goals";
    case Cue::AskAvailability: return "ask_availability";
    case Cue::AskMoreAvailability: return "ask_more_availability";
    case Cue::AskObstacle: return "ask_obstacle";
    case Cue::RequestRetrieval: return "request_retrieval";
    case Cue::PresentRecommendations: return "present_recommendations";
    case Cue::ClarifySelection: return "clarify_selection";
    case Cue::AskOtherType: return "ask_other_type";
    case Cue::PresentPlan: return "present_plan";
    case Cue::AskPlanFeedback: return "ask_plan_feedback";
    case Cue::Closing: return "closing";
    case Cue::AskAdherence: return "ask_adherence";
    case Cue::OfferProgression: return "offer_progression";
    case Cue::ProgressionApplied: return "progression_applied";
    case Cue::AskWhatToChange: return "ask_what_to_change";
  }
  return "greeting";
}

RemoteProvider::RemoteProvider(ProviderConfig config) : config_(std::move(config)) { config_.validate(); }

Json RemoteProvider::build_respond_body(const ResponseRequest& request, const std::vector<Turn>& history) const {
  Json messages = Json::array();
  messages.push_back({{"role", "system"}, {"content", request.instruction}});
  for (const auto& t : history) {
    messages.push_back({{"role", t.role == Role::Agent ? "assistant" : "user"}, {"content", t.text}});
  }
  if (request.cue == Cue::RequestRetrieval) messages.push_back({{"role", "system"}, {"content", kRetrievalPrompt}});
  return Json{{"model", config_.model_name},
              {"messages", std::move(messages)},
              {"temperature", config_.temperature},
              {"top_p", config_.top_p},
              {"frequency_penalty", config_.frequency_penalty},
              {"presence_penalty", config_.presence_penalty}};
}

Json RemoteProvider::build_analyze_body(const AnalyzeRequest& request) const {
  Json messages = Json::array();
  messages.push_back({{"role", "system"},
                      {"content", std::string(kAnalyzerPrompt) + "\n\nCurrent record:\n" + summary_block(request.summary)}});
  messages.push_back({{"role", "user"}, {"content", "Agent: " + request.agent_text + "\nUser: " + request.user_text}});
  return Json{{"model", config_.model_name},
              {"messages", std::move(messages)},
              {"temperature", config_.temperature},
              {"top_p", config_.top_p},
              {"frequency_penalty", config_.frequency_penalty},
              {"presence_penalty", config_.presence_penalty}};
}

std::string RemoteProvider::complete(const Json& body) const {
  nlohmann::json plain = nlohmann::json::parse(body.dump());
  nlohmann::json resp = detail::post_json(config_.base_url, "/v1/chat/completions", config_.api_key, plain,
                                          config_.timeout_seconds);
  try {
    return resp.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ProviderUnavailable, "chat", std::string("unexpected response shape: ") + e.what());
  }
}

ProviderReply RemoteProvider::respond(const ResponseRequest& request, const std::vector<Turn>& history) const {
  if (request.instruction.empty()) throw Error(ErrorCode::InvalidArgument, "instruction", "instruction is empty");
  ProviderReply reply;
  reply.text = complete(build_respond_body(request, history));
  if (request.cue == Cue::RequestRetrieval) {
    auto open = reply.text.find('[');
    auto close = reply.text.rfind(']');
    if (open != std::string::npos && close != std::string::npos && close > open) {
      try {
        Json arr = Json::parse(reply.text.substr(open, close - open + 1));
        RetrievalRequest rr;
        for (const auto& k : arr) {
          if (k.is_string()) rr.keywords.push_back(k.get<std::string>());
        }
        if (!rr.keywords.empty()) reply.retrieval_request = std::move(rr);
      } catch (const Json::exception&) {
        log_warning("retrieval keywords unparseable; falling back to extracted keywords");
      }
    }
  }
  return reply;
}

std::vector<EditCommand> RemoteProvider::analyze(const AnalyzeRequest& request) const {
  const std::string content = complete(build_analyze_body(request));
  try {
    return parse_commands_json(content);
  } catch (const Error& e) {
    log_warning(std::string("analyzer output ignored: ") + e.what());
    return {};
  }
}

std::unique_ptr<Provider> make_provider(const ProviderConfig& config) {
  config.validate();
  switch (config.mode) {
    case ProviderMode::Template: return std::make_unique<TemplateProvider>();
    case ProviderMode::Scripted: return std::make_unique<ScriptedProvider>(ScriptedProvider::from_file(config.script_path));
    case ProviderMode::Remote: return std::make_unique<RemoteProvider>(config);
  }
  return std::make_unique<TemplateProvider>();
}

}  // namespace planfit
