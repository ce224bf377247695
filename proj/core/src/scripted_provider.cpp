#include <fstream>

#include "planfit/error.h"
#include "planfit/log.h"
#include "planfit/provider.h"

namespace planfit {

namespace {

const Json* find_entry(const Json& script, Stage stage, std::size_t turn, bool analysis) {
  for (const auto& e : script) {
    if (e.value("stage", "") != to_string(stage)) continue;
    if (e.value("turn", -1) != static_cast<long long>(turn)) continue;
    if (e.contains("commands") != analysis) continue;
    return &e;
  }
  return nullptr;
}

}  // namespace

ScriptedProvider::ScriptedProvider(Json script) : script_(std::move(script)) {
  if (!script_.is_array()) throw Error(ErrorCode::InvalidConfig, "script", "script must be a JSON array");
}

ScriptedProvider ScriptedProvider::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, path, "cannot open script");
  try {
    return ScriptedProvider(Json::parse(in));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path, e.what());
  }
}

ProviderReply ScriptedProvider::respond(const ResponseRequest& request, const std::vector<Turn>&) const {
  const Json* e = find_entry(script_, request.stage, request.turn_index, false);
  if (e == nullptr) {
    throw Error(ErrorCode::ScriptExhausted,
                std::string(to_string(request.stage)) + ":" + std::to_string(request.turn_index));
  }
  ProviderReply reply;
  reply.text = e->value("text", "");
  if (auto k = e->find("retrieval_keywords"); k != e->end()) {
    RetrievalRequest rr;
    for (const auto& w : *k) rr.keywords.push_back(w.get<std::string>());
    reply.retrieval_request = std::move(rr);
  }
  return reply;
}

std::vector<EditCommand> ScriptedProvider::analyze(const AnalyzeRequest& request) const {
  const Json* e = find_entry(script_, request.stage, request.turn_index, true);
  if (e == nullptr) return {};
  std::vector<EditCommand> out;
  try {
    const Json& list = e->at("commands");
    for (std::size_t i = 0; i < list.size(); ++i) out.push_back(command_from_json(list[i], i));
  } catch (const std::exception& ex) {
    log_warning(std::string("scripted analyzer entry ignored: ") + ex.what());
    return {};
  }
  return out;
}

}  // namespace planfit
