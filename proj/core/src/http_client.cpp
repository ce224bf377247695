#include "http_client.h"

#include <httplib.h>

#include "planfit/error.h"

namespace planfit::detail {

nlohmann::json post_json(const std::string& base_url, const std::string& path, const std::string& api_key,
                         const nlohmann::json& body, int timeout_seconds) {
  if (base_url.empty()) throw Error(ErrorCode::ProviderUnavailable, "base_url", "no endpoint configured");
  httplib::Client client(base_url);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_write_timeout(timeout_seconds, 0);

  httplib::Headers headers;
  if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::ProviderUnavailable, base_url + path, httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::ProviderUnavailable, base_url + path, "HTTP " + std::to_string(res->status));
  }
  auto parsed = nlohmann::json::parse(res->body, nullptr, false);
  if (parsed.is_discarded()) throw Error(ErrorCode::ProviderUnavailable, base_url + path, "response is not JSON");
  return parsed;
}

}  // namespace planfit::detail
