#pragma once

#include <nlohmann/json.hpp>
#include <string>

namespace planfit::detail {

/// POSTs a JSON body to `base_url + path` with a bearer token and returns the
/// parsed JSON response. Any transport failure, non-2xx status or non-JSON body
/// surfaces as Error(ProviderUnavailable).
nlohmann::json post_json(const std::string& base_url, const std::string& path, const std::string& api_key,
                         const nlohmann::json& body, int timeout_seconds);

}  // namespace planfit::detail
