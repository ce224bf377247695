#pragma once

#include <functional>
#include <optional>
#include <string>

#include "planfit/json.h"
#include "planfit/provider.h"

namespace planfit {

/// Operator configuration for the CLI and the HTTP service.
struct AppConfig {
  std::string data_dir = "planfit-data";
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  ProviderMode provider_mode = ProviderMode::Template;
  std::string model_name = "gpt-4";
  std::string credentials_env = "OPENAI_API_KEY";  // env var holding the API key
  std::string api_key;                             // resolved, never written out
  std::string catalog_path = "data/catalog.csv";
  std::string script_path;
  std::string base_url = "https://api.openai.com";

  ProviderConfig provider() const;
};

/// Layer values; unset fields leave lower layers untouched.
struct ConfigOverrides {
  std::optional<std::string> data_dir;
  std::optional<std::string> listen;  // "host:port" or ":port"
  std::optional<std::string> provider_mode;
  std::optional<std::string> model_name;
  std::optional<std::string> credentials_env;
  std::optional<std::string> api_key;
  std::optional<std::string> catalog_path;
  std::optional<std::string> script_path;
  std::optional<std::string> base_url;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Process environment.
EnvLookup process_env();

/// Config file keys: data_dir, listen, provider_mode, model, credentials_env,
/// catalog, script, base_url. Throws InvalidConfig.
ConfigOverrides overrides_from_json(const Json& j);
ConfigOverrides overrides_from_file(const std::string& path);

/// PLANFIT_PROVIDER_MODE, PLANFIT_MODEL, PLANFIT_API_KEY, PLANFIT_DATA_DIR, PLANFIT_CATALOG.
ConfigOverrides overrides_from_env(const EnvLookup& env);

/// Defaults < file < env < cli. The API key falls back to the variable named
/// by credentials_env. Throws InvalidConfig.
AppConfig resolve_config(const ConfigOverrides& file, const ConfigOverrides& env, const ConfigOverrides& cli,
                         const EnvLookup& lookup);

}  // namespace planfit
