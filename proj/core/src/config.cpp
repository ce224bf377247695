#include "planfit/config.h"

#include <cstdlib>
#include <fstream>

#include "planfit/error.h"

namespace planfit {

ProviderConfig AppConfig::provider() const {
  ProviderConfig p;
  p.mode = provider_mode;
  p.model_name = model_name;
  p.api_key = api_key;
  p.base_url = base_url;
  p.script_path = script_path;
  return p;
}

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str()); v != nullptr && *v != '\0') return std::string(v);
    return std::nullopt;
  };
}

namespace {

void read_key(const Json& j, const char* key, std::optional<std::string>& out) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return;
  if (!it->is_string()) throw Error(ErrorCode::InvalidConfig, key, "expected a string");
  out = it->get<std::string>();
}

template <typename T>
void layer(T& field, const std::optional<T>& value) {
  if (value) field = *value;
}

void apply_listen(AppConfig& c, const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidConfig, "listen", "expected host:port or :port");
  const std::string host = listen.substr(0, colon);
  const std::string port = listen.substr(colon + 1);
  int p = -1;
  try {
    std::size_t used = 0;
    p = std::stoi(port, &used);
    if (used != port.size()) p = -1;
  } catch (const std::exception&) {
  }
  if (p < 0 || p > 65535) throw Error(ErrorCode::InvalidConfig, "listen", "bad port '" + port + "'");
  if (!host.empty()) c.listen_host = host;
  c.listen_port = p;
}

void apply(AppConfig& c, const ConfigOverrides& o) {
  layer(c.data_dir, o.data_dir);
  if (o.listen) apply_listen(c, *o.listen);
  if (o.provider_mode) {
    try {
      c.provider_mode = provider_mode_from_string(*o.provider_mode);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidConfig, "provider_mode", e.what());
    }
  }
  layer(c.model_name, o.model_name);
  layer(c.credentials_env, o.credentials_env);
  layer(c.api_key, o.api_key);
  layer(c.catalog_path, o.catalog_path);
  layer(c.script_path, o.script_path);
  layer(c.base_url, o.base_url);
}

}  // namespace

ConfigOverrides overrides_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "config", "expected a JSON object");
  ConfigOverrides o;
  read_key(j, "data_dir", o.data_dir);
  read_key(j, "listen", o.listen);
  read_key(j, "provider_mode", o.provider_mode);
  read_key(j, "model", o.model_name);
  read_key(j, "credentials_env", o.credentials_env);
  read_key(j, "catalog", o.catalog_path);
  read_key(j, "script", o.script_path);
  read_key(j, "base_url", o.base_url);
  if (j.contains("api_key")) throw Error(ErrorCode::InvalidConfig, "api_key", "keep credentials out of config files");
  return o;
}

ConfigOverrides overrides_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, path, "cannot open config file");
  try {
    return overrides_from_json(Json::parse(in));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path, e.what());
  }
}

ConfigOverrides overrides_from_env(const EnvLookup& env) {
  ConfigOverrides o;
  o.provider_mode = env("PLANFIT_PROVIDER_MODE");
  o.model_name = env("PLANFIT_MODEL");
  o.api_key = env("PLANFIT_API_KEY");
  o.data_dir = env("PLANFIT_DATA_DIR");
  o.catalog_path = env("PLANFIT_CATALOG");
  return o;
}

AppConfig resolve_config(const ConfigOverrides& file, const ConfigOverrides& env, const ConfigOverrides& cli,
                         const EnvLookup& lookup) {
  AppConfig c;
  apply(c, file);
  apply(c, env);
  apply(c, cli);
  if (c.api_key.empty() && !c.credentials_env.empty() && lookup) {
    if (auto key = lookup(c.credentials_env)) c.api_key = *key;
  }
  return c;
}

}  // namespace planfit
