#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "guibench/model_client.hpp"
#include "guibench/runtime.hpp"

namespace guibench {

// `key = value` lines; `#` starts a comment; blank lines ignored.
using KeyValueConfig = std::map<std::string, std::string>;

// Throws ParseError on a line without '='.
KeyValueConfig parse_config_text(const std::string& text, const std::string& source = "<memory>");
KeyValueConfig load_config_file(const std::filesystem::path& path);

// Only the credential can come from the environment.
inline constexpr const char* kAuthTokenEnv = "GUIBENCH_AUTH_TOKEN";

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
std::optional<std::string> process_env(const std::string& name);

// Keys: endpoint, auth_header, auth_token. Throws InvalidConfig when
// endpoint is absent.
EndpointConfig endpoint_config_from(const KeyValueConfig& kv, const EnvLookup& env = process_env);

// Keys: history_mode, step_timeout_seconds, retries, max_parallel,
// iou_threshold, point_box_px. Unset keys keep `base` values.
RunConfig run_config_from(const KeyValueConfig& kv, RunConfig base = {});

}  // namespace guibench
