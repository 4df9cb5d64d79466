#include "guibench/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "guibench/errors.hpp"
#include "text_util.hpp"

namespace guibench {
namespace {

double to_double(const std::string& key, const std::string& value) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidConfig("config key '" + key + "' expects a number, got '" + value + "'");
  }
  return v;
}

unsigned long long to_unsigned(const std::string& key, const std::string& value) {
  unsigned long long v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidConfig("config key '" + key + "' expects a non-negative integer, got '" + value +
                        "'");
  }
  return v;
}

}  // namespace

KeyValueConfig parse_config_text(const std::string& text, const std::string& source) {
  KeyValueConfig kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    const std::string_view body = text_util::trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError(source, line_no, "expected key = value");
    const std::string key(text_util::trim(body.substr(0, eq)));
    if (key.empty()) throw ParseError(source, line_no, "empty key");
    kv[key] = std::string(text_util::trim(body.substr(eq + 1)));
  }
  return kv;
}

KeyValueConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

EndpointConfig endpoint_config_from(const KeyValueConfig& kv, const EnvLookup& env) {
  EndpointConfig cfg;
  auto it = kv.find("endpoint");
  if (it == kv.end() || it->second.empty()) throw InvalidConfig("config is missing 'endpoint'");
  cfg.url = it->second;
  if (auto h = kv.find("auth_header"); h != kv.end()) cfg.auth_header = h->second;
  if (auto t = kv.find("auth_token"); t != kv.end()) cfg.auth_token = t->second;
  if (env) {
    if (auto token = env(kAuthTokenEnv)) cfg.auth_token = *token;
  }
  return cfg;
}

RunConfig run_config_from(const KeyValueConfig& kv, RunConfig base) {
  for (const auto& [key, value] : kv) {
    if (key == "history_mode") {
      base.history_mode = history_mode_from_string(value);
    } else if (key == "step_timeout_seconds") {
      base.step_timeout_seconds = to_double(key, value);
    } else if (key == "retries") {
      base.retries = static_cast<unsigned>(to_unsigned(key, value));
    } else if (key == "max_parallel") {
      base.max_parallel = to_unsigned(key, value);
    } else if (key == "iou_threshold") {
      base.match.iou_threshold = to_double(key, value);
    } else if (key == "point_box_px") {
      base.match.point_box_px = to_double(key, value);
    }
  }
  base.validate();
  return base;
}

}  // namespace guibench
