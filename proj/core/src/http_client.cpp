#include <chrono>
#include <cmath>
#include <regex>

#include <httplib.h>
#include <json.hpp>

#include "guibench/errors.hpp"
#include "guibench/model_client.hpp"

namespace guibench {

std::string base64_encode(const std::string& bytes) { return httplib::detail::base64_encode(bytes); }

HttpModelClient::HttpModelClient(EndpointConfig config) : config_(std::move(config)) {
  static const std::regex kUrl(R"(^(http)://([^/:]+)(:\d+)?(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.url, m, kUrl)) {
    throw InvalidConfig("endpoint must look like http://host[:port]/path, got '" + config_.url +
                        "' (https needs a build with OpenSSL)");
  }
  scheme_host_port_ = m[1].str() + "://" + m[2].str() + m[3].str();
  path_ = m[4].matched ? m[4].str() : "/";
}

std::string HttpModelClient::complete(const ModelRequest& request) {
  httplib::Client cli(scheme_host_port_);
  const double timeout = request.timeout_seconds;
  const auto secs = static_cast<time_t>(timeout);
  const auto usecs = static_cast<time_t>((timeout - static_cast<double>(secs)) * 1e6);
  cli.set_connection_timeout(secs, usecs);
  cli.set_read_timeout(secs, usecs);
  cli.set_write_timeout(secs, usecs);

  httplib::Headers headers;
  if (!config_.auth_token.empty()) {
    headers.emplace(config_.auth_header, "Bearer " + config_.auth_token);
  }

  nlohmann::ordered_json body;
  body["prompt"] = request.prompt;
  body["image"] = base64_encode(request.image_bytes);
  body["episode_id"] = request.episode_id;
  body["step"] = request.step_index;

  const auto started = std::chrono::steady_clock::now();
  auto res = cli.Post(path_, headers, body.dump(), "application/json");
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout || elapsed.count() >= timeout) {
      throw ClientTimeout("endpoint did not answer within " + std::to_string(timeout) + " s");
    }
    throw TransportError("request to " + config_.url + " failed: " + httplib::to_string(err));
  }
  if (res->status < 200 || res->status >= 300) {
    throw TransportError("endpoint returned HTTP " + std::to_string(res->status));
  }
  return res->body;
}

}  // namespace guibench
