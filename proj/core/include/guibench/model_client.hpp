#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <utility>

namespace guibench {

struct ModelRequest {
  std::string prompt;
  std::string image_bytes;  // raw screenshot file contents, may be empty
  std::string episode_id;   // or VQA item id
  std::size_t step_index = 0;
  double timeout_seconds = 60.0;
};

// One attempt at a completion. Implementations throw ClientTimeout or
// TransportError; retries are the caller's business. Must be safe to call
// from several threads at once.
class ModelClient {
 public:
  virtual ~ModelClient() = default;
  virtual std::string complete(const ModelRequest& request) = 0;
};

// Adapts a callable, mostly for tests.
class FunctionClient : public ModelClient {
 public:
  using Fn = std::function<std::string(const ModelRequest&)>;
  explicit FunctionClient(Fn fn) : fn_(std::move(fn)) {}
  std::string complete(const ModelRequest& request) override { return fn_(request); }

 private:
  Fn fn_;
};

// Replays canned replies keyed by (episode_id, step). Transcript files are
// JSON lines:
//   {"episode_id": "e1", "step": 0, "response": "<observation>: ..."}
//   {"episode_id": "e1", "step": 1, "timeout": true}
//   {"episode_id": "e1", "step": 2, "transport_error": true}
// A key with no entry fails with TransportError.
class ScriptedClient : public ModelClient {
 public:
  enum class Outcome { kResponse, kTimeout, kTransportError };

  struct Entry {
    Outcome outcome = Outcome::kResponse;
    std::string response;
  };

  using Key = std::pair<std::string, std::size_t>;

  ScriptedClient() = default;
  explicit ScriptedClient(std::map<Key, Entry> entries) : entries_(std::move(entries)) {}

  // Throws ParseError / IoError.
  static ScriptedClient from_file(const std::filesystem::path& path);
  static ScriptedClient from_jsonl(const std::string& text, const std::string& source = "<memory>");

  void set(std::string episode_id, std::size_t step, Entry entry);
  const std::map<Key, Entry>& entries() const noexcept { return entries_; }

  // Canonical JSONL, sorted by key.
  std::string to_jsonl() const;

  std::string complete(const ModelRequest& request) override;

 private:
  std::map<Key, Entry> entries_;
};

struct EndpointConfig {
  std::string url;  // http://host:port/path
  std::string auth_header = "Authorization";
  std::string auth_token;  // sent as "<auth_header>: Bearer <token>" when set
};

// POSTs {"prompt", "image" (base64), "episode_id", "step"} as JSON and takes
// the response body as the reply text. Non-2xx statuses and connection
// failures raise TransportError; an exchange exceeding the request timeout
// raises ClientTimeout.
class HttpModelClient : public ModelClient {
 public:
  // Throws InvalidConfig for unsupported or malformed URLs.
  explicit HttpModelClient(EndpointConfig config);
  std::string complete(const ModelRequest& request) override;

 private:
  EndpointConfig config_;
  std::string scheme_host_port_;
  std::string path_;
};

std::string base64_encode(const std::string& bytes);

}  // namespace guibench
