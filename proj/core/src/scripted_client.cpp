#include <fstream>
#include <sstream>

#include <json.hpp>

#include "guibench/errors.hpp"
#include "guibench/model_client.hpp"
#include "text_util.hpp"

namespace guibench {

using nlohmann::json;
using nlohmann::ordered_json;

ScriptedClient ScriptedClient::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open transcript " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_jsonl(buf.str(), path.string());
}

ScriptedClient ScriptedClient::from_jsonl(const std::string& text, const std::string& source) {
  ScriptedClient client;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (text_util::trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      const auto& id = j.at("episode_id");
      const auto& step = j.at("step");
      if (!id.is_string() || !step.is_number_unsigned()) {
        throw ParseError(source, line_no, "episode_id must be a string and step an integer");
      }
      Entry entry;
      if (j.value("timeout", false)) {
        entry.outcome = Outcome::kTimeout;
      } else if (j.value("transport_error", false)) {
        entry.outcome = Outcome::kTransportError;
      } else {
        const auto& response = j.at("response");
        if (!response.is_string()) throw ParseError(source, line_no, "response must be a string");
        entry.response = response.get<std::string>();
      }
      Key key{id.get<std::string>(), step.get<std::size_t>()};
      if (client.entries_.count(key)) {
        throw ParseError(source, line_no,
                         "duplicate entry for " + key.first + "/" + std::to_string(key.second));
      }
      client.entries_.emplace(std::move(key), std::move(entry));
    } catch (const json::exception& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  return client;
}

void ScriptedClient::set(std::string episode_id, std::size_t step, Entry entry) {
  entries_[{std::move(episode_id), step}] = std::move(entry);
}

std::string ScriptedClient::to_jsonl() const {
  std::string out;
  for (const auto& [key, entry] : entries_) {
    ordered_json j;
    j["episode_id"] = key.first;
    j["step"] = key.second;
    switch (entry.outcome) {
      case Outcome::kResponse: j["response"] = entry.response; break;
      case Outcome::kTimeout: j["timeout"] = true; break;
      case Outcome::kTransportError: j["transport_error"] = true; break;
    }
    out += j.dump() + "\n";
  }
  return out;
}

std::string ScriptedClient::complete(const ModelRequest& request) {
  auto it = entries_.find({request.episode_id, request.step_index});
  if (it == entries_.end()) {
    throw TransportError("no scripted response for " + request.episode_id + "/" +
                         std::to_string(request.step_index));
  }
  switch (it->second.outcome) {
    case Outcome::kTimeout:
      throw ClientTimeout("scripted timeout for " + request.episode_id + "/" +
                          std::to_string(request.step_index));
    case Outcome::kTransportError:
      throw TransportError("scripted transport error for " + request.episode_id + "/" +
                           std::to_string(request.step_index));
    case Outcome::kResponse:
      break;
  }
  return it->second.response;
}

}  // namespace guibench
