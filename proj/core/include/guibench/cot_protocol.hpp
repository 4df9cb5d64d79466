#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "guibench/action.hpp"
#include "guibench/geometry.hpp"

namespace guibench {

struct PromptInput {
  std::string image_ref;             // substituted for `image_path`
  std::string task;                  // nonempty
  std::vector<UiElement> elements;   // one `text@[l,t,r,b]` line each
  std::vector<std::string> history;  // prior summaries, oldest first
};

// Parsed four-section agent reply.
struct CotResponse {
  std::string observation;
  std::string reasoning;
  std::string action_text;
  std::string summary;
  Action action;

  friend bool operator==(const CotResponse&, const CotResponse&) = default;
};

// Fills the agent prompt template. Deterministic; the fixed wording, line
// breaks and trailing spaces of the template are reproduced byte-for-byte.
std::string build_prompt(const PromptInput& input);

// Extracts <observation>, <reasoning>, <action>, <summary> in any order and
// case, with or without a colon after the label. Throws MissingSection,
// EmptySection or MalformedAction.
CotResponse parse_response(std::string_view text);

// Writes a reply using the template's own labels, one section per line.
std::string serialize_response(const CotResponse& response);

}  // namespace guibench
