#include "guibench/cot_protocol.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>

#include "guibench/errors.hpp"
#include "text_util.hpp"

namespace guibench {
namespace {

// Template pieces between the substitution points. Line breaks and trailing
// spaces are part of the wording.
constexpr std::string_view kHead = "Picture 1: <img> ";
constexpr std::string_view kAfterImage =
    " </img>\n"
    "Imagine you are a Mobile GUI assitant. Just like a human operating a mobile phone, you \n"
    "can tap and swipe the page, or use the keyboard to type some text, and you can also \n"
    "answer questions.\n"
    "\n"
    "Your task is <task> ";
constexpr std::string_view kAfterTask =
    " </task>.\n"
    "The elements on the page are as follows. <list>";
constexpr std::string_view kAfterList =
    "</list>\n"
    "Your historical moves to advance this mission are summarized below. <history> ";
constexpr std::string_view kTail =
    " \n"
    "<history>\n"
    "\n"
    "Based on your task, historical actions, and the current page information, you need to \n"
    "think and generate actions that can advance the task. You should respond in the \n"
    "following format:\n"
    "<observation>: Based on control information, describe the contents observed on the page.\n"
    "<Reasoning>: To accomplish the task, contemplate what action should be generated next.\n"
    "<Action>: A feasible action to accomplish the task, which could be a click, swipe, \n"
    "or input text. When you determine that the task is completed, you may also output \n"
    "\"Finish\".\n"
    "<Summary>: Assuming the next action has been executed, summarizing in two or three \n"
    "sentences in conjunction with the history of actions performed thus far, without \n"
    "including any potential future actions or specific coordinates of controls.\n";

enum Section { kObservation, kReasoning, kAction, kSummary, kSectionCount };

constexpr std::array<std::string_view, kSectionCount> kSectionNames = {
    "observation", "reasoning", "action", "summary"};

// Labels as written in the template, used when serializing.
constexpr std::array<std::string_view, kSectionCount> kTemplateLabels = {
    "<observation>", "<Reasoning>", "<Action>", "<Summary>"};

struct LabelHit {
  std::size_t label_begin;
  std::size_t content_begin;
};

// First occurrence of `<name>` (case-insensitive), skipping an optional colon.
std::optional<LabelHit> find_label(std::string_view text, std::string_view name) {
  const std::string lowered = text_util::ascii_lower(text);
  const std::string needle = "<" + std::string(name) + ">";
  std::size_t at = lowered.find(needle);
  if (at == std::string::npos) return std::nullopt;
  std::size_t content = at + needle.size();
  std::size_t probe = content;
  while (probe < text.size() && (text[probe] == ' ' || text[probe] == '\t')) ++probe;
  if (probe < text.size() && text[probe] == ':') content = probe + 1;
  return LabelHit{at, content};
}

}  // namespace

std::string build_prompt(const PromptInput& input) {
  std::string out;
  out.reserve(1536);
  out += kHead;
  out += input.image_ref;
  out += kAfterImage;
  out += input.task;
  out += kAfterTask;
  out += ' ';
  for (std::size_t i = 0; i < input.elements.size(); ++i) {
    if (i > 0) out += '\n';
    out += format_element(input.elements[i]);
  }
  if (!input.elements.empty()) out += ' ';
  out += kAfterList;
  if (input.history.empty()) {
    out += "None";
  } else {
    for (std::size_t i = 0; i < input.history.size(); ++i) {
      if (i > 0) out += '\n';
      out += input.history[i];
    }
  }
  out += kTail;
  return out;
}

CotResponse parse_response(std::string_view text) {
  std::array<LabelHit, kSectionCount> hits{};
  for (int s = 0; s < kSectionCount; ++s) {
    auto hit = find_label(text, kSectionNames[s]);
    if (!hit) throw MissingSection(std::string(kSectionNames[s]));
    hits[s] = *hit;
  }

  std::array<std::string, kSectionCount> bodies;
  for (int s = 0; s < kSectionCount; ++s) {
    std::size_t end = text.size();
    for (int o = 0; o < kSectionCount; ++o) {
      if (hits[o].label_begin >= hits[s].content_begin) end = std::min(end, hits[o].label_begin);
    }
    bodies[s] = std::string(text_util::trim(
        text.substr(hits[s].content_begin, end - hits[s].content_begin)));
    if (bodies[s].empty()) throw EmptySection(std::string(kSectionNames[s]));
  }

  CotResponse r;
  r.observation = std::move(bodies[kObservation]);
  r.reasoning = std::move(bodies[kReasoning]);
  r.action_text = std::move(bodies[kAction]);
  r.summary = std::move(bodies[kSummary]);

  // The prompt tells the model it may answer "Finish", quotes included.
  if (text_util::ascii_lower(r.action_text) == "\"finish\"") {
    r.action = TaskFinish{};
  } else {
    r.action = parse_action(r.action_text);
  }
  return r;
}

std::string serialize_response(const CotResponse& response) {
  const std::array<const std::string*, kSectionCount> bodies = {
      &response.observation, &response.reasoning, &response.action_text, &response.summary};
  std::string out;
  for (int s = 0; s < kSectionCount; ++s) {
    out += kTemplateLabels[s];
    out += ": ";
    out += *bodies[s];
    out += '\n';
  }
  return out;
}

}  // namespace guibench
