#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "guibench/geometry.hpp"

namespace guibench {

// The agent's move vocabulary. Seven gestures plus Answer for VQA turns.
//
// Canonical text grammar (keywords are case-insensitive on input, upper-case
// on output; whitespace is allowed between tokens):
//
//   CLICK(x,y)             LONG_PRESS(x,y)
//   INPUT("text")          ANSWER("text")       quotes escaped by doubling
//   SCROLL((x,y)->(x,y)->...)                   at least two points
//   DRAG((x,y)->(x,y)->...)
//   WAIT(ms)               FINISH

struct Click {
  Point point;
  friend bool operator==(const Click&, const Click&) = default;
};

struct LongPress {
  Point point;
  friend bool operator==(const LongPress&, const LongPress&) = default;
};

struct Input {
  std::string text;
  friend bool operator==(const Input&, const Input&) = default;
};

struct Scroll {
  std::vector<Point> path;
  friend bool operator==(const Scroll&, const Scroll&) = default;
};

struct Drag {
  std::vector<Point> path;
  friend bool operator==(const Drag&, const Drag&) = default;
};

struct Wait {
  std::uint64_t duration_ms = 0;
  friend bool operator==(const Wait&, const Wait&) = default;
};

struct Answer {
  std::string text;
  friend bool operator==(const Answer&, const Answer&) = default;
};

struct TaskFinish {
  friend bool operator==(const TaskFinish&, const TaskFinish&) = default;
};

using Action =
    std::variant<Click, LongPress, Input, Scroll, Drag, Wait, Answer, TaskFinish>;

// Variant tag; enumerator order matches the Action alternatives.
enum class ActionKind : std::uint8_t {
  kClick,
  kLongPress,
  kInput,
  kScroll,
  kDrag,
  kWait,
  kAnswer,
  kFinish,
};

inline constexpr std::size_t kActionKindCount = 8;

ActionKind kind_of(const Action& a) noexcept;

// Lower-case identifier used in data files: click, long_press, input, scroll,
// drag, wait, answer, finish.
std::string_view to_string(ActionKind k) noexcept;
// Throws InvalidConfig for unknown names.
ActionKind action_kind_from_string(std::string_view s);

bool is_valid(const Action& a) noexcept;

std::string render_action(const Action& a);

// Throws MalformedAction.
Action parse_action(std::string_view s);

}  // namespace guibench
