#include "guibench/action.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "guibench/errors.hpp"

namespace guibench {
namespace {

constexpr std::array<std::string_view, kActionKindCount> kKindNames = {
    "click", "long_press", "input", "scroll", "drag", "wait", "answer", "finish"};

constexpr std::array<std::string_view, kActionKindCount> kKeywords = {
    "CLICK", "LONG_PRESS", "INPUT", "SCROLL", "DRAG", "WAIT", "ANSWER", "FINISH"};

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(a[i])) !=
        std::toupper(static_cast<unsigned char>(b[i]))) {
      return false;
    }
  }
  return true;
}

void append_point(std::string& out, Point p) {
  out += '(';
  out += format_number(p.x);
  out += ',';
  out += format_number(p.y);
  out += ')';
}

void append_quoted(std::string& out, std::string_view text) {
  out += '"';
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
}

void append_path(std::string& out, const std::vector<Point>& path) {
  out += '(';
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0) out += "->";
    append_point(out, path[i]);
  }
  out += ')';
}

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= s_.size(); }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(std::string reason) const {
    throw MalformedAction(pos_, std::move(reason));
  }

  bool peek(char c) {
    skip_ws();
    return !at_end() && s_[pos_] == c;
  }

  void expect(char c) {
    skip_ws();
    if (at_end()) fail(std::string("expected '") + c + "' but input ended");
    if (s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool consume_arrow() {
    skip_ws();
    if (s_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return true;
    }
    return false;
  }

  std::string_view keyword() {
    skip_ws();
    std::size_t start = pos_;
    while (!at_end() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected action keyword");
    return s_.substr(start, pos_ - start);
  }

  double number() {
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      fail("expected non-negative number");
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("number out of range");
    if (!std::isfinite(v)) fail("non-finite coordinate");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  std::uint64_t unsigned_integer() {
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      fail("expected integer milliseconds");
    }
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("duration out of range");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  std::string quoted() {
    skip_ws();
    if (at_end() || s_[pos_] != '"') fail("expected '\"'");
    std::size_t open = pos_++;
    std::string out;
    while (true) {
      if (at_end()) throw MalformedAction(open, "unterminated string");
      char c = s_[pos_++];
      if (c == '"') {
        if (!at_end() && s_[pos_] == '"') {
          out += '"';
          ++pos_;
          continue;
        }
        return out;
      }
      out += c;
    }
  }

  Point point() {
    expect('(');
    Point p;
    p.x = number();
    expect(',');
    p.y = number();
    expect(')');
    return p;
  }

  std::vector<Point> path() {
    expect('(');
    std::vector<Point> pts;
    pts.push_back(point());
    while (consume_arrow()) pts.push_back(point());
    if (pts.size() < 2) fail("path needs at least 2 points");
    expect(')');
    return pts;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

ActionKind kind_of(const Action& a) noexcept {
  return static_cast<ActionKind>(a.index());
}

std::string_view to_string(ActionKind k) noexcept {
  return kKindNames[static_cast<std::size_t>(k)];
}

ActionKind action_kind_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == s) return static_cast<ActionKind>(i);
  }
  throw InvalidConfig("unknown action kind '" + std::string(s) + "'");
}

bool is_valid(const Action& a) noexcept {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Click> || std::is_same_v<T, LongPress>) {
          return is_valid_point(v.point);
        } else if constexpr (std::is_same_v<T, Scroll> || std::is_same_v<T, Drag>) {
          if (v.path.size() < 2) return false;
          for (const auto& p : v.path) {
            if (!is_valid_point(p)) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Wait>) {
          return v.duration_ms > 0;
        } else if constexpr (std::is_same_v<T, Answer>) {
          return !v.text.empty();
        } else {
          return true;
        }
      },
      a);
}

std::string render_action(const Action& a) {
  std::string out(kKeywords[a.index()]);
  std::visit(
      [&out](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Click> || std::is_same_v<T, LongPress>) {
          append_point(out, v.point);
        } else if constexpr (std::is_same_v<T, Input> || std::is_same_v<T, Answer>) {
          out += '(';
          append_quoted(out, v.text);
          out += ')';
        } else if constexpr (std::is_same_v<T, Scroll> || std::is_same_v<T, Drag>) {
          append_path(out, v.path);
        } else if constexpr (std::is_same_v<T, Wait>) {
          out += '(';
          out += std::to_string(v.duration_ms);
          out += ')';
        }
      },
      a);
  return out;
}

Action parse_action(std::string_view s) {
  Cursor cur(s);
  std::size_t kw_pos = (cur.skip_ws(), cur.pos());
  std::string_view kw = cur.keyword();

  std::size_t kind = kKeywords.size();
  for (std::size_t i = 0; i < kKeywords.size(); ++i) {
    if (iequals(kw, kKeywords[i])) kind = i;
  }
  if (kind == kKeywords.size()) {
    throw MalformedAction(kw_pos, "unknown keyword '" + std::string(kw) + "'");
  }

  Action result;
  switch (static_cast<ActionKind>(kind)) {
    case ActionKind::kClick:
      result = Click{cur.point()};
      break;
    case ActionKind::kLongPress:
      result = LongPress{cur.point()};
      break;
    case ActionKind::kInput: {
      cur.expect('(');
      result = Input{cur.quoted()};
      cur.expect(')');
      break;
    }
    case ActionKind::kAnswer: {
      cur.expect('(');
      std::size_t text_pos = cur.pos();
      std::string text = cur.quoted();
      if (text.empty()) throw MalformedAction(text_pos, "answer text must be nonempty");
      cur.expect(')');
      result = Answer{std::move(text)};
      break;
    }
    case ActionKind::kScroll:
      result = Scroll{cur.path()};
      break;
    case ActionKind::kDrag:
      result = Drag{cur.path()};
      break;
    case ActionKind::kWait: {
      cur.expect('(');
      std::size_t ms_pos = cur.pos();
      std::uint64_t ms = cur.unsigned_integer();
      if (ms == 0) throw MalformedAction(ms_pos, "wait duration must be positive");
      cur.expect(')');
      result = Wait{ms};
      break;
    }
    case ActionKind::kFinish:
      result = TaskFinish{};
      break;
  }

  cur.skip_ws();
  if (!cur.at_end()) cur.fail("trailing characters after action");
  return result;
}

}  // namespace guibench
