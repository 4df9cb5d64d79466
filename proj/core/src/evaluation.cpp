#include "guibench/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "guibench/errors.hpp"
#include "text_util.hpp"

namespace guibench {
namespace {

constexpr std::array<std::string_view, 4> kDirectionNames = {"up", "down", "left", "right"};

bool is_point_kind(ActionKind k) {
  return k == ActionKind::kClick || k == ActionKind::kLongPress;
}
bool is_path_kind(ActionKind k) { return k == ActionKind::kScroll || k == ActionKind::kDrag; }
bool is_text_kind(ActionKind k) { return k == ActionKind::kInput || k == ActionKind::kAnswer; }

Point center(const BBox& b) { return {(b.left + b.right) / 2, (b.top + b.bottom) / 2}; }

const std::vector<Point>& path_of(const Action& a) {
  if (const auto* s = std::get_if<Scroll>(&a)) return s->path;
  return std::get<Drag>(a).path;
}

Point point_of(const Action& a) {
  if (const auto* c = std::get_if<Click>(&a)) return c->point;
  return std::get<LongPress>(a).point;
}

const std::string& text_of(const Action& a) {
  if (const auto* i = std::get_if<Input>(&a)) return i->text;
  return std::get<Answer>(a).text;
}

}  // namespace

std::string_view to_string(Direction d) noexcept {
  return kDirectionNames[static_cast<std::size_t>(d)];
}

Direction direction_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kDirectionNames.size(); ++i) {
    if (kDirectionNames[i] == s) return static_cast<Direction>(i);
  }
  throw InvalidConfig("unknown direction '" + std::string(s) + "'");
}

std::string_view to_string(VerdictReason r) noexcept {
  switch (r) {
    case VerdictReason::kOk: return "ok";
    case VerdictReason::kTypeMismatch: return "type-mismatch";
    case VerdictReason::kIouBelowThreshold: return "iou-below-threshold";
    case VerdictReason::kTextMismatch: return "text-mismatch";
    case VerdictReason::kDirectionMismatch: return "direction-mismatch";
    case VerdictReason::kParseError: return "parse-error";
  }
  return "unknown";
}

GroundTruth GroundTruth::click(BBox target) {
  GroundTruth g;
  g.kind = ActionKind::kClick;
  g.target_box = target;
  return g;
}

GroundTruth GroundTruth::long_press(BBox target) {
  GroundTruth g = click(target);
  g.kind = ActionKind::kLongPress;
  return g;
}

GroundTruth GroundTruth::input(std::string text) {
  GroundTruth g;
  g.kind = ActionKind::kInput;
  g.text = std::move(text);
  return g;
}

GroundTruth GroundTruth::answer(std::string text) {
  GroundTruth g = input(std::move(text));
  g.kind = ActionKind::kAnswer;
  return g;
}

GroundTruth GroundTruth::scroll(BBox path_box, Direction dir) {
  GroundTruth g;
  g.kind = ActionKind::kScroll;
  g.path_box = path_box;
  g.direction = dir;
  return g;
}

GroundTruth GroundTruth::drag(BBox path_box, Direction dir) {
  GroundTruth g = scroll(path_box, dir);
  g.kind = ActionKind::kDrag;
  return g;
}

GroundTruth GroundTruth::wait() {
  GroundTruth g;
  g.kind = ActionKind::kWait;
  return g;
}

GroundTruth GroundTruth::finish() { return GroundTruth{}; }

bool GroundTruth::is_valid() const noexcept {
  const bool want_target = is_point_kind(kind);
  const bool want_path = is_path_kind(kind);
  const bool want_text = is_text_kind(kind);
  if (target_box.has_value() != want_target) return false;
  if (path_box.has_value() != want_path || direction.has_value() != want_path) return false;
  if (text.has_value() != want_text) return false;
  if (target_box && !target_box->is_valid()) return false;
  if (path_box && !path_box->is_valid()) return false;
  if (kind == ActionKind::kAnswer && text_util::trim(*text).empty()) return false;
  return true;
}

double iou(const BBox& a, const BBox& b) noexcept {
  const double iw = std::min(a.right, b.right) - std::max(a.left, b.left);
  const double ih = std::min(a.bottom, b.bottom) - std::max(a.top, b.top);
  if (iw <= 0 || ih <= 0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

BBox path_bounds(std::span<const Point> path, double dilation) noexcept {
  if (path.empty()) return {};
  BBox b{path[0].x, path[0].y, path[0].x, path[0].y};
  for (const Point& p : path) {
    b.left = std::min(b.left, p.x);
    b.top = std::min(b.top, p.y);
    b.right = std::max(b.right, p.x);
    b.bottom = std::max(b.bottom, p.y);
  }
  b.left -= dilation;
  b.top -= dilation;
  b.right += dilation;
  b.bottom += dilation;
  return b;
}

std::optional<Direction> swipe_direction(Point from, Point to) noexcept {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0 && dy == 0) return std::nullopt;
  if (std::abs(dx) > std::abs(dy)) return dx > 0 ? Direction::kRight : Direction::kLeft;
  return dy > 0 ? Direction::kDown : Direction::kUp;
}

StepVerdict match_step(const Action& predicted, const GroundTruth& truth, const MatchConfig& cfg) {
  const ActionKind kind = kind_of(predicted);
  if (kind != truth.kind) return StepVerdict::fail(VerdictReason::kTypeMismatch);

  if (is_point_kind(kind)) {
    if (!truth.target_box) return StepVerdict::fail(VerdictReason::kIouBelowThreshold);
    const Point p = point_of(predicted);
    const BBox& target = *truth.target_box;
    if (target.contains(p)) return StepVerdict::ok();
    const Point one[] = {p};
    if (iou(path_bounds(one, cfg.point_box_px), target) >= cfg.iou_threshold) {
      return StepVerdict::ok();
    }
    return StepVerdict::fail(VerdictReason::kIouBelowThreshold);
  }

  if (is_path_kind(kind)) {
    if (!truth.path_box || !truth.direction) {
      return StepVerdict::fail(VerdictReason::kIouBelowThreshold);
    }
    const auto& path = path_of(predicted);
    if (iou(path_bounds(path, cfg.point_box_px), *truth.path_box) < cfg.iou_threshold) {
      return StepVerdict::fail(VerdictReason::kIouBelowThreshold);
    }
    if (path.size() < 2 || swipe_direction(path.front(), path.back()) != truth.direction) {
      return StepVerdict::fail(VerdictReason::kDirectionMismatch);
    }
    return StepVerdict::ok();
  }

  if (is_text_kind(kind)) {
    if (!truth.text) return StepVerdict::fail(VerdictReason::kTextMismatch);
    if (normalize_text(text_of(predicted)) != normalize_text(*truth.text)) {
      return StepVerdict::fail(VerdictReason::kTextMismatch);
    }
    return StepVerdict::ok();
  }

  return StepVerdict::ok();
}

Action synthesize_action(const GroundTruth& truth, const MatchConfig& cfg) {
  switch (truth.kind) {
    case ActionKind::kClick:
      return Click{center(*truth.target_box)};
    case ActionKind::kLongPress:
      return LongPress{center(*truth.target_box)};
    case ActionKind::kInput:
      return Input{*truth.text};
    case ActionKind::kAnswer:
      return Answer{*truth.text};
    case ActionKind::kScroll:
    case ActionKind::kDrag: {
      const BBox& box = *truth.path_box;
      const Point c = center(box);
      // Pull endpoints in by the dilation so the dilated bounds recover the box.
      const double inset_x = box.width() > 2 * cfg.point_box_px ? cfg.point_box_px : 0.0;
      const double inset_y = box.height() > 2 * cfg.point_box_px ? cfg.point_box_px : 0.0;
      const double l = box.left + inset_x, r = box.right - inset_x;
      const double t = box.top + inset_y, b = box.bottom - inset_y;
      std::vector<Point> path;
      switch (*truth.direction) {
        case Direction::kUp: path = {{c.x, b}, {c.x, t}}; break;
        case Direction::kDown: path = {{c.x, t}, {c.x, b}}; break;
        case Direction::kLeft: path = {{r, c.y}, {l, c.y}}; break;
        case Direction::kRight: path = {{l, c.y}, {r, c.y}}; break;
      }
      // A box wide across the swipe axis needs side waypoints to be covered.
      const bool vertical =
          *truth.direction == Direction::kUp || *truth.direction == Direction::kDown;
      if (vertical && inset_x > 0) {
        path.insert(path.begin() + 1, {{l, c.y}, {r, c.y}});
      } else if (!vertical && inset_y > 0) {
        path.insert(path.begin() + 1, {{c.x, t}, {c.x, b}});
      }
      if (truth.kind == ActionKind::kScroll) return Scroll{std::move(path)};
      return Drag{std::move(path)};
    }
    case ActionKind::kWait:
      return Wait{1000};
    case ActionKind::kFinish:
      return TaskFinish{};
  }
  return TaskFinish{};
}

std::string normalize_text(std::string_view s) { return text_util::normalize(s); }

MetricsCounts& MetricsCounts::operator+=(const MetricsCounts& o) noexcept {
  all_intentions += o.all_intentions;
  timeout_intentions += o.timeout_intentions;
  success_intentions += o.success_intentions;
  success_terminal_intentions += o.success_terminal_intentions;
  all_steps += o.all_steps;
  success_steps += o.success_steps;
  return *this;
}

bool MetricsCounts::is_consistent() const noexcept {
  return timeout_intentions <= all_intentions &&
         success_terminal_intentions <= success_intentions &&
         success_intentions <= all_intentions - timeout_intentions && success_steps <= all_steps;
}

double wtsr(const MetricsCounts& c) {
  if (c.timeout_intentions >= c.all_intentions) {
    throw EmptyDenominator("WTSR: no intentions left after excluding timeouts");
  }
  return static_cast<double>(c.success_intentions) / static_cast<double>(c.evaluated_intentions());
}

double ssr(const MetricsCounts& c) {
  if (c.all_steps == 0) throw EmptyDenominator("SSR: no steps");
  return static_cast<double>(c.success_steps) / static_cast<double>(c.all_steps);
}

double edr(const MetricsCounts& c) {
  if (c.timeout_intentions >= c.all_intentions) {
    throw EmptyDenominator("EDR: no intentions left after excluding timeouts");
  }
  return static_cast<double>(c.success_terminal_intentions) /
         static_cast<double>(c.evaluated_intentions());
}

double f_score(double recall, double accuracy) noexcept {
  const double sum = recall + accuracy;
  if (sum == 0) return 0.0;
  return 2 * recall * accuracy / sum;
}

VqaMetrics vqa_scores(std::span<const VqaJudgment> judgments) {
  if (judgments.empty()) throw EmptyInput("vqa_scores needs at least one judgment");
  double recall_sum = 0;
  std::size_t exact = 0;
  for (const auto& j : judgments) {
    const std::string pred = normalize_text(j.prediction);
    const std::string ref = normalize_text(j.reference);
    if (pred == ref) ++exact;

    const auto ref_tokens = text_util::split_ws(ref);
    if (ref_tokens.empty()) {
      recall_sum += pred.empty() ? 1.0 : 0.0;
      continue;
    }
    std::map<std::string, std::size_t> available;
    for (auto& t : text_util::split_ws(pred)) ++available[t];
    std::size_t hit = 0;
    for (const auto& t : ref_tokens) {
      auto it = available.find(t);
      if (it != available.end() && it->second > 0) {
        --it->second;
        ++hit;
      }
    }
    recall_sum += static_cast<double>(hit) / static_cast<double>(ref_tokens.size());
  }
  VqaMetrics m;
  const auto n = static_cast<double>(judgments.size());
  m.recall = recall_sum / n;
  m.accuracy = static_cast<double>(exact) / n;
  m.f_score = f_score(m.recall, m.accuracy);
  return m;
}

}  // namespace guibench
