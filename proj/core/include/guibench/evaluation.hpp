#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "guibench/action.hpp"
#include "guibench/geometry.hpp"

namespace guibench {

// Screen-space swipe direction; `up` means the finger travels toward y = 0.
enum class Direction : std::uint8_t { kUp, kDown, kLeft, kRight };

std::string_view to_string(Direction d) noexcept;
Direction direction_from_string(std::string_view s);

// Reference data for one recorded step. Which optional fields are set is
// determined by `kind`:
//   click, long_press  -> target_box
//   scroll, drag       -> path_box, direction
//   input, answer      -> text
//   wait, finish       -> nothing
struct GroundTruth {
  ActionKind kind = ActionKind::kFinish;
  std::optional<BBox> target_box;
  std::optional<BBox> path_box;
  std::optional<Direction> direction;
  std::optional<std::string> text;

  static GroundTruth click(BBox target);
  static GroundTruth long_press(BBox target);
  static GroundTruth input(std::string text);
  static GroundTruth answer(std::string text);
  static GroundTruth scroll(BBox path_box, Direction dir);
  static GroundTruth drag(BBox path_box, Direction dir);
  static GroundTruth wait();
  static GroundTruth finish();

  // Fields present exactly as required by `kind`, boxes valid.
  bool is_valid() const noexcept;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

enum class VerdictReason : std::uint8_t {
  kOk,
  kTypeMismatch,
  kIouBelowThreshold,
  kTextMismatch,
  kDirectionMismatch,
  // The model reply could not be parsed into an action at all.
  kParseError,
};

std::string_view to_string(VerdictReason r) noexcept;

struct StepVerdict {
  bool matched = false;
  VerdictReason reason = VerdictReason::kTypeMismatch;

  static StepVerdict ok() { return {true, VerdictReason::kOk}; }
  static StepVerdict fail(VerdictReason r) { return {false, r}; }

  friend bool operator==(const StepVerdict&, const StepVerdict&) = default;
};

struct MatchConfig {
  double iou_threshold = 0.5;
  // Half-side of the square a predicted point (or path) is dilated into.
  double point_box_px = 1.0;
};

// area(a ∩ b) / area(a ∪ b); 0 when disjoint or both boxes are empty.
double iou(const BBox& a, const BBox& b) noexcept;

// Axis-aligned bounds of the path grown by `dilation` on every side.
BBox path_bounds(std::span<const Point> path, double dilation) noexcept;

// Dominant axis of (to - from); vertical wins exact ties. nullopt if from == to.
std::optional<Direction> swipe_direction(Point from, Point to) noexcept;

// Type match first, then the per-kind rule:
//   click/long_press  point inside target_box, or IoU(dilated point, target) >= threshold
//   scroll/drag       IoU(dilated path bounds, path_box) >= threshold and same direction
//   input/answer      normalized text equality
//   wait/finish       type match alone
StepVerdict match_step(const Action& predicted, const GroundTruth& truth,
                       const MatchConfig& cfg = {});

// An action that match_step accepts against `truth` (box centres, a swipe
// spanning path_box). Used for teacher-forced history and oracle replays.
// Path boxes narrower than 2 * point_box_px on either side cannot be matched
// by any swipe; recorded swipes always yield boxes at least that large.
Action synthesize_action(const GroundTruth& truth, const MatchConfig& cfg = {});

// trim, collapse internal whitespace, ASCII case-fold.
std::string normalize_text(std::string_view s);

// Tallies behind the whole-task, step and endpoint rates.
struct MetricsCounts {
  std::uint64_t all_intentions = 0;
  std::uint64_t timeout_intentions = 0;
  std::uint64_t success_intentions = 0;
  std::uint64_t success_terminal_intentions = 0;
  std::uint64_t all_steps = 0;
  std::uint64_t success_steps = 0;

  MetricsCounts& operator+=(const MetricsCounts& o) noexcept;
  friend MetricsCounts operator+(MetricsCounts a, const MetricsCounts& b) noexcept {
    return a += b;
  }

  std::uint64_t evaluated_intentions() const noexcept {
    return all_intentions - timeout_intentions;
  }
  bool is_consistent() const noexcept;

  friend bool operator==(const MetricsCounts&, const MetricsCounts&) = default;
};

// success / (all - timeout). Throws EmptyDenominator.
double wtsr(const MetricsCounts& c);
// success_steps / all_steps. Throws EmptyDenominator.
double ssr(const MetricsCounts& c);
// success_terminal / (all - timeout). Throws EmptyDenominator.
double edr(const MetricsCounts& c);

struct VqaMetrics {
  double recall = 0;
  double accuracy = 0;
  double f_score = 0;

  friend bool operator==(const VqaMetrics&, const VqaMetrics&) = default;
};

// Harmonic mean of recall and accuracy, 0 when both are 0.
double f_score(double recall, double accuracy) noexcept;

struct VqaJudgment {
  std::string prediction;
  std::string reference;
};

// accuracy: share of normalized exact matches. recall: mean share of
// reference tokens (whitespace-split after normalization, counted with
// multiplicity) found in the prediction. Throws EmptyInput.
VqaMetrics vqa_scores(std::span<const VqaJudgment> judgments);

}  // namespace guibench
