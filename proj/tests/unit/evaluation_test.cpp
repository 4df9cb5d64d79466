#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "guibench/errors.hpp"
#include "guibench/evaluation.hpp"
#include "guibench/report.hpp"
#include "guibench/taxonomy.hpp"
#include "test_support.hpp"

namespace guibench {
namespace {

TEST(Iou, HandCases) {
  const BBox a{0, 0, 10, 10};
  EXPECT_DOUBLE_EQ(iou(a, a), 1.0);
  EXPECT_DOUBLE_EQ(iou(a, {20, 20, 30, 30}), 0.0);
  EXPECT_DOUBLE_EQ(iou(a, {10, 0, 20, 10}), 0.0);  // shared edge only
  EXPECT_DOUBLE_EQ(iou(a, {5, 0, 15, 10}), 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(iou(a, {0, 0, 5, 5}), 0.25);
}

// Unit-cell counting on integer boxes.
double raster_iou(const BBox& a, const BBox& b) {
  long inter = 0, uni = 0;
  for (int x = 0; x < 40; ++x) {
    for (int y = 0; y < 40; ++y) {
      const bool in_a = x >= a.left && x + 1 <= a.right && y >= a.top && y + 1 <= a.bottom;
      const bool in_b = x >= b.left && x + 1 <= b.right && y >= b.top && y + 1 <= b.bottom;
      inter += in_a && in_b;
      uni += in_a || in_b;
    }
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

BBox random_box(testing::Rng& rng, int limit) {
  const int l = static_cast<int>(rng() % (limit - 1)), t = static_cast<int>(rng() % (limit - 1));
  const int r = l + 1 + static_cast<int>(rng() % (limit - l - 1 + 1));
  const int b = t + 1 + static_cast<int>(rng() % (limit - t - 1 + 1));
  return {double(l), double(t), double(std::min(r, limit)), double(std::min(b, limit))};
}

TEST(IouProperty, RasterOracleSymmetryBounds) {
  testing::Rng rng(51);
  for (int i = 0; i < 3000; ++i) {
    const BBox a = random_box(rng, 40), b = random_box(rng, 40);
    const double v = iou(a, b);
    ASSERT_NEAR(v, raster_iou(a, b), 1e-12);
    ASSERT_EQ(v, iou(b, a));
    ASSERT_GE(v, 0.0);
    ASSERT_LE(v, 1.0);
    ASSERT_EQ(v == 1.0, a == b);
  }
}

TEST(MatchStep, Click) {
  const auto gt = GroundTruth::click({0, 0, 10, 10});
  EXPECT_EQ(match_step(Click{{5, 5}}, gt), StepVerdict::ok());
  EXPECT_EQ(match_step(Click{{10, 10}}, gt), StepVerdict::ok());
  EXPECT_EQ(match_step(Click{{12, 5}}, gt).reason, VerdictReason::kIouBelowThreshold);
  EXPECT_EQ(match_step(LongPress{{5, 5}}, gt).reason, VerdictReason::kTypeMismatch);
  // A tiny target is hit through the dilated point's IoU.
  const auto tiny = GroundTruth::click({100, 100, 101.5, 101.5});
  EXPECT_TRUE(match_step(Click{{101.6, 101.6}}, tiny, {0.1, 1.0}).matched);
  EXPECT_FALSE(match_step(Click{{101.6, 101.6}}, tiny, {0.2, 1.0}).matched);
}

TEST(MatchStep, TypeMismatchDominates) {
  EXPECT_EQ(match_step(Click{{50, 50}}, GroundTruth::input("abc")).reason,
            VerdictReason::kTypeMismatch);
  EXPECT_EQ(match_step(Scroll{{{0, 0}, {0, 9}}}, GroundTruth::drag({0, 0, 1, 9}, Direction::kDown))
                .reason,
            VerdictReason::kTypeMismatch);
  EXPECT_EQ(match_step(TaskFinish{}, GroundTruth::wait()).reason, VerdictReason::kTypeMismatch);
}

TEST(MatchStep, ScrollExample) {
  // Recorded swipe (100,800)->(100,200) stored as its bounds grown by 1px.
  const auto gt = GroundTruth::scroll({99, 199, 101, 801}, Direction::kUp);
  EXPECT_EQ(match_step(Scroll{{{100, 800}, {100, 200}}}, gt), StepVerdict::ok());
  EXPECT_EQ(match_step(Scroll{{{100, 200}, {100, 800}}}, gt).reason,
            VerdictReason::kDirectionMismatch);
  EXPECT_EQ(match_step(Scroll{{{100, 800}, {100, 600}}}, gt).reason,
            VerdictReason::kIouBelowThreshold);
}

// Independent scroll judgement: raster IoU of the grown bounds plus the sign
// of the larger displacement component.
bool scroll_oracle(const std::vector<Point>& path, const BBox& box, Direction dir, double d) {
  double l = path[0].x, t = path[0].y, r = l, b = t;
  for (const auto& p : path) {
    l = std::min(l, p.x), t = std::min(t, p.y), r = std::max(r, p.x), b = std::max(b, p.y);
  }
  const double dx = path.back().x - path.front().x, dy = path.back().y - path.front().y;
  Direction got;
  if (dx == 0 && dy == 0) return false;
  if (std::abs(dy) >= std::abs(dx)) got = dy < 0 ? Direction::kUp : Direction::kDown;
  else got = dx < 0 ? Direction::kLeft : Direction::kRight;
  return got == dir && raster_iou({l - d, t - d, r + d, b + d}, box) >= 0.5;
}

TEST(MatchStep, ScrollAgainstOracle) {
  testing::Rng rng(52);
  int matched = 0;
  for (int i = 0; i < 5000; ++i) {
    std::vector<Point> path(2 + rng() % 2);
    for (auto& p : path) p = {double(1 + rng() % 37), double(1 + rng() % 37)};
    const BBox box = random_box(rng, 40);
    const auto dir = static_cast<Direction>(rng() % 4);
    const bool want = scroll_oracle(path, box, dir, 1.0);
    const StepVerdict v = match_step(Drag{path}, GroundTruth::drag(box, dir));
    ASSERT_EQ(v.matched, want);
    matched += want;
  }
  EXPECT_GT(matched, 10);
}

TEST(MatchStep, TextNormalization) {
  const auto gt = GroundTruth::input("  Hotpot   House ");
  EXPECT_TRUE(match_step(Input{"hotpot house"}, gt).matched);
  EXPECT_EQ(match_step(Input{"hotpot"}, gt).reason, VerdictReason::kTextMismatch);
  EXPECT_TRUE(match_step(Answer{"3 ITEMS"}, GroundTruth::answer("3 items")).matched);
  EXPECT_EQ(normalize_text("  A\tb \n C "), "a b c");
}

TEST(MatchStep, WaitAndFinish) {
  EXPECT_TRUE(match_step(Wait{10}, GroundTruth::wait()).matched);
  EXPECT_TRUE(match_step(TaskFinish{}, GroundTruth::finish()).matched);
}

TEST(MatchStep, TotalOnIncompleteTruth) {
  GroundTruth broken;
  broken.kind = ActionKind::kClick;  // no target box
  EXPECT_FALSE(match_step(Click{{1, 1}}, broken).matched);
  broken.kind = ActionKind::kScroll;
  EXPECT_FALSE(match_step(Scroll{{{1, 1}, {1, 5}}}, broken).matched);
}

TEST(SynthesizeAction, AlwaysMatches) {
  testing::Rng rng(53);
  for (int i = 0; i < 2000; ++i) {
    const BBox b = random_box(rng, 40);
    const auto dir = static_cast<Direction>(rng() % 4);
    for (const auto& gt :
         {GroundTruth::click(b), GroundTruth::long_press(b), GroundTruth::scroll(b, dir),
          GroundTruth::drag(b, dir), GroundTruth::input("a b"), GroundTruth::answer("x"),
          GroundTruth::wait(), GroundTruth::finish()}) {
      // Below the dilation square no swipe can reach the threshold.
      if ((gt.kind == ActionKind::kScroll || gt.kind == ActionKind::kDrag) &&
          (b.width() < 2 || b.height() < 2)) {
        continue;
      }
      const Action a = synthesize_action(gt);
      ASSERT_TRUE(is_valid(a));
      ASSERT_TRUE(match_step(a, gt).matched) << render_action(a);
    }
  }
}

TEST(Metrics, HandArithmetic) {
  MetricsCounts c{10, 2, 4, 2, 20, 17};
  EXPECT_DOUBLE_EQ(wtsr(c), 0.5);
  EXPECT_DOUBLE_EQ(ssr(c), 0.85);
  EXPECT_DOUBLE_EQ(edr(c), 0.25);
  EXPECT_DOUBLE_EQ(edr(MetricsCounts{10, 0, 3, 2, 10, 5}), 0.2);
  MetricsCounts same{10, 0, 3, 3, 10, 5};
  EXPECT_EQ(edr(same), wtsr(same));
  EXPECT_DOUBLE_EQ(wtsr(MetricsCounts{5, 0, 0, 0, 5, 0}), 0.0);
  EXPECT_DOUBLE_EQ(ssr(MetricsCounts{1, 0, 1, 1, 6, 6}), 1.0);
  EXPECT_THROW(wtsr(MetricsCounts{3, 3, 0, 0, 0, 0}), EmptyDenominator);
  EXPECT_THROW(edr(MetricsCounts{}), EmptyDenominator);
  EXPECT_THROW(ssr(MetricsCounts{}), EmptyDenominator);
  EXPECT_TRUE(c.is_consistent());
  EXPECT_FALSE((MetricsCounts{2, 1, 2, 0, 0, 0}).is_consistent());
  EXPECT_FALSE((MetricsCounts{2, 0, 1, 2, 0, 0}).is_consistent());
}

TEST(Buckets, Boundaries) {
  EXPECT_EQ(bucket(1), ComplexityBucket::kShort);
  EXPECT_EQ(bucket(4), ComplexityBucket::kShort);
  EXPECT_EQ(bucket(5), ComplexityBucket::kMiddle);
  EXPECT_EQ(bucket(8), ComplexityBucket::kMiddle);
  EXPECT_EQ(bucket(9), ComplexityBucket::kLong);
  for (auto s : kAllSectors) EXPECT_EQ(sector_from_string(to_string(s)), s);
  for (auto b : kAllBuckets) EXPECT_EQ(bucket_from_string(to_string(b)), b);
  EXPECT_THROW(sector_from_string("Banking"), InvalidConfig);
}

TEST(Vqa, HandScored) {
  const std::vector<VqaJudgment> j = {
      {"3 items", "3 items"},          // exact: recall 1, acc 1
      {"there are 3 items", "3 items"},  // recall 1, acc 0
      {"Dr Chen", "dr  chen"},         // exact after normalization
      {"free", "free delivery"},       // recall 1/2
      {"", "at midnight"},             // recall 0
  };
  const VqaMetrics m = vqa_scores(j);
  EXPECT_DOUBLE_EQ(m.accuracy, 2.0 / 5.0);
  EXPECT_DOUBLE_EQ(m.recall, 3.5 / 5.0);
  EXPECT_DOUBLE_EQ(m.f_score, 2 * 0.7 * 0.4 / 1.1);
  EXPECT_THROW(vqa_scores({}), EmptyInput);
}

TEST(Vqa, RepeatedTokensClipped) {
  const std::vector<VqaJudgment> j = {{"no", "no no"}};
  EXPECT_DOUBLE_EQ(vqa_scores(j).recall, 0.5);
}

TEST(Vqa, AllExact) {
  const std::vector<VqaJudgment> j = {{"a", "a"}, {"b c", "B C"}};
  const VqaMetrics m = vqa_scores(j);
  EXPECT_EQ(m, (VqaMetrics{1, 1, 1}));
}

TEST(VqaProperty, FScoreOfEqualInputs) {
  EXPECT_EQ(f_score(0, 0), 0.0);
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    ASSERT_NEAR(f_score(x, x), x, 1e-15);
  }
}

TEST(MetricsProperty, AggregationOrderIndependent) {
  testing::Rng rng(54);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<IntentionOutcome> outcomes(1 + rng() % 50);
    for (auto& o : outcomes) o = testing::random_outcome(rng);
    EvaluationReport a, b;
    for (const auto& o : outcomes) a.add(o.sector, o.complexity(), tally(o));
    std::shuffle(outcomes.begin(), outcomes.end(), rng);
    for (const auto& o : outcomes) b.add(o.sector, o.complexity(), tally(o));
    ASSERT_EQ(a, b);
    ASSERT_TRUE(a.overall().is_consistent());
  }
}

}  // namespace
}  // namespace guibench
