#include <gtest/gtest.h>

#include <set>

#include "guibench/episode_store.hpp"
#include "guibench/errors.hpp"
#include "test_support.hpp"

namespace guibench {
namespace {

using testing::TempDir;
using testing::write_file;

constexpr const char* kHeader = R"({"format":"guibench-dataset","version":1})";

std::string episode_line(const std::string& id, const std::string& steps_json,
                         const std::string& sector = "Gaming") {
  return R"({"type":"episode","id":")" + id + R"(","sector":")" + sector +
         R"(","instruction":"do it","steps":[)" + steps_json + "]}";
}

std::string step_json(int index, const std::string& gt, bool final,
                      const std::string& elements = R"([{"text":"OK","box":[0,0,10,10]}])") {
  return R"({"index":)" + std::to_string(index) +
         R"(,"screenshot":"s.png","width":100,"height":200,"elements":)" + elements +
         R"(,"ground_truth":)" + gt + R"(,"is_final":)" + (final ? "true" : "false") + "}";
}

constexpr const char* kClickGt = R"({"kind":"click","target_box":[0,0,10,10]})";
constexpr const char* kFinishGt = R"({"kind":"finish"})";

std::string two_step(const std::string& id) {
  return episode_line(id, step_json(0, kClickGt, false) + "," + step_json(1, kFinishGt, true));
}

TEST(LoadDataset, Fixture) {
  const Dataset ds = load_dataset(testing::fixture_dir(), {true});
  EXPECT_EQ(ds.episodes.size(), 12u);
  EXPECT_EQ(ds.vqa_items.size(), 5u);
  EXPECT_TRUE(ds.warnings.empty());
  std::set<std::pair<Sector, ComplexityBucket>> cells;
  std::set<Sector> sectors;
  std::set<ComplexityBucket> buckets;
  for (const auto& ep : ds.episodes) {
    sectors.insert(ep.sector);
    buckets.insert(ep.complexity());
    EXPECT_GE(ep.steps.size(), 2u);
    EXPECT_TRUE(std::filesystem::exists(ep.screenshot_path(ep.steps.front())));
  }
  EXPECT_EQ(sectors.size(), 6u);
  EXPECT_EQ(buckets.size(), 3u);
}

TEST(LoadDataset, FixtureCoversEveryGroundTruthKind) {
  const Dataset ds = load_dataset(testing::fixture_dir());
  std::set<ActionKind> kinds;
  for (const auto& ep : ds.episodes) {
    for (const auto& st : ep.steps) kinds.insert(st.ground_truth.kind);
  }
  // Answer only occurs in VQA items.
  EXPECT_EQ(kinds.size(), kActionKindCount - 1);
  EXPECT_FALSE(kinds.count(ActionKind::kAnswer));
}

TEST(LoadDataset, CanonicalRoundTrip) {
  TempDir dir;
  const Dataset ds = load_dataset(testing::fixture_dir());
  write_dataset(ds, dir / "copy.jsonl");
  const Dataset again = load_dataset(dir / "copy.jsonl");
  EXPECT_EQ(again, ds);
  EXPECT_EQ(dataset_to_jsonl(again), dataset_to_jsonl(ds));
  EXPECT_FALSE(again.warnings.empty());  // screenshots were not copied
}

TEST(LoadDataset, DirectoryReadsFilesInNameOrder) {
  TempDir dir;
  write_file(dir / "b.jsonl", std::string(kHeader) + "\n" + two_step("second") + "\n");
  write_file(dir / "a.jsonl", std::string(kHeader) + "\n\n" + two_step("first") + "\n");
  write_file(dir / "notes.txt", "ignored");
  const Dataset ds = load_dataset(dir.path());
  ASSERT_EQ(ds.episodes.size(), 2u);
  EXPECT_EQ(ds.episodes[0].id, "first");
  EXPECT_EQ(ds.episodes[1].id, "second");
}

struct BadCase {
  std::string name;
  std::string body;  // lines after the header
  std::size_t line;  // expected line for ParseError, 0 for InvariantViolation
};

TEST(LoadDataset, RejectsWithLocation) {
  const std::vector<BadCase> cases = {
      {"not json", "{oops", 2},
      {"unknown type", R"({"type":"movie","id":"x"})", 2},
      {"bad sector", episode_line("e", step_json(0, kFinishGt, true), "Banking"), 2},
      {"bad kind", episode_line("e", step_json(0, R"({"kind":"swipe"})", true)), 2},
      {"missing steps", R"({"type":"episode","id":"e","sector":"Gaming","instruction":"x"})", 2},
      {"box arity", episode_line("e", step_json(0, R"({"kind":"click","target_box":[1,2,3]})", true)), 2},
      {"gap in index", episode_line("e", step_json(0, kClickGt, false) + "," + step_json(2, kFinishGt, true)), 0},
      {"early final", episode_line("e", step_json(0, kClickGt, true) + "," + step_json(1, kFinishGt, true)), 0},
      {"no final", episode_line("e", step_json(0, kClickGt, false) + "," + step_json(1, kFinishGt, false)), 0},
      {"last not finish", episode_line("e", step_json(0, kFinishGt, false) + "," + step_json(1, kClickGt, true)), 0},
      {"box outside", episode_line("e", step_json(0, kFinishGt, true, R"([{"text":"x","box":[0,0,101,10]}])")), 0},
      {"inverted box", episode_line("e", step_json(0, kFinishGt, true, R"([{"text":"x","box":[5,0,1,10]}])")), 0},
      {"missing direction", episode_line("e", step_json(0, R"({"kind":"scroll","path_box":[0,0,5,5]})", false) + "," + step_json(1, kFinishGt, true)), 2},
      {"empty steps", episode_line("e", ""), 0},
      {"duplicate", two_step("e") + "\n" + two_step("e"), 0},
      {"empty answer", R"({"type":"vqa","id":"q","screenshot":"s.png","question":"?","reference_answer":" "})", 0},
  };
  for (const auto& c : cases) {
    TempDir dir;
    write_file(dir / "d.jsonl", std::string(kHeader) + "\n" + c.body + "\n");
    if (c.line == 0) {
      EXPECT_THROW(load_dataset(dir / "d.jsonl"), InvariantViolation) << c.name;
    } else {
      try {
        load_dataset(dir / "d.jsonl");
        ADD_FAILURE() << c.name << " was accepted";
      } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), c.line) << c.name;
        EXPECT_EQ(e.file(), (dir / "d.jsonl").string()) << c.name;
      }
    }
    const ValidationReport rep = validate_dataset(dir / "d.jsonl");
    EXPECT_FALSE(rep.ok()) << c.name;
  }
}

TEST(LoadDataset, HeaderRules) {
  TempDir dir;
  write_file(dir / "none.jsonl", two_step("e") + "\n");
  EXPECT_THROW(load_dataset(dir / "none.jsonl"), ParseError);
  write_file(dir / "v2.jsonl", R"({"format":"guibench-dataset","version":2})" "\n");
  EXPECT_THROW(load_dataset(dir / "v2.jsonl"), ParseError);
  write_file(dir / "empty.jsonl", "");
  EXPECT_THROW(load_dataset(dir / "empty.jsonl"), ParseError);
  EXPECT_THROW(load_dataset(dir / "absent.jsonl"), IoError);
}

TEST(LoadDataset, MissingScreenshotStrictness) {
  TempDir dir;
  write_file(dir / "d.jsonl", std::string(kHeader) + "\n" + two_step("e") + "\n");
  const Dataset lax = load_dataset(dir / "d.jsonl");
  EXPECT_EQ(lax.warnings.size(), 2u);
  EXPECT_THROW(load_dataset(dir / "d.jsonl", {true}), MissingScreenshot);
  write_file(dir / "s.png", "x");
  EXPECT_NO_THROW(load_dataset(dir / "d.jsonl", {true}));
}

TEST(ValidateDataset, CollectsEveryProblem) {
  TempDir dir;
  write_file(dir / "s.png", "x");
  write_file(dir / "d.jsonl", std::string(kHeader) + "\n" + two_step("ok") + "\n{bad\n" +
                                  episode_line("e", "") + "\n" + two_step("ok") + "\n");
  const ValidationReport rep = validate_dataset(dir / "d.jsonl");
  EXPECT_EQ(rep.errors.size(), 3u);
  EXPECT_EQ(rep.episodes, 1u);
  const std::string text = format_validation(rep);
  EXPECT_NE(text.find(":3:"), std::string::npos);
  EXPECT_EQ(text.substr(text.size() - 7), "FAILED\n");
}

TEST(Results, JsonRoundTrip) {
  EvaluationReport r("teacher_forced");
  r.add(Sector::kGaming, ComplexityBucket::kLong, {3, 1, 1, 1, 20, 15});
  r.add(Sector::kInsurance, ComplexityBucket::kShort, {2, 0, 2, 1, 5, 5});
  const std::string text = results_to_json(r);
  EXPECT_EQ(results_from_json(text), r);
  EXPECT_EQ(results_to_json(results_from_json(text)), text);
  TempDir dir;
  save_results(r, dir / "r.json");
  EXPECT_EQ(load_results(dir / "r.json"), r);
  EXPECT_THROW(results_from_json("{}"), IoError);
  EXPECT_THROW(results_from_json("nope"), IoError);
  EXPECT_THROW(load_results(dir / "missing.json"), IoError);
  EXPECT_THROW(
      results_from_json(R"({"format":"guibench-results","version":1,"history_mode":"chained","cells":[{"sector":"Gaming","bucket":"Long","counts":{"all_intentions":1,"timeout_intentions":0,"success_intentions":2,"success_terminal_intentions":0,"all_steps":1,"success_steps":1}}]})"),
      IoError);
}

}  // namespace
}  // namespace guibench
