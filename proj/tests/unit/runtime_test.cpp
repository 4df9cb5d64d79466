#include <gtest/gtest.h>

#include <atomic>
#include <mutex>

#include "guibench/episode_store.hpp"
#include "guibench/errors.hpp"
#include "guibench/runtime.hpp"
#include "test_support.hpp"

namespace guibench {
namespace {

const Dataset& fixture() {
  static const Dataset ds = load_dataset(testing::fixture_dir(), {true});
  return ds;
}

std::string reply(const std::string& action, const std::string& summary = "Did a thing.") {
  return "<observation>: page\n<reasoning>: because\n<action>: " + action + "\n<summary>: " +
         summary + "\n";
}

TEST(RunEpisode, OracleSucceedsEverywhere) {
  ScriptedClient client = make_scripted_client(fixture(), ScriptPolicy::kOracle);
  for (const auto& ep : fixture().episodes) {
    const IntentionOutcome o = run_episode(ep, client, {});
    EXPECT_TRUE(o.task_ok) << ep.id;
    EXPECT_TRUE(o.terminal_ok) << ep.id;
    EXPECT_FALSE(o.timed_out);
    EXPECT_EQ(o.step_verdicts.size(), ep.steps.size());
    EXPECT_EQ(o.transcript.size(), ep.steps.size());
  }
}

TEST(RunEpisode, AlwaysFinishOnlyHitsLastStep) {
  FunctionClient client([](const ModelRequest&) { return reply("Finish"); });
  const Episode& ep = fixture().episodes.front();
  const IntentionOutcome o = run_episode(ep, client, {});
  EXPECT_FALSE(o.task_ok);
  EXPECT_FALSE(o.terminal_ok);
  EXPECT_EQ(o.step_verdicts.back(), StepVerdict::ok());
  EXPECT_EQ(o.step_verdicts.front().reason, VerdictReason::kTypeMismatch);
  const MetricsCounts c = tally(o);
  EXPECT_EQ(c.all_steps, ep.steps.size());
  EXPECT_EQ(c.success_steps, 1u);
}

// Right on every step except FINISH: a task success that never terminates.
TEST(RunEpisode, MissedTerminationCountsForWtsrOnly) {
  ScriptedClient oracle = make_scripted_client(fixture(), ScriptPolicy::kOracle);
  FunctionClient client([&](const ModelRequest& r) {
    const std::string text = oracle.complete(r);
    return text.find("FINISH") != std::string::npos ? reply("WAIT(100)") : text;
  });
  const IntentionOutcome o = run_episode(fixture().episodes[0], client, {});
  EXPECT_TRUE(o.task_ok);
  EXPECT_FALSE(o.terminal_ok);
}

TEST(RunEpisode, ParseErrorIsAFailedStep) {
  FunctionClient client([](const ModelRequest& r) {
    return r.step_index == 0 ? std::string("gibberish") : reply("FINISH");
  });
  const IntentionOutcome o = run_episode(fixture().episodes[0], client, {});
  EXPECT_EQ(o.step_verdicts[0].reason, VerdictReason::kParseError);
  EXPECT_FALSE(o.transcript[0].error.empty());
  EXPECT_FALSE(o.transcript[0].parsed.has_value());
  EXPECT_FALSE(o.timed_out);
}

TEST(RunEpisode, RequestContents) {
  std::vector<ModelRequest> seen;
  FunctionClient client([&](const ModelRequest& r) {
    seen.push_back(r);
    return reply("FINISH");
  });
  RunConfig cfg;
  cfg.step_timeout_seconds = 7;
  const Episode& ep = fixture().episodes[0];
  run_episode(ep, client, cfg);
  ASSERT_EQ(seen.size(), ep.steps.size());
  EXPECT_EQ(seen[1].episode_id, ep.id);
  EXPECT_EQ(seen[1].step_index, 1u);
  EXPECT_EQ(seen[1].timeout_seconds, 7);
  EXPECT_EQ(seen[1].image_bytes, testing::read_file(ep.screenshot_path(ep.steps[1])));
  EXPECT_NE(seen[1].prompt.find("<task> " + ep.instruction + " </task>"), std::string::npos);
  EXPECT_NE(seen[1].prompt.find("<img> " + ep.steps[1].screenshot + " </img>"),
            std::string::npos);
}

TEST(RunEpisode, ChainedHistoryUsesSummaries) {
  std::vector<std::string> prompts;
  FunctionClient client([&](const ModelRequest& r) {
    prompts.push_back(r.prompt);
    return reply("WAIT(5)", "summary " + std::to_string(r.step_index));
  });
  run_episode(fixture().episodes[1], client, {});
  EXPECT_NE(prompts[0].find("<history> None \n"), std::string::npos);
  EXPECT_NE(prompts[2].find("<history> summary 0\nsummary 1 \n"), std::string::npos);
}

TEST(RunEpisode, TeacherForcedPromptsIgnoreReplies) {
  RunConfig cfg;
  cfg.history_mode = HistoryMode::kTeacherForced;
  auto prompts_with = [&](ScriptPolicy policy) {
    ScriptedClient inner = make_scripted_client(fixture(), policy);
    std::vector<std::string> prompts;
    FunctionClient client([&](const ModelRequest& r) {
      prompts.push_back(r.prompt);
      return inner.complete(r);
    });
    run_episode(fixture().episodes[1], client, cfg);
    return prompts;
  };
  const auto a = prompts_with(ScriptPolicy::kOracle);
  const auto b = prompts_with(ScriptPolicy::kAlwaysWait);
  EXPECT_EQ(a, b);
  const auto& gt = fixture().episodes[1].steps[0].ground_truth;
  EXPECT_NE(a[1].find("<history> " + render_action(synthesize_action(gt)) + " \n"),
            std::string::npos);
}

TEST(RunEpisode, TeacherForcedVerdictsArePerStep) {
  // Step 1 wrong; the rest must be judged exactly as in an all-correct run.
  RunConfig cfg;
  cfg.history_mode = HistoryMode::kTeacherForced;
  ScriptedClient oracle = make_scripted_client(fixture(), ScriptPolicy::kOracle);
  FunctionClient client([&](const ModelRequest& r) {
    return r.step_index == 1 ? reply("ANSWER(\"no\")") : oracle.complete(r);
  });
  const IntentionOutcome o = run_episode(fixture().episodes[1], client, cfg);
  for (std::size_t i = 0; i < o.step_verdicts.size(); ++i) {
    EXPECT_EQ(o.step_verdicts[i].matched, i != 1) << i;
  }
  EXPECT_FALSE(o.task_ok);
}

TEST(RunEpisode, TimeoutAfterRetries) {
  std::atomic<int> calls{0};
  FunctionClient client([&](const ModelRequest& r) -> std::string {
    ++calls;
    if (r.step_index == 1) throw ClientTimeout("slow");
    return reply("FINISH");
  });
  RunConfig cfg;
  cfg.retries = 3;
  const IntentionOutcome o = run_episode(fixture().episodes[1], client, cfg);
  EXPECT_TRUE(o.timed_out);
  EXPECT_EQ(calls.load(), 1 + 4);
  EXPECT_EQ(o.transcript.size(), 2u);
  EXPECT_EQ(tally(o), (MetricsCounts{1, 1, 0, 0, 0, 0}));
}

TEST(CompleteWithRetries, RecoversAfterTransientFailures) {
  int calls = 0;
  FunctionClient client([&](const ModelRequest&) -> std::string {
    if (++calls < 3) throw TransportError("flaky");
    return "ok";
  });
  RunConfig cfg;
  cfg.retries = 2;
  EXPECT_EQ(complete_with_retries(client, {}, cfg), "ok");
  calls = 0;
  cfg.retries = 1;
  EXPECT_THROW(complete_with_retries(client, {}, cfg), TransportError);
}

TEST(RunSuite, DeterministicAcrossParallelism) {
  // Deterministic but imperfect: fails steps whose index is divisible by 3.
  ScriptedClient oracle = make_scripted_client(fixture(), ScriptPolicy::kOracle);
  FunctionClient client([&](const ModelRequest& r) -> std::string {
    if (r.episode_id == "ms-02" && r.step_index == 2) throw ClientTimeout("x");
    return r.step_index % 3 == 2 ? reply("WAIT(9)") : oracle.complete(r);
  });
  RunConfig cfg;
  cfg.retries = 0;
  const SuiteResult serial = run_suite(fixture(), client, cfg);
  for (std::size_t p : {2u, 5u, 32u}) {
    cfg.max_parallel = p;
    const SuiteResult par = run_suite(fixture(), client, cfg);
    EXPECT_EQ(par.report, serial.report);
    EXPECT_EQ(results_to_json(par.report), results_to_json(serial.report));
    ASSERT_EQ(par.outcomes.size(), serial.outcomes.size());
    for (std::size_t i = 0; i < par.outcomes.size(); ++i) {
      EXPECT_EQ(par.outcomes[i].episode_id, fixture().episodes[i].id);
      EXPECT_EQ(par.outcomes[i].step_verdicts, serial.outcomes[i].step_verdicts);
    }
  }
  EXPECT_EQ(serial.report.overall().timeout_intentions, 1u);
}

TEST(RunSuite, TimeoutsLeaveRatesOfOthersAlone) {
  ScriptedClient client = make_scripted_client(fixture(), ScriptPolicy::kOracle);
  client.set("fd-02", 4, {ScriptedClient::Outcome::kTimeout, {}});
  client.set("gm-02", 0, {ScriptedClient::Outcome::kTransportError, {}});
  const SuiteResult r = run_suite(fixture(), client, {});
  const MetricsCounts all = r.report.overall();
  EXPECT_EQ(all.all_intentions, 12u);
  EXPECT_EQ(all.timeout_intentions, 2u);
  EXPECT_DOUBLE_EQ(wtsr(all), 1.0);
  EXPECT_DOUBLE_EQ(ssr(all), 1.0);
  EXPECT_DOUBLE_EQ(edr(all), 1.0);
  const MetricsCounts fd_long = r.report.cell(Sector::kFoodDelivery, ComplexityBucket::kLong);
  EXPECT_EQ(fd_long, (MetricsCounts{1, 1, 0, 0, 0, 0}));
}

TEST(RunSuite, Errors) {
  FunctionClient client([](const ModelRequest&) { return std::string(); });
  EXPECT_THROW(run_suite(Dataset{}, client, {}), EmptyDataset);
  RunConfig bad;
  bad.max_parallel = 0;
  EXPECT_THROW(run_suite(fixture(), client, bad), InvalidConfig);
  bad = {};
  bad.match.iou_threshold = 1.5;
  EXPECT_THROW(bad.validate(), InvalidConfig);
}

TEST(RunVqa, OracleAndWait) {
  ScriptedClient oracle = make_scripted_client(fixture(), ScriptPolicy::kOracle);
  const VqaRun good = run_vqa_suite(fixture().vqa_items, oracle, {});
  EXPECT_EQ(good.metrics, (VqaMetrics{1, 1, 1}));
  ScriptedClient wait = make_scripted_client(fixture(), ScriptPolicy::kAlwaysWait);
  const VqaRun bad = run_vqa_suite(fixture().vqa_items, wait, {});
  EXPECT_EQ(bad.metrics, (VqaMetrics{0, 0, 0}));
  EXPECT_NE(good.transcript[0].prompt.find("<task> " + fixture().vqa_items[0].question),
            std::string::npos);
  EXPECT_THROW(run_vqa_suite({}, oracle, {}), EmptyInput);
}

TEST(ScriptedClient, JsonlRoundTripAndOutcomes) {
  const std::string text =
      R"({"episode_id":"a","step":0,"response":"hi"})" "\n"
      R"({"episode_id":"a","step":1,"timeout":true})" "\n\n"
      R"({"episode_id":"b","step":0,"transport_error":true})" "\n";
  ScriptedClient c = ScriptedClient::from_jsonl(text);
  EXPECT_EQ(c.to_jsonl(), text.substr(0, text.find("\n\n") + 1) + text.substr(text.find("\n\n") + 2));
  ModelRequest r;
  r.episode_id = "a";
  EXPECT_EQ(c.complete(r), "hi");
  r.step_index = 1;
  EXPECT_THROW(c.complete(r), ClientTimeout);
  r.episode_id = "b";
  r.step_index = 0;
  EXPECT_THROW(c.complete(r), TransportError);
  r.episode_id = "zzz";
  EXPECT_THROW(c.complete(r), TransportError);
}

TEST(ScriptedClient, RejectsBadLines) {
  EXPECT_THROW(ScriptedClient::from_jsonl("{\"step\":0}"), ParseError);
  EXPECT_THROW(ScriptedClient::from_jsonl("not json"), ParseError);
  try {
    ScriptedClient::from_jsonl(
        "{\"episode_id\":\"a\",\"step\":0,\"response\":\"x\"}\n"
        "{\"episode_id\":\"a\",\"step\":0,\"response\":\"y\"}\n",
        "t.jsonl");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.file(), "t.jsonl");
  }
  EXPECT_THROW(ScriptedClient::from_file("/nonexistent/t.jsonl"), IoError);
}

}  // namespace
}  // namespace guibench
