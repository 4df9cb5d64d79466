#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "guibench/cot_protocol.hpp"
#include "guibench/episode_store.hpp"
#include "guibench/evaluation.hpp"
#include "guibench/model_client.hpp"
#include "guibench/report.hpp"

namespace guibench {

enum class HistoryMode {
  // History is the model's own previous summaries.
  kChained,
  // History is the rendered ground-truth action of every previous step, so
  // each step's verdict depends only on that step's reply.
  kTeacherForced,
};

std::string_view to_string(HistoryMode m) noexcept;
HistoryMode history_mode_from_string(std::string_view s);

struct RunConfig {
  HistoryMode history_mode = HistoryMode::kChained;
  double step_timeout_seconds = 60.0;
  unsigned retries = 2;
  std::size_t max_parallel = 1;
  MatchConfig match;

  // Throws InvalidConfig.
  void validate() const;
};

struct TranscriptEntry {
  std::size_t step = 0;
  std::string prompt;
  std::string raw_response;
  std::optional<CotResponse> parsed;
  std::string error;  // parse or client failure text
};

struct IntentionOutcome {
  std::string episode_id;
  Sector sector = Sector::kOther;
  std::size_t recorded_steps = 0;
  std::vector<StepVerdict> step_verdicts;
  // Every step before the final one matched.
  bool task_ok = false;
  // task_ok and the final step was answered with FINISH.
  bool terminal_ok = false;
  // A client call ran out of retries; the intention is excluded from rates.
  bool timed_out = false;
  std::vector<TranscriptEntry> transcript;

  ComplexityBucket complexity() const noexcept { return bucket(recorded_steps); }
};

// Contribution of one intention to the counts. Timed-out intentions add only
// to all_intentions and timeout_intentions.
MetricsCounts tally(const IntentionOutcome& outcome);

// Replays the recorded trajectory step by step. A mismatched step still
// advances to the next recorded page. Never throws for model failures.
IntentionOutcome run_episode(const Episode& episode, ModelClient& client, const RunConfig& cfg);

struct SuiteResult {
  EvaluationReport report;
  std::vector<IntentionOutcome> outcomes;  // dataset order
};

// Runs episodes on up to cfg.max_parallel threads and aggregates in dataset
// order, so a deterministic client yields identical results at any
// parallelism. Throws EmptyDataset.
SuiteResult run_suite(const Dataset& dataset, ModelClient& client, const RunConfig& cfg);

struct VqaRun {
  VqaMetrics metrics;
  std::vector<VqaJudgment> judgments;
  std::vector<TranscriptEntry> transcript;
};

// The question becomes the prompt's task; the reply's ANSWER text is scored.
// Any other reply (or a failed call) counts as an empty prediction.
// Throws EmptyInput.
VqaRun run_vqa_suite(std::span<const VqaItem> items, ModelClient& client, const RunConfig& cfg);

enum class ScriptPolicy {
  kOracle,      // replies with the ground-truth action / reference answer
  kAlwaysWait,  // replies WAIT(1000) everywhere
};

// Canned four-section replies for every episode step and VQA item.
ScriptedClient make_scripted_client(const Dataset& dataset, ScriptPolicy policy,
                                    const MatchConfig& match = {});

// Sends one request with cfg.retries extra attempts after a timeout or
// transport failure. Rethrows the last failure.
std::string complete_with_retries(ModelClient& client, const ModelRequest& request,
                                  const RunConfig& cfg);

}  // namespace guibench
