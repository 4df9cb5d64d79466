#include "guibench/runtime.hpp"

#include <atomic>
#include <exception>
#include <fstream>
#include <iterator>
#include <mutex>
#include <thread>

#include "guibench/errors.hpp"

namespace guibench {
namespace {

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

std::string_view to_string(HistoryMode m) noexcept {
  return m == HistoryMode::kChained ? "chained" : "teacher_forced";
}

HistoryMode history_mode_from_string(std::string_view s) {
  if (s == "chained") return HistoryMode::kChained;
  if (s == "teacher_forced") return HistoryMode::kTeacherForced;
  throw InvalidConfig("unknown history mode '" + std::string(s) +
                      "' (expected chained or teacher_forced)");
}

void RunConfig::validate() const {
  if (!(step_timeout_seconds > 0)) throw InvalidConfig("step timeout must be positive");
  if (max_parallel < 1) throw InvalidConfig("max_parallel must be at least 1");
  if (!(match.iou_threshold >= 0 && match.iou_threshold <= 1)) {
    throw InvalidConfig("iou_threshold must lie in [0, 1]");
  }
  if (!(match.point_box_px > 0)) throw InvalidConfig("point_box_px must be positive");
}

std::string complete_with_retries(ModelClient& client, const ModelRequest& request,
                                  const RunConfig& cfg) {
  for (unsigned attempt = 0;; ++attempt) {
    try {
      return client.complete(request);
    } catch (const ClientTimeout&) {
      if (attempt >= cfg.retries) throw;
    } catch (const TransportError&) {
      if (attempt >= cfg.retries) throw;
    }
  }
}

MetricsCounts tally(const IntentionOutcome& outcome) {
  MetricsCounts c;
  c.all_intentions = 1;
  if (outcome.timed_out) {
    c.timeout_intentions = 1;
    return c;
  }
  c.success_intentions = outcome.task_ok ? 1 : 0;
  c.success_terminal_intentions = outcome.terminal_ok ? 1 : 0;
  c.all_steps = outcome.step_verdicts.size();
  for (const auto& v : outcome.step_verdicts) c.success_steps += v.matched ? 1 : 0;
  return c;
}

IntentionOutcome run_episode(const Episode& episode, ModelClient& client, const RunConfig& cfg) {
  IntentionOutcome out;
  out.episode_id = episode.id;
  out.sector = episode.sector;
  out.recorded_steps = episode.steps.size();

  std::vector<std::string> history;
  for (const Step& step : episode.steps) {
    PromptInput input;
    input.image_ref = step.screenshot;
    input.task = episode.instruction;
    input.elements = step.elements;
    input.history = history;

    TranscriptEntry entry;
    entry.step = step.index;
    entry.prompt = build_prompt(input);

    ModelRequest request;
    request.prompt = entry.prompt;
    request.image_bytes = read_bytes(episode.screenshot_path(step));
    request.episode_id = episode.id;
    request.step_index = step.index;
    request.timeout_seconds = cfg.step_timeout_seconds;

    try {
      entry.raw_response = complete_with_retries(client, request, cfg);
    } catch (const Error& e) {
      entry.error = e.what();
      out.transcript.push_back(std::move(entry));
      out.timed_out = true;
      return out;
    }

    StepVerdict verdict = StepVerdict::fail(VerdictReason::kParseError);
    try {
      CotResponse parsed = parse_response(entry.raw_response);
      verdict = match_step(parsed.action, step.ground_truth, cfg.match);
      if (cfg.history_mode == HistoryMode::kChained) history.push_back(parsed.summary);
      entry.parsed = std::move(parsed);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    if (cfg.history_mode == HistoryMode::kTeacherForced) {
      history.push_back(render_action(synthesize_action(step.ground_truth, cfg.match)));
    }
    out.step_verdicts.push_back(verdict);
    out.transcript.push_back(std::move(entry));
  }

  bool ok = true;
  for (std::size_t i = 0; i + 1 < out.step_verdicts.size(); ++i) ok = ok && out.step_verdicts[i].matched;
  out.task_ok = ok;
  out.terminal_ok = ok && out.step_verdicts.back().matched;
  return out;
}

SuiteResult run_suite(const Dataset& dataset, ModelClient& client, const RunConfig& cfg) {
  cfg.validate();
  if (dataset.episodes.empty()) throw EmptyDataset("dataset has no episodes");

  const std::size_t n = dataset.episodes.size();
  std::vector<IntentionOutcome> outcomes(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        outcomes[i] = run_episode(dataset.episodes[i], client, cfg);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::min(cfg.max_parallel, n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SuiteResult result{EvaluationReport(std::string(to_string(cfg.history_mode))), {}};
  for (const auto& o : outcomes) result.report.add(o.sector, o.complexity(), tally(o));
  result.outcomes = std::move(outcomes);
  return result;
}

VqaRun run_vqa_suite(std::span<const VqaItem> items, ModelClient& client, const RunConfig& cfg) {
  cfg.validate();
  if (items.empty()) throw EmptyInput("no VQA items to evaluate");

  VqaRun run;
  for (const VqaItem& item : items) {
    PromptInput input;
    input.image_ref = item.screenshot;
    input.task = item.question;

    TranscriptEntry entry;
    entry.prompt = build_prompt(input);

    ModelRequest request;
    request.prompt = entry.prompt;
    request.image_bytes = read_bytes(item.screenshot_path());
    request.episode_id = item.id;
    request.step_index = 0;
    request.timeout_seconds = cfg.step_timeout_seconds;

    std::string prediction;
    try {
      entry.raw_response = complete_with_retries(client, request, cfg);
      CotResponse parsed = parse_response(entry.raw_response);
      if (const auto* a = std::get_if<Answer>(&parsed.action)) prediction = a->text;
      entry.parsed = std::move(parsed);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    run.judgments.push_back({prediction, item.reference_answer});
    run.transcript.push_back(std::move(entry));
  }
  run.metrics = vqa_scores(run.judgments);
  return run;
}

ScriptedClient make_scripted_client(const Dataset& dataset, ScriptPolicy policy,
                                    const MatchConfig& match) {
  auto reply = [](const std::string& observation, const Action& action,
                  const std::string& summary) {
    CotResponse r;
    r.observation = observation;
    r.reasoning = "Choose the control that advances the task.";
    r.action_text = render_action(action);
    r.summary = summary;
    r.action = action;
    return serialize_response(r);
  };

  ScriptedClient client;
  for (const auto& ep : dataset.episodes) {
    for (const auto& step : ep.steps) {
      const Action action = policy == ScriptPolicy::kOracle
                                ? synthesize_action(step.ground_truth, match)
                                : Action{Wait{1000}};
      const std::string obs = "The page shows " + std::to_string(step.elements.size()) +
                              " controls.";
      const std::string summary = "Completed step " + std::to_string(step.index + 1) + " of '" +
                                  ep.instruction + "'.";
      client.set(ep.id, step.index, {ScriptedClient::Outcome::kResponse, reply(obs, action, summary)});
    }
  }
  for (const auto& item : dataset.vqa_items) {
    const Action action = policy == ScriptPolicy::kOracle ? Action{Answer{item.reference_answer}}
                                                          : Action{Wait{1000}};
    client.set(item.id, 0,
               {ScriptedClient::Outcome::kResponse,
                reply("The page answers the question.", action, "Answered the question.")});
  }
  return client;
}

}  // namespace guibench
