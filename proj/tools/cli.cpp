#include "cli.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "guibench/config.hpp"
#include "guibench/episode_store.hpp"
#include "guibench/errors.hpp"
#include "guibench/kernels/self_check.hpp"
#include "guibench/model_client.hpp"
#include "guibench/patch_grid.hpp"
#include "guibench/report.hpp"
#include "guibench/runtime.hpp"

namespace guibench::cli {
namespace {

struct ClientOptions {
  std::string kind = "scripted";
  std::string transcript;
  std::string config;
};

struct RunOptions {
  std::string dataset;
  bool strict = false;
  std::optional<std::string> history_mode;
  std::optional<std::size_t> max_parallel;
};

void add_client_options(CLI::App* cmd, ClientOptions& c) {
  cmd->add_option("--client", c.kind, "Model client: scripted or endpoint")
      ->check(CLI::IsMember({"scripted", "endpoint"}));
  cmd->add_option("--transcript", c.transcript, "Scripted replies (JSON lines)");
  cmd->add_option("--config", c.config, "key = value configuration file");
}

void add_run_options(CLI::App* cmd, RunOptions& r) {
  cmd->add_option("--dataset", r.dataset, "Dataset file or directory")->required();
  cmd->add_flag("--strict", r.strict, "Treat missing screenshots as errors");
  cmd->add_option("--history-mode", r.history_mode, "chained or teacher_forced")
      ->check(CLI::IsMember({"chained", "teacher_forced"}));
  cmd->add_option("--max-parallel", r.max_parallel, "Episodes evaluated concurrently")
      ->check(CLI::PositiveNumber);
}

KeyValueConfig config_of(const ClientOptions& c) {
  return c.config.empty() ? KeyValueConfig{} : load_config_file(c.config);
}

RunConfig run_config_of(const KeyValueConfig& kv, const RunOptions& r) {
  RunConfig cfg = run_config_from(kv);
  if (r.history_mode) cfg.history_mode = history_mode_from_string(*r.history_mode);
  if (r.max_parallel) cfg.max_parallel = *r.max_parallel;
  cfg.validate();
  return cfg;
}

std::unique_ptr<ModelClient> make_client(const ClientOptions& c, const KeyValueConfig& kv) {
  if (c.kind == "scripted") {
    if (c.transcript.empty()) throw InvalidConfig("--client scripted needs --transcript");
    return std::make_unique<ScriptedClient>(ScriptedClient::from_file(c.transcript));
  }
  return std::make_unique<HttpModelClient>(endpoint_config_from(kv));
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << contents;
  if (!f.flush()) throw IoError("write failed: " + path);
}

void emit(const std::string& path, const std::string& contents, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << contents;
  } else {
    write_file(path, contents);
  }
}

Dataset load_for_run(const RunOptions& r, std::ostream& err) {
  LoadOptions opts;
  opts.strict = r.strict;
  Dataset ds = load_dataset(r.dataset, opts);
  for (const auto& w : ds.warnings) err << "warning: " << w << '\n';
  return ds;
}

std::string vqa_line(const VqaMetrics& m) {
  return "recall=" + format_rate(m.recall) + " accuracy=" + format_rate(m.accuracy) +
         " f_score=" + format_rate(m.f_score) + "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Offline evaluation harness for mobile GUI agents", "guibench"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Replay episodes against a model and score them");
  RunOptions eval_run;
  ClientOptions eval_client;
  std::string eval_out, eval_results, eval_text;
  add_run_options(evaluate, eval_run);
  add_client_options(evaluate, eval_client);
  evaluate->add_option("--out", eval_out, "CSV report path ('-' for stdout)");
  evaluate->add_option("--results", eval_results, "Machine-readable results (JSON) path");
  evaluate->add_option("--text", eval_text, "Plain-text table path ('-' for stdout)");

  // vqa
  auto* vqa = app.add_subcommand("vqa", "Score visual question answering items");
  RunOptions vqa_run;
  ClientOptions vqa_client;
  std::string vqa_out;
  add_run_options(vqa, vqa_run);
  add_client_options(vqa, vqa_client);
  vqa->add_option("--out", vqa_out, "Write the metrics line here instead of stdout");

  // validate-dataset
  auto* validate = app.add_subcommand("validate-dataset", "Check a dataset and count its episodes");
  std::string validate_path;
  bool validate_strict = false;
  validate->add_option("--dataset,dataset", validate_path, "Dataset file or directory")->required();
  validate->add_flag("--strict", validate_strict, "Treat missing screenshots as errors");

  // patch-grid
  auto* grid = app.add_subcommand("patch-grid", "Aspect-preserving patch grid for an image size");
  std::uint32_t grid_w = 0, grid_h = 0;
  PatchGridSpec grid_spec;
  grid->add_option("width", grid_w, "Image width in pixels")->required()->check(CLI::PositiveNumber);
  grid->add_option("height", grid_h, "Image height in pixels")->required()->check(CLI::PositiveNumber);
  grid->add_option("--budget", grid_spec.budget_tokens, "Token budget")->check(CLI::PositiveNumber);
  grid->add_option("--patch", grid_spec.patch_px, "Patch side in pixels")->check(CLI::PositiveNumber);
  bool grid_verbose = false;
  grid->add_flag("--verbose", grid_verbose, "Also print the resized image size");

  // report
  auto* report = app.add_subcommand("report", "Render a saved results file");
  std::string report_in, report_out, report_format = "text";
  report->add_option("--results", report_in, "Results JSON written by evaluate")->required();
  report->add_option("--format", report_format, "csv or text")->check(CLI::IsMember({"csv", "text"}));
  report->add_option("--out", report_out, "Output path ('-' for stdout)");

  // kernels
  auto* kernels = app.add_subcommand("kernels", "Self-check the reference numeric kernels");
  std::uint64_t kernels_seed = 7;
  std::size_t kernels_trials = 50;
  kernels->add_option("--seed", kernels_seed, "Random seed");
  kernels->add_option("--trials", kernels_trials, "Random trials per check")->check(CLI::PositiveNumber);

  // synth-transcript
  auto* synth = app.add_subcommand("synth-transcript", "Write scripted replies for a dataset");
  std::string synth_dataset, synth_out, synth_policy = "oracle";
  synth->add_option("--dataset", synth_dataset, "Dataset file or directory")->required();
  synth->add_option("--policy", synth_policy, "oracle or wait")->check(CLI::IsMember({"oracle", "wait"}));
  synth->add_option("--out", synth_out, "Transcript path ('-' for stdout)");

  std::vector<const char*> argv{"guibench"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitUsage;
  }

  try {
    if (*evaluate) {
      const KeyValueConfig kv = config_of(eval_client);
      const RunConfig cfg = run_config_of(kv, eval_run);
      const Dataset ds = load_for_run(eval_run, err);
      auto client = make_client(eval_client, kv);
      const SuiteResult result = run_suite(ds, *client, cfg);
      if (!eval_results.empty()) save_results(result.report, eval_results);
      if (!eval_text.empty()) emit(eval_text, report_to_text(result.report), out);
      if (!eval_out.empty() || eval_text.empty()) emit(eval_out, report_to_csv(result.report), out);
      return kExitOk;
    }
    if (*vqa) {
      const KeyValueConfig kv = config_of(vqa_client);
      const RunConfig cfg = run_config_of(kv, vqa_run);
      const Dataset ds = load_for_run(vqa_run, err);
      auto client = make_client(vqa_client, kv);
      const VqaRun run = run_vqa_suite(ds.vqa_items, *client, cfg);
      emit(vqa_out, vqa_line(run.metrics), out);
      return kExitOk;
    }
    if (*validate) {
      LoadOptions opts;
      opts.strict = validate_strict;
      const ValidationReport rep = validate_dataset(validate_path, opts);
      out << format_validation(rep);
      return rep.ok() ? kExitOk : kExitFailure;
    }
    if (*grid) {
      const PatchGrid g = compute_grid(grid_w, grid_h, grid_spec);
      out << format_grid(g);
      if (grid_verbose) out << " resized=" << g.resized_w << "x" << g.resized_h;
      out << '\n';
      return kExitOk;
    }
    if (*report) {
      const EvaluationReport rep = load_results(report_in);
      emit(report_out, report_format == "csv" ? report_to_csv(rep) : report_to_text(rep), out);
      return kExitOk;
    }
    if (*kernels) {
      bool all = true;
      for (const auto& r : kernels::run_self_check(kernels_seed, kernels_trials)) {
        out << (r.passed ? "[ok]   " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
        all = all && r.passed;
      }
      return all ? kExitOk : kExitFailure;
    }
    if (*synth) {
      const Dataset ds = load_dataset(synth_dataset);
      const auto policy = synth_policy == "oracle" ? ScriptPolicy::kOracle : ScriptPolicy::kAlwaysWait;
      emit(synth_out, make_scripted_client(ds, policy).to_jsonl(), out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace guibench::cli
