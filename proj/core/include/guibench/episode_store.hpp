#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "guibench/evaluation.hpp"
#include "guibench/geometry.hpp"
#include "guibench/report.hpp"
#include "guibench/taxonomy.hpp"

namespace guibench {

struct Step {
  std::size_t index = 0;
  std::string screenshot;  // relative to the dataset file's directory
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::vector<UiElement> elements;
  GroundTruth ground_truth;
  bool is_final = false;

  friend bool operator==(const Step&, const Step&) = default;
};

struct Episode {
  std::string id;
  Sector sector = Sector::kOther;
  std::string instruction;
  std::vector<Step> steps;
  // Directory screenshots are resolved against. Not part of equality.
  std::filesystem::path base_dir;

  ComplexityBucket complexity() const noexcept { return bucket(steps.size()); }
  std::filesystem::path screenshot_path(const Step& s) const { return base_dir / s.screenshot; }

  friend bool operator==(const Episode& a, const Episode& b) {
    return a.id == b.id && a.sector == b.sector && a.instruction == b.instruction &&
           a.steps == b.steps;
  }
};

struct VqaItem {
  std::string id;
  std::string screenshot;
  std::string question;
  std::string reference_answer;
  std::filesystem::path base_dir;

  std::filesystem::path screenshot_path() const { return base_dir / screenshot; }

  friend bool operator==(const VqaItem& a, const VqaItem& b) {
    return a.id == b.id && a.screenshot == b.screenshot && a.question == b.question &&
           a.reference_answer == b.reference_answer;
  }
};

struct Dataset {
  std::vector<Episode> episodes;
  std::vector<VqaItem> vqa_items;
  std::vector<std::string> warnings;  // missing screenshots in non-strict mode

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.episodes == b.episodes && a.vqa_items == b.vqa_items;
  }
};

struct LoadOptions {
  // Missing screenshot files become errors instead of warnings.
  bool strict = false;
};

inline constexpr int kDatasetFormatVersion = 1;
inline constexpr int kResultsFormatVersion = 1;

// Loads one .jsonl file, or every *.jsonl file of a directory in name order.
// See docs/dataset_format.md. Throws ParseError, InvariantViolation,
// MissingScreenshot (strict mode) or IoError on the first problem.
Dataset load_dataset(const std::filesystem::path& path, const LoadOptions& options = {});

struct ValidationReport {
  std::map<std::pair<Sector, ComplexityBucket>, std::size_t> episode_counts;
  std::size_t episodes = 0;
  std::size_t vqa_items = 0;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return errors.empty(); }
};

// Like load_dataset but keeps going, collecting every problem.
ValidationReport validate_dataset(const std::filesystem::path& path,
                                  const LoadOptions& options = {});

std::string format_validation(const ValidationReport& report);

// Canonical JSONL form of a dataset; load(write(d)) == d.
std::string dataset_to_jsonl(const Dataset& dataset);
void write_dataset(const Dataset& dataset, const std::filesystem::path& file);

// Results are stored as JSON with base cells only; aggregates are rebuilt on
// load. Output bytes depend only on the report contents.
std::string results_to_json(const EvaluationReport& report);
EvaluationReport results_from_json(const std::string& text);
// Throws IoError.
void save_results(const EvaluationReport& report, const std::filesystem::path& path);
EvaluationReport load_results(const std::filesystem::path& path);

}  // namespace guibench
