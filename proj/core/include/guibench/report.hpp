#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "guibench/evaluation.hpp"
#include "guibench/taxonomy.hpp"

namespace guibench {

// Sector x complexity grid of counts. Every added cell is also folded into
// its sector's "All" row, its bucket's "All" column and the overall cell.
// Merging is commutative, so insertion order never affects the result.
class EvaluationReport {
 public:
  // nullopt stands for "All".
  using CellKey = std::pair<std::optional<Sector>, std::optional<ComplexityBucket>>;

  struct Row {
    std::string sector;  // sector name or "All"
    std::string bucket;  // bucket name or "All"
    MetricsCounts counts;
  };

  explicit EvaluationReport(std::string history_mode = "chained")
      : history_mode_(std::move(history_mode)) {}

  void add(Sector sector, ComplexityBucket bucket, const MetricsCounts& counts);
  void merge(const EvaluationReport& other);

  const std::string& history_mode() const noexcept { return history_mode_; }

  // Counts for a cell; zeros if nothing was added there.
  MetricsCounts cell(std::optional<Sector> sector, std::optional<ComplexityBucket> bucket) const;
  const MetricsCounts& overall() const;

  // Base (sector, bucket) cells only, in canonical order, non-empty ones.
  std::vector<std::pair<std::pair<Sector, ComplexityBucket>, MetricsCounts>> base_cells() const;

  // Every non-empty cell including the All aggregates, sector-major, with
  // the All sector last and the All bucket after Long.
  std::vector<Row> rows() const;

  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;

 private:
  static int sector_slot(std::optional<Sector> s);
  static int bucket_slot(std::optional<ComplexityBucket> b);

  std::string history_mode_;
  std::map<std::pair<int, int>, MetricsCounts> cells_;
};

// "0.8500", or "-" when the denominator is empty.
std::string format_rate(std::optional<double> rate);

std::optional<double> try_wtsr(const MetricsCounts& c);
std::optional<double> try_ssr(const MetricsCounts& c);
std::optional<double> try_edr(const MetricsCounts& c);

// Header `sector,bucket,wtsr,ssr,edr,n`, one row per non-empty cell, rates
// with four decimals. n counts intentions including timed-out ones.
std::string report_to_csv(const EvaluationReport& report);

// Aligned plain-text version of the same grid, headed by the history mode.
std::string report_to_text(const EvaluationReport& report);

}  // namespace guibench
