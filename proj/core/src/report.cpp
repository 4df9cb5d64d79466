#include "guibench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "guibench/errors.hpp"

namespace guibench {
namespace {

constexpr int kAllSlot = 100;

std::string slot_sector_name(int slot) {
  return slot == kAllSlot ? "All" : std::string(to_string(static_cast<Sector>(slot)));
}

std::string slot_bucket_name(int slot) {
  return slot == kAllSlot ? "All" : std::string(to_string(static_cast<ComplexityBucket>(slot)));
}

template <typename F>
std::optional<double> guarded(F&& f, const MetricsCounts& c) {
  try {
    return f(c);
  } catch (const EmptyDenominator&) {
    return std::nullopt;
  }
}

}  // namespace

int EvaluationReport::sector_slot(std::optional<Sector> s) {
  return s ? static_cast<int>(*s) : kAllSlot;
}

int EvaluationReport::bucket_slot(std::optional<ComplexityBucket> b) {
  return b ? static_cast<int>(*b) : kAllSlot;
}

void EvaluationReport::add(Sector sector, ComplexityBucket bucket, const MetricsCounts& counts) {
  const int s = sector_slot(sector);
  const int b = bucket_slot(bucket);
  cells_[{s, b}] += counts;
  cells_[{s, kAllSlot}] += counts;
  cells_[{kAllSlot, b}] += counts;
  cells_[{kAllSlot, kAllSlot}] += counts;
}

void EvaluationReport::merge(const EvaluationReport& other) {
  for (const auto& [key, counts] : other.cells_) cells_[key] += counts;
}

MetricsCounts EvaluationReport::cell(std::optional<Sector> sector,
                                     std::optional<ComplexityBucket> bucket) const {
  auto it = cells_.find({sector_slot(sector), bucket_slot(bucket)});
  return it == cells_.end() ? MetricsCounts{} : it->second;
}

const MetricsCounts& EvaluationReport::overall() const {
  static const MetricsCounts kEmpty{};
  auto it = cells_.find({kAllSlot, kAllSlot});
  return it == cells_.end() ? kEmpty : it->second;
}

std::vector<std::pair<std::pair<Sector, ComplexityBucket>, MetricsCounts>>
EvaluationReport::base_cells() const {
  std::vector<std::pair<std::pair<Sector, ComplexityBucket>, MetricsCounts>> out;
  for (const auto& [key, counts] : cells_) {
    if (key.first == kAllSlot || key.second == kAllSlot) continue;
    if (counts == MetricsCounts{}) continue;
    out.push_back({{static_cast<Sector>(key.first), static_cast<ComplexityBucket>(key.second)},
                   counts});
  }
  return out;
}

std::vector<EvaluationReport::Row> EvaluationReport::rows() const {
  std::vector<Row> out;
  for (const auto& [key, counts] : cells_) {
    if (counts.all_intentions == 0) continue;
    out.push_back({slot_sector_name(key.first), slot_bucket_name(key.second), counts});
  }
  return out;
}

std::optional<double> try_wtsr(const MetricsCounts& c) { return guarded(wtsr, c); }
std::optional<double> try_ssr(const MetricsCounts& c) { return guarded(ssr, c); }
std::optional<double> try_edr(const MetricsCounts& c) { return guarded(edr, c); }

std::string format_rate(std::optional<double> rate) {
  if (!rate) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", *rate);
  return buf;
}

std::string report_to_csv(const EvaluationReport& report) {
  std::string out = "sector,bucket,wtsr,ssr,edr,n\n";
  for (const auto& row : report.rows()) {
    out += row.sector + ',' + row.bucket + ',' + format_rate(try_wtsr(row.counts)) + ',' +
           format_rate(try_ssr(row.counts)) + ',' + format_rate(try_edr(row.counts)) + ',' +
           std::to_string(row.counts.all_intentions) + '\n';
  }
  return out;
}

std::string report_to_text(const EvaluationReport& report) {
  const std::vector<std::string> header = {"sector", "bucket", "WTSR", "SSR", "EDR", "n"};
  std::vector<std::vector<std::string>> table = {header};
  for (const auto& row : report.rows()) {
    table.push_back({row.sector, row.bucket, format_rate(try_wtsr(row.counts)),
                     format_rate(try_ssr(row.counts)), format_rate(try_edr(row.counts)),
                     std::to_string(row.counts.all_intentions)});
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& r : table) {
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }

  std::ostringstream out;
  out << "history mode: " << report.history_mode() << '\n';
  for (std::size_t ri = 0; ri < table.size(); ++ri) {
    const auto& r = table[ri];
    for (std::size_t i = 0; i < r.size(); ++i) {
      // Names left-aligned, numbers right-aligned.
      const std::size_t pad = width[i] - r[i].size();
      if (i < 2) {
        out << r[i] << std::string(pad, ' ');
      } else {
        out << std::string(pad, ' ') << r[i];
      }
      if (i + 1 < r.size()) out << "  ";
    }
    out << '\n';
    if (ri == 0) {
      std::size_t total = 0;
      for (std::size_t w : width) total += w;
      out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    }
  }
  return out.str();
}

}  // namespace guibench
