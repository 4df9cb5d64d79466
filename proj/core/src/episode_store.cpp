#include "guibench/episode_store.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "guibench/errors.hpp"
#include "text_util.hpp"

namespace guibench {
namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::string_view kDatasetTag = "guibench-dataset";
constexpr std::string_view kResultsTag = "guibench-results";

// Field access that reports the offending key; any failure becomes a
// ParseError at the caller's line.
struct FieldError {
  std::string reason;
};

const json& field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw FieldError{std::string("missing field '") + key + "'"};
  return *it;
}

std::string str_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_string()) throw FieldError{std::string("field '") + key + "' must be a string"};
  return v.get<std::string>();
}

double num(const json& v, const char* what) {
  if (!v.is_number()) throw FieldError{std::string(what) + " must be a number"};
  return v.get<double>();
}

std::uint64_t uint_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_number_unsigned()) {
    throw FieldError{std::string("field '") + key + "' must be a non-negative integer"};
  }
  return v.get<std::uint64_t>();
}

bool bool_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_boolean()) throw FieldError{std::string("field '") + key + "' must be a boolean"};
  return v.get<bool>();
}

BBox box_field(const json& obj, const char* key) {
  const json& v = field(obj, key);
  if (!v.is_array() || v.size() != 4) {
    throw FieldError{std::string("field '") + key + "' must be [left, top, right, bottom]"};
  }
  return BBox{num(v[0], key), num(v[1], key), num(v[2], key), num(v[3], key)};
}

template <typename F>
auto enum_field(const json& obj, const char* key, F&& convert) {
  const std::string s = str_field(obj, key);
  try {
    return convert(s);
  } catch (const InvalidConfig& e) {
    throw FieldError{e.what()};
  }
}

GroundTruth parse_ground_truth(const json& j) {
  if (!j.is_object()) throw FieldError{"ground_truth must be an object"};
  const ActionKind kind = enum_field(j, "kind", action_kind_from_string);
  switch (kind) {
    case ActionKind::kClick: return GroundTruth::click(box_field(j, "target_box"));
    case ActionKind::kLongPress: return GroundTruth::long_press(box_field(j, "target_box"));
    case ActionKind::kInput: return GroundTruth::input(str_field(j, "text"));
    case ActionKind::kAnswer: return GroundTruth::answer(str_field(j, "text"));
    case ActionKind::kScroll:
      return GroundTruth::scroll(box_field(j, "path_box"),
                                 enum_field(j, "direction", direction_from_string));
    case ActionKind::kDrag:
      return GroundTruth::drag(box_field(j, "path_box"),
                               enum_field(j, "direction", direction_from_string));
    case ActionKind::kWait: return GroundTruth::wait();
    case ActionKind::kFinish: return GroundTruth::finish();
  }
  throw FieldError{"unreachable ground truth kind"};
}

json box_json(const BBox& b) { return json::array({b.left, b.top, b.right, b.bottom}); }

ordered_json ground_truth_json(const GroundTruth& g) {
  ordered_json j;
  j["kind"] = std::string(to_string(g.kind));
  if (g.target_box) j["target_box"] = box_json(*g.target_box);
  if (g.path_box) j["path_box"] = box_json(*g.path_box);
  if (g.direction) j["direction"] = std::string(to_string(*g.direction));
  if (g.text) j["text"] = *g.text;
  return j;
}

std::string box_text(const BBox& b) {
  return "[" + format_number(b.left) + "," + format_number(b.top) + "," +
         format_number(b.right) + "," + format_number(b.bottom) + "]";
}

class DatasetReader {
 public:
  DatasetReader(const LoadOptions& options, bool collect) : options_(options), collect_(collect) {}

  void read_path(const fs::path& path) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
          files.push_back(entry.path());
        }
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) read_file(f);
      return;
    }
    read_file(path);
  }

  Dataset& dataset() { return dataset_; }
  std::vector<std::string>& errors() { return errors_; }
  std::vector<std::string>& warnings() { return warnings_; }

 private:
  template <typename E>
  void raise(E e) {
    if (!collect_) throw e;
    errors_.emplace_back(e.what());
  }

  void read_file(const fs::path& file) {
    std::ifstream in(file);
    if (!in) {
      raise(IoError("cannot open dataset file " + file.string()));
      return;
    }
    const fs::path base = file.parent_path();
    std::string line;
    std::size_t line_no = 0;
    bool seen_header = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (text_util::trim(line).empty()) continue;
      json record;
      try {
        record = json::parse(line);
      } catch (const json::parse_error& e) {
        raise(ParseError(file.string(), line_no, std::string("invalid JSON: ") + e.what()));
        continue;
      }
      try {
        if (!record.is_object()) throw FieldError{"record must be a JSON object"};
        if (!seen_header) {
          check_header(record);
          seen_header = true;
          continue;
        }
        const std::string type = str_field(record, "type");
        if (type == "episode") {
          read_episode(record, file, line_no, base);
        } else if (type == "vqa") {
          read_vqa(record, file, line_no, base);
        } else {
          throw FieldError{"unknown record type '" + type + "'"};
        }
      } catch (const FieldError& e) {
        raise(ParseError(file.string(), line_no, e.reason));
      } catch (const json::exception& e) {
        raise(ParseError(file.string(), line_no, e.what()));
      }
    }
    if (!seen_header) raise(ParseError(file.string(), line_no, "missing format header line"));
  }

  static void check_header(const json& record) {
    if (str_field(record, "format") != kDatasetTag) {
      throw FieldError{"first record must be the dataset header {\"format\": \"" +
                       std::string(kDatasetTag) + "\", ...}"};
    }
    const auto version = uint_field(record, "version");
    if (version != static_cast<std::uint64_t>(kDatasetFormatVersion)) {
      throw FieldError{"unsupported dataset version " + std::to_string(version)};
    }
  }

  void check_screenshot(const fs::path& base, const std::string& rel, const std::string& where) {
    std::error_code ec;
    if (fs::exists(base / rel, ec)) return;
    if (options_.strict) {
      raise(MissingScreenshot((base / rel).string()));
    } else {
      warnings_.push_back(where + ": missing screenshot " + (base / rel).string());
    }
  }

  void read_episode(const json& j, const fs::path& file, std::size_t line_no, const fs::path& base) {
    Episode ep;
    ep.id = str_field(j, "id");
    ep.sector = enum_field(j, "sector", sector_from_string);
    ep.instruction = str_field(j, "instruction");
    ep.base_dir = base;
    const json& steps = field(j, "steps");
    if (!steps.is_array()) throw FieldError{"field 'steps' must be an array"};
    for (const json& s : steps) {
      if (!s.is_object()) throw FieldError{"each step must be an object"};
      Step st;
      st.index = uint_field(s, "index");
      st.screenshot = str_field(s, "screenshot");
      st.width = static_cast<std::uint32_t>(uint_field(s, "width"));
      st.height = static_cast<std::uint32_t>(uint_field(s, "height"));
      const json& elements = field(s, "elements");
      if (!elements.is_array()) throw FieldError{"field 'elements' must be an array"};
      for (const json& e : elements) {
        if (!e.is_object()) throw FieldError{"each element must be an object"};
        st.elements.push_back(UiElement{str_field(e, "text"), box_field(e, "box")});
      }
      st.ground_truth = parse_ground_truth(field(s, "ground_truth"));
      st.is_final = bool_field(s, "is_final");
      ep.steps.push_back(std::move(st));
    }

    const std::string where = file.string() + ":" + std::to_string(line_no);
    if (auto problem = episode_problem(ep)) {
      raise(InvariantViolation(ep.id, *problem + " (" + where + ")"));
      return;
    }
    if (!episode_ids_.insert(ep.id).second) {
      raise(InvariantViolation(ep.id, "duplicate episode id (" + where + ")"));
      return;
    }
    for (const auto& st : ep.steps) check_screenshot(base, st.screenshot, where);
    dataset_.episodes.push_back(std::move(ep));
  }

  void read_vqa(const json& j, const fs::path& file, std::size_t line_no, const fs::path& base) {
    VqaItem item;
    item.id = str_field(j, "id");
    item.screenshot = str_field(j, "screenshot");
    item.question = str_field(j, "question");
    item.reference_answer = str_field(j, "reference_answer");
    item.base_dir = base;
    const std::string where = file.string() + ":" + std::to_string(line_no);
    if (text_util::trim(item.question).empty() || text_util::trim(item.reference_answer).empty()) {
      raise(InvariantViolation(item.id, "question and reference_answer must be nonempty (" +
                                            where + ")"));
      return;
    }
    if (!vqa_ids_.insert(item.id).second) {
      raise(InvariantViolation(item.id, "duplicate vqa item id (" + where + ")"));
      return;
    }
    check_screenshot(base, item.screenshot, where);
    dataset_.vqa_items.push_back(std::move(item));
  }

  static std::optional<std::string> episode_problem(const Episode& ep) {
    if (ep.id.empty()) return "episode id is empty";
    if (ep.steps.empty()) return "episode has no steps";
    for (std::size_t i = 0; i < ep.steps.size(); ++i) {
      const Step& st = ep.steps[i];
      const std::string at = "step " + std::to_string(i) + ": ";
      if (st.index != i) return at + "index " + std::to_string(st.index) + " is not contiguous";
      if (st.width == 0 || st.height == 0) return at + "screenshot size must be positive";
      for (const auto& e : st.elements) {
        if (!e.box.is_valid()) return at + "element box " + box_text(e.box) + " is invalid";
        if (e.box.right > st.width || e.box.bottom > st.height) {
          return at + "element box " + box_text(e.box) + " exceeds the screenshot";
        }
      }
      if (!st.ground_truth.is_valid()) {
        return at + "ground truth fields do not fit kind '" +
               std::string(to_string(st.ground_truth.kind)) + "'";
      }
      const bool last = i + 1 == ep.steps.size();
      if (st.is_final != last) {
        return last ? at + "last step must be final" : at + "only the last step may be final";
      }
    }
    if (ep.steps.back().ground_truth.kind != ActionKind::kFinish) {
      return "final step ground truth must be finish";
    }
    return std::nullopt;
  }

  LoadOptions options_;
  bool collect_;
  Dataset dataset_;
  std::vector<std::string> errors_;
  std::vector<std::string> warnings_;
  std::set<std::string> episode_ids_;
  std::set<std::string> vqa_ids_;
};

void write_text_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

ordered_json counts_json(const MetricsCounts& c) {
  ordered_json j;
  j["all_intentions"] = c.all_intentions;
  j["timeout_intentions"] = c.timeout_intentions;
  j["success_intentions"] = c.success_intentions;
  j["success_terminal_intentions"] = c.success_terminal_intentions;
  j["all_steps"] = c.all_steps;
  j["success_steps"] = c.success_steps;
  return j;
}

}  // namespace

Dataset load_dataset(const fs::path& path, const LoadOptions& options) {
  if (!fs::exists(path)) throw IoError("dataset path does not exist: " + path.string());
  DatasetReader reader(options, /*collect=*/false);
  reader.read_path(path);
  Dataset ds = std::move(reader.dataset());
  ds.warnings = std::move(reader.warnings());
  return ds;
}

ValidationReport validate_dataset(const fs::path& path, const LoadOptions& options) {
  ValidationReport report;
  if (!fs::exists(path)) {
    report.errors.push_back("dataset path does not exist: " + path.string());
    return report;
  }
  DatasetReader reader(options, /*collect=*/true);
  reader.read_path(path);
  for (const auto& ep : reader.dataset().episodes) {
    ++report.episode_counts[{ep.sector, ep.complexity()}];
  }
  report.episodes = reader.dataset().episodes.size();
  report.vqa_items = reader.dataset().vqa_items.size();
  report.errors = std::move(reader.errors());
  report.warnings = std::move(reader.warnings());
  return report;
}

std::string format_validation(const ValidationReport& report) {
  std::ostringstream out;
  out << "episodes: " << report.episodes << "\n";
  out << "vqa_items: " << report.vqa_items << "\n";
  for (const auto& [key, n] : report.episode_counts) {
    out << "  " << to_string(key.first) << "/" << to_string(key.second) << ": " << n << "\n";
  }
  for (const auto& w : report.warnings) out << "warning: " << w << "\n";
  for (const auto& e : report.errors) out << "error: " << e << "\n";
  out << (report.ok() ? "OK" : "FAILED") << "\n";
  return out.str();
}

std::string dataset_to_jsonl(const Dataset& dataset) {
  std::string out;
  ordered_json header;
  header["format"] = kDatasetTag;
  header["version"] = kDatasetFormatVersion;
  out += header.dump() + "\n";
  for (const auto& ep : dataset.episodes) {
    ordered_json j;
    j["type"] = "episode";
    j["id"] = ep.id;
    j["sector"] = std::string(to_string(ep.sector));
    j["instruction"] = ep.instruction;
    j["steps"] = ordered_json::array();
    for (const auto& st : ep.steps) {
      ordered_json s;
      s["index"] = st.index;
      s["screenshot"] = st.screenshot;
      s["width"] = st.width;
      s["height"] = st.height;
      s["elements"] = ordered_json::array();
      for (const auto& e : st.elements) {
        ordered_json ej;
        ej["text"] = e.text;
        ej["box"] = box_json(e.box);
        s["elements"].push_back(std::move(ej));
      }
      s["ground_truth"] = ground_truth_json(st.ground_truth);
      s["is_final"] = st.is_final;
      j["steps"].push_back(std::move(s));
    }
    out += j.dump() + "\n";
  }
  for (const auto& item : dataset.vqa_items) {
    ordered_json j;
    j["type"] = "vqa";
    j["id"] = item.id;
    j["screenshot"] = item.screenshot;
    j["question"] = item.question;
    j["reference_answer"] = item.reference_answer;
    out += j.dump() + "\n";
  }
  return out;
}

void write_dataset(const Dataset& dataset, const fs::path& file) {
  write_text_file(file, dataset_to_jsonl(dataset));
}

std::string results_to_json(const EvaluationReport& report) {
  ordered_json j;
  j["format"] = kResultsTag;
  j["version"] = kResultsFormatVersion;
  j["history_mode"] = report.history_mode();
  j["cells"] = ordered_json::array();
  for (const auto& [key, counts] : report.base_cells()) {
    ordered_json cell;
    cell["sector"] = std::string(to_string(key.first));
    cell["bucket"] = std::string(to_string(key.second));
    cell["counts"] = counts_json(counts);
    j["cells"].push_back(std::move(cell));
  }
  return j.dump(2) + "\n";
}

EvaluationReport results_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    if (str_field(j, "format") != kResultsTag) throw FieldError{"not a results file"};
    if (uint_field(j, "version") != static_cast<std::uint64_t>(kResultsFormatVersion)) {
      throw FieldError{"unsupported results version"};
    }
    EvaluationReport report(str_field(j, "history_mode"));
    for (const json& cell : field(j, "cells")) {
      const json& c = field(cell, "counts");
      MetricsCounts m;
      m.all_intentions = uint_field(c, "all_intentions");
      m.timeout_intentions = uint_field(c, "timeout_intentions");
      m.success_intentions = uint_field(c, "success_intentions");
      m.success_terminal_intentions = uint_field(c, "success_terminal_intentions");
      m.all_steps = uint_field(c, "all_steps");
      m.success_steps = uint_field(c, "success_steps");
      if (!m.is_consistent()) throw FieldError{"inconsistent counts in results cell"};
      report.add(enum_field(cell, "sector", sector_from_string),
                 enum_field(cell, "bucket", bucket_from_string), m);
    }
    return report;
  } catch (const FieldError& e) {
    throw IoError("malformed results: " + e.reason);
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed results: ") + e.what());
  }
}

void save_results(const EvaluationReport& report, const fs::path& path) {
  write_text_file(path, results_to_json(report));
}

EvaluationReport load_results(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open results file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return results_from_json(buf.str());
}

}  // namespace guibench
