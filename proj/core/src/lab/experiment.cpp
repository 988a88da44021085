#include "coslab/lab/experiment.hpp"

#include <istream>
#include <ostream>

#include "coslab/error.hpp"

namespace coslab::lab {

namespace {

const std::vector<std::string> kScanColumns = {"suite",  "group",            "set",           "seed",
                                               "index",  "size",             "m_g",           "witness",
                                               "nearest_distance",           "algebra_norm",  "spencer",
                                               "spencer_normalized",         "timing_ms",     "pass"};
const std::vector<std::string> kVerifyColumns = {"suite", "group", "set", "seed", "index", "pass", "timing_ms",
                                                 "outputs"};

const std::vector<std::string>& columns(CsvLayout layout) {
  return layout == CsvLayout::kScan ? kScanColumns : kVerifyColumns;
}

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(std::string_view row) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < row.size(); ++i) {
    const char c = row[i];
    if (quoted) {
      if (c == '"' && i + 1 < row.size() && row[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

}  // namespace

Json record_to_json(const ExperimentRecord& r) {
  Json instance = {{"group", r.instance.group}};
  if (r.instance.set) instance["set"] = *r.instance.set;
  if (r.instance.seed) instance["seed"] = *r.instance.seed;
  if (r.instance.index) instance["index"] = *r.instance.index;
  Json out = {{"suite", r.suite}, {"instance", std::move(instance)}, {"outputs", r.outputs}};
  if (r.timing_ms) out["timing_ms"] = *r.timing_ms;
  if (r.pass) out["pass"] = *r.pass;
  return out;
}

ExperimentRecord record_from_json(const Json& j) {
  try {
    ExperimentRecord r;
    r.suite = j.at("suite").get<std::string>();
    const Json& inst = j.at("instance");
    r.instance.group = inst.at("group").get<std::string>();
    if (inst.contains("set")) r.instance.set = inst["set"].get<std::string>();
    if (inst.contains("seed")) r.instance.seed = inst["seed"].get<std::uint64_t>();
    if (inst.contains("index")) r.instance.index = inst["index"].get<std::uint64_t>();
    r.outputs = j.at("outputs");
    if (j.contains("timing_ms")) r.timing_ms = j["timing_ms"].get<double>();
    if (j.contains("pass")) r.pass = j["pass"].get<bool>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed record: ") + e.what());
  }
}

OutputFormat parse_format(std::string_view name) {
  if (name == "jsonl") return OutputFormat::kJsonl;
  if (name == "csv") return OutputFormat::kCsv;
  throw Error(ErrorCode::kInvalidArgument, "unknown format '" + std::string(name) + "' (expected jsonl or csv)");
}

std::string csv_header(CsvLayout layout) {
  std::string out;
  for (const auto& c : columns(layout)) out += (out.empty() ? "" : ",") + c;
  return out;
}

std::string to_csv_row(const ExperimentRecord& r, CsvLayout layout) {
  std::vector<std::string> cells;
  for (const auto& c : columns(layout)) {
    std::string cell;
    if (c == "suite") {
      cell = r.suite;
    } else if (c == "group") {
      cell = r.instance.group;
    } else if (c == "set") {
      cell = r.instance.set.value_or("");
    } else if (c == "seed") {
      cell = r.instance.seed ? std::to_string(*r.instance.seed) : "";
    } else if (c == "index") {
      cell = r.instance.index ? std::to_string(*r.instance.index) : "";
    } else if (c == "timing_ms") {
      cell = r.timing_ms ? Json(*r.timing_ms).dump() : "";
    } else if (c == "pass") {
      cell = r.pass ? (*r.pass ? "true" : "false") : "";
    } else if (c == "outputs") {
      cell = r.outputs.dump();
    } else if (r.outputs.contains(c)) {
      cell = r.outputs[c].dump();
    }
    cells.push_back(quote(cell));
  }
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
  return out;
}

ExperimentRecord record_from_csv_row(std::string_view row, CsvLayout layout) {
  const auto& cols = columns(layout);
  const auto cells = split_csv(row);
  if (cells.size() != cols.size()) {
    throw Error(ErrorCode::kParse, "CSV row has " + std::to_string(cells.size()) + " cells, expected " +
                                       std::to_string(cols.size()));
  }
  ExperimentRecord r;
  try {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      const std::string& c = cols[i];
      const std::string& v = cells[i];
      if (c == "suite") {
        r.suite = v;
      } else if (c == "group") {
        r.instance.group = v;
      } else if (c == "set") {
        if (!v.empty()) r.instance.set = v;
      } else if (v.empty()) {
        continue;
      } else if (c == "seed") {
        r.instance.seed = std::stoull(v);
      } else if (c == "index") {
        r.instance.index = std::stoull(v);
      } else if (c == "timing_ms") {
        r.timing_ms = Json::parse(v).get<double>();
      } else if (c == "pass") {
        r.pass = v == "true";
      } else if (c == "outputs") {
        r.outputs = Json::parse(v);
      } else {
        r.outputs[c] = Json::parse(v);
      }
    }
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kParse, std::string("malformed CSV row: ") + e.what());
  }
  return r;
}

RecordWriter::RecordWriter(std::ostream& out, OutputFormat format, CsvLayout layout)
    : out_(out), format_(format), layout_(layout) {
  if (format_ == OutputFormat::kCsv) out_ << csv_header(layout_) << '\n';
}

void RecordWriter::write(const ExperimentRecord& r) {
  if (format_ == OutputFormat::kJsonl) {
    out_ << record_to_json(r).dump() << '\n';
  } else {
    out_ << to_csv_row(r, layout_) << '\n';
  }
}

std::vector<ExperimentRecord> read_records(std::istream& in, OutputFormat format, CsvLayout layout) {
  std::vector<ExperimentRecord> out;
  std::string line;
  bool header = format == OutputFormat::kCsv;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      if (line != csv_header(layout)) throw Error(ErrorCode::kParse, "unexpected CSV header: " + line);
      header = false;
      continue;
    }
    if (format == OutputFormat::kJsonl) {
      try {
        out.push_back(record_from_json(Json::parse(line)));
      } catch (const Json::exception& e) {
        throw Error(ErrorCode::kParse, std::string("malformed JSONL line: ") + e.what());
      }
    } else {
      out.push_back(record_from_csv_row(line, layout));
    }
  }
  return out;
}

}  // namespace coslab::lab
