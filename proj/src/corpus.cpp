#include "adoption/corpus.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace adoption::harness {

using nlohmann::ordered_json;

std::string_view to_string(Task task) { return task == Task::kAnalytical ? "analytical" : "creative"; }
std::string_view to_string(Condition condition) { return condition == Condition::kAi ? "AI" : "NO_AI"; }

std::optional<Task> parse_task(std::string_view s) {
  if (s == "analytical") return Task::kAnalytical;
  if (s == "creative") return Task::kCreative;
  return std::nullopt;
}

std::optional<Condition> parse_condition(std::string_view s) {
  if (s == "AI") return Condition::kAi;
  if (s == "NO_AI") return Condition::kNoAi;
  return std::nullopt;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view s) {
  if (s == "csv") return CorpusFormat::kCsv;
  if (s == "jsonl") return CorpusFormat::kJsonl;
  return std::nullopt;
}

CorpusFormat guess_format(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".json") ? CorpusFormat::kJsonl : CorpusFormat::kCsv;
}

SchemaError::SchemaError(std::string column, const std::string& what)
    : std::runtime_error(what), column_(std::move(column)) {}

DuplicateTrial::DuplicateTrial(std::string participant, Task task, std::size_t first_row, std::size_t second_row)
    : std::runtime_error("duplicate trial for participant '" + participant + "', task " +
                         std::string(to_string(task)) + " at rows " + std::to_string(first_row) + " and " +
                         std::to_string(second_row)) {}

std::vector<std::vector<std::string>> parse_csv(std::string_view content) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };

  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) throw ParseError("line " + std::to_string(line) + ": stray quote inside unquoted field");
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        ++line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) throw ParseError("unterminated quoted field at end of input");
  if (field_started || !row.empty()) end_row();
  return rows;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

namespace {

const std::array<const char*, 5> kRequired = {"participant_id", "task", "condition", "response_text",
                                              "suggestion_text"};

// Shortest representation that round-trips.
std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_number(std::string_view s, const std::string& column, std::size_t row) {
  double v = 0.0;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw SchemaError(column, "row " + std::to_string(row) + ": column '" + column + "' is not a number: '" +
                                  std::string(s) + "'");
  }
  return v;
}

// Field accessor shared by the CSV and JSONL readers. get() returns nullopt
// for missing or empty values.
template <typename Getter>
TrialRecord build_record(Getter&& get, std::size_t row) {
  TrialRecord r;
  r.source_row = row;
  auto required = [&](const char* column) {
    auto v = get(column);
    if (!v) throw SchemaError(column, "row " + std::to_string(row) + ": missing value for '" + column + "'");
    return *v;
  };
  r.participant_id = required("participant_id");
  const std::string task = required("task");
  const auto parsed_task = parse_task(task);
  if (!parsed_task) throw SchemaError("task", "row " + std::to_string(row) + ": unknown task '" + task + "'");
  r.task = *parsed_task;
  const std::string condition = required("condition");
  const auto parsed_condition = parse_condition(condition);
  if (!parsed_condition) {
    throw SchemaError("condition", "row " + std::to_string(row) + ": unknown condition '" + condition + "'");
  }
  r.condition = *parsed_condition;
  r.response_text = get("response_text").value_or("");
  r.suggestion_text = required("suggestion_text");

  std::array<std::optional<double>, 6> tlx;
  std::size_t present = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    const std::string column = "tlx_" + std::to_string(i + 1);
    if (auto v = get(column.c_str())) {
      tlx[i] = parse_number(*v, column, row);
      ++present;
    }
  }
  if (present == 6) {
    r.tlx_items.emplace();
    for (std::size_t i = 0; i < 6; ++i) (*r.tlx_items)[i] = *tlx[i];
  } else if (present != 0) {
    throw SchemaError("tlx_1..tlx_6", "row " + std::to_string(row) + ": TLX items must be all present or all empty");
  }
  if (auto v = get("completion_min")) r.completion_min = parse_number(*v, "completion_min", row);
  return r;
}

void check_duplicates(const std::vector<TrialRecord>& records) {
  std::map<std::pair<std::string, Task>, std::size_t> seen;
  for (const TrialRecord& r : records) {
    const auto [it, inserted] = seen.emplace(std::make_pair(r.participant_id, r.task), r.source_row);
    if (!inserted) throw DuplicateTrial(r.participant_id, r.task, it->second, r.source_row);
  }
}

std::vector<TrialRecord> parse_csv_corpus(std::string_view content) {
  const auto rows = parse_csv(content);
  if (rows.empty()) throw SchemaError("participant_id", "empty corpus: no header row");
  const auto& header = rows.front();
  std::map<std::string, std::size_t> columns;
  for (std::size_t i = 0; i < header.size(); ++i) columns.emplace(header[i], i);
  for (const char* column : kRequired) {
    if (!columns.count(column)) throw SchemaError(column, std::string("missing required column '") + column + "'");
  }
  std::vector<TrialRecord> records;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      throw ParseError("row " + std::to_string(r) + ": expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(row.size()));
    }
    auto get = [&](const char* column) -> std::optional<std::string> {
      const auto it = columns.find(column);
      if (it == columns.end() || row[it->second].empty()) return std::nullopt;
      return row[it->second];
    };
    records.push_back(build_record(get, r));
  }
  return records;
}

std::optional<std::string> json_field(const ordered_json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) {
    if (it->get_ref<const std::string&>().empty()) return std::nullopt;
    return it->get<std::string>();
  }
  if (it->is_number()) return format_number(it->get<double>());
  throw SchemaError(key, std::string("field '") + key + "' must be a string or number");
}

std::vector<TrialRecord> parse_jsonl_corpus(std::string_view content, std::vector<ordered_json>* objects = nullptr) {
  std::vector<TrialRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    const std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const ordered_json::parse_error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!obj.is_object()) throw ParseError("line " + std::to_string(line_no) + ": expected a JSON object");
    for (const char* column : kRequired) {
      if (!obj.contains(column)) {
        throw SchemaError(column, "line " + std::to_string(line_no) + ": missing required field '" + column + "'");
      }
    }
    auto get = [&](const char* column) { return json_field(obj, column); };
    records.push_back(build_record(get, line_no));
    if (objects) objects->push_back(std::move(obj));
  }
  return records;
}

ordered_json record_json(const TrialRecord& r) {
  ordered_json j;
  j["participant_id"] = r.participant_id;
  j["task"] = to_string(r.task);
  j["condition"] = to_string(r.condition);
  j["response_text"] = r.response_text;
  j["suggestion_text"] = r.suggestion_text;
  for (std::size_t i = 0; i < 6; ++i) {
    const std::string key = "tlx_" + std::to_string(i + 1);
    if (r.tlx_items) {
      j[key] = (*r.tlx_items)[i];
    } else {
      j[key] = nullptr;
    }
  }
  if (r.completion_min) {
    j["completion_min"] = *r.completion_min;
  } else {
    j["completion_min"] = nullptr;
  }
  return j;
}

}  // namespace

std::vector<TrialRecord> parse_corpus(std::string_view content, CorpusFormat format) {
  auto records = format == CorpusFormat::kCsv ? parse_csv_corpus(content) : parse_jsonl_corpus(content);
  check_duplicates(records);
  return records;
}

std::vector<TrialRecord> ingest(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open corpus file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus(buf.str(), format);
}

std::string write_corpus(const std::vector<TrialRecord>& records, CorpusFormat format) {
  std::string out;
  if (format == CorpusFormat::kJsonl) {
    for (const TrialRecord& r : records) {
      out += record_json(r).dump();
      out.push_back('\n');
    }
    return out;
  }
  out = "participant_id,task,condition,response_text,suggestion_text,tlx_1,tlx_2,tlx_3,tlx_4,tlx_5,tlx_6,"
        "completion_min\n";
  for (const TrialRecord& r : records) {
    out += csv_escape(r.participant_id) + "," + std::string(to_string(r.task)) + "," +
           std::string(to_string(r.condition)) + "," + csv_escape(r.response_text) + "," +
           csv_escape(r.suggestion_text);
    for (std::size_t i = 0; i < 6; ++i) {
      out.push_back(',');
      if (r.tlx_items) out += format_number((*r.tlx_items)[i]);
    }
    out.push_back(',');
    if (r.completion_min) out += format_number(*r.completion_min);
    out.push_back('\n');
  }
  return out;
}

std::string write_scored(const std::vector<ScoredTrial>& scored) {
  std::string out;
  for (const ScoredTrial& s : scored) {
    ordered_json j = record_json(s.record);
    ordered_json m;
    m["jaccard"] = s.metrics.jaccard;
    m["pos_tf_isf_cosine"] = s.metrics.pos_tf_isf_cosine;
    if (s.metrics.embedding_cosine) {
      m["embedding_cosine"] = *s.metrics.embedding_cosine;
    } else {
      m["embedding_cosine"] = nullptr;
    }
    m["sentiment_match"] = s.metrics.sentiment_match;
    j["metrics"] = std::move(m);
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::vector<ScoredTrial> parse_scored(std::string_view content) {
  std::vector<ordered_json> objects;
  auto records = parse_jsonl_corpus(content, &objects);
  check_duplicates(records);
  std::vector<ScoredTrial> scored;
  scored.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto it = objects[i].find("metrics");
    if (it == objects[i].end() || !it->is_object()) {
      throw SchemaError("metrics", "line " + std::to_string(records[i].source_row) + ": missing 'metrics' object");
    }
    ScoredTrial s{std::move(records[i]), {}};
    try {
      s.metrics.jaccard = it->at("jaccard").get<double>();
      s.metrics.pos_tf_isf_cosine = it->at("pos_tf_isf_cosine").get<double>();
      const auto& e = it->at("embedding_cosine");
      if (e.is_null()) {
        s.metrics.embedding_cosine.reset();
      } else {
        s.metrics.embedding_cosine = e.get<double>();
      }
      s.metrics.sentiment_match = it->at("sentiment_match").get<double>();
    } catch (const ordered_json::exception& e) {
      throw SchemaError("metrics", "line " + std::to_string(s.record.source_row) + ": " + e.what());
    }
    scored.push_back(std::move(s));
  }
  return scored;
}

std::vector<ScoredTrial> load_scored(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open scored file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scored(buf.str());
}

}  // namespace adoption::harness
