#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adoption/metrics.hpp"

namespace adoption::harness {

enum class Task { kAnalytical, kCreative };
enum class Condition { kAi, kNoAi };

std::string_view to_string(Task task);
std::string_view to_string(Condition condition);
std::optional<Task> parse_task(std::string_view s);
std::optional<Condition> parse_condition(std::string_view s);

inline constexpr std::array<const char*, 6> kTlxItemNames = {"Mental demand", "Physical demand", "Rushed",
                                                             "Accomplishment", "Effort", "Insecurity"};

/// One participant x task observation.
struct TrialRecord {
  std::string participant_id;
  Task task = Task::kAnalytical;
  Condition condition = Condition::kNoAi;
  std::string response_text;
  std::string suggestion_text;  // the task suggestion, held out for no-AI trials
  std::optional<std::array<double, 6>> tlx_items;
  std::optional<double> completion_min;
  std::size_t source_row = 0;  // 1-based data row in the input file

  bool operator==(const TrialRecord& o) const {
    return participant_id == o.participant_id && task == o.task && condition == o.condition &&
           response_text == o.response_text && suggestion_text == o.suggestion_text && tlx_items == o.tlx_items &&
           completion_min == o.completion_min;
  }
};

enum class CorpusFormat { kCsv, kJsonl };

std::optional<CorpusFormat> parse_corpus_format(std::string_view s);
/// From the extension; ".jsonl"/".json" map to JSONL, anything else to CSV.
CorpusFormat guess_format(const std::filesystem::path& path);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string column, const std::string& what);
  const std::string& column() const { return column_; }

 private:
  std::string column_;
};

class DuplicateTrial : public std::runtime_error {
 public:
  DuplicateTrial(std::string participant, Task task, std::size_t first_row, std::size_t second_row);
};

/// Columns: participant_id, task, condition, response_text, suggestion_text,
/// tlx_1..tlx_6, completion_min. The TLX and time columns are optional;
/// an empty cell means "not recorded".
std::vector<TrialRecord> parse_corpus(std::string_view content, CorpusFormat format);
std::vector<TrialRecord> ingest(const std::filesystem::path& path, CorpusFormat format);

std::string write_corpus(const std::vector<TrialRecord>& records, CorpusFormat format);

/// RFC 4180 CSV: quoted fields may contain commas, quotes ("") and newlines.
std::vector<std::vector<std::string>> parse_csv(std::string_view content);
std::string csv_escape(std::string_view field);

/// A trial together with its scores.
struct ScoredTrial {
  TrialRecord record;
  metrics::MetricVector metrics;
};

/// JSON Lines: every record field plus a "metrics" object.
std::string write_scored(const std::vector<ScoredTrial>& scored);
std::vector<ScoredTrial> parse_scored(std::string_view content);
std::vector<ScoredTrial> load_scored(const std::filesystem::path& path);

}  // namespace adoption::harness
