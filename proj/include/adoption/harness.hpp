#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adoption/corpus.hpp"
#include "adoption/metrics.hpp"
#include "adoption/stats.hpp"

namespace adoption::harness {

class UnpairedParticipant : public std::runtime_error {
 public:
  explicit UnpairedParticipant(std::vector<std::string> offenders);
  const std::vector<std::string>& offenders() const { return offenders_; }

 private:
  std::vector<std::string> offenders_;
};

struct ScoringFailure {
  std::size_t index = 0;  // into the input records
  std::string participant_id;
  std::string message;
};

struct ScoredCorpus {
  std::vector<ScoredTrial> scored;  // input order, failed records omitted
  std::vector<ScoringFailure> failures;
};

/// Scores every response against its task suggestion. AI and no-AI trials
/// go through the same computation. A record whose embedding call fails is
/// reported in failures and skipped; the rest are still scored. threads = 0
/// picks the hardware concurrency.
ScoredCorpus score_corpus(const std::vector<TrialRecord>& records, const metrics::Scorer& scorer,
                          std::size_t threads = 0);

/// One StatResult per metric, in kMetricNames order. A metric with no
/// usable values (e.g. every embedding failed) is empty.
struct MetricComparison {
  std::array<std::optional<stats::StatResult>, 4> results;
  std::size_t n_units = 0;  // participants (paired) or trials (independent)
};

/// Paired t-test per metric over per-participant (AI - no-AI) differences.
/// Throws UnpairedParticipant unless every participant has exactly one AI
/// and one no-AI trial; with allow_unpaired those participants are dropped
/// and listed in dropped.
MetricComparison compare_overall(const std::vector<ScoredTrial>& scored, bool allow_unpaired = false,
                                 std::vector<std::string>* dropped = nullptr);

/// Independent t-test per metric between conditions within one task.
MetricComparison compare_within_task(const std::vector<ScoredTrial>& scored, Task task,
                                     stats::Variance variant = stats::Variance::kPooled);

struct MissingField {
  std::string participant_id;
  Task task = Task::kAnalytical;
  std::string field;  // "tlx" or "completion_min"
};

/// Rows: the six TLX items, "TLX total", then "Completion time (min)".
struct TaskWorkload {
  Task task = Task::kAnalytical;
  std::vector<std::string> labels;
  std::vector<std::optional<stats::StatResult>> results;
};

struct WorkloadComparison {
  std::vector<TaskWorkload> tasks;
  std::vector<MissingField> missing;
};

/// Per-task independent comparisons of each TLX item, the TLX total and
/// completion time. Records lacking a field are left out of that field's
/// comparison and listed in missing; a row without two values per group
/// stays empty.
WorkloadComparison compare_tlx_time(const std::vector<TrialRecord>& records,
                                    stats::Variance variant = stats::Variance::kPooled);

struct CorpusSummary {
  std::size_t records = 0;
  std::size_t participants = 0;
  std::size_t ai_trials = 0;
  std::size_t no_ai_trials = 0;
  std::size_t failures = 0;
};

struct AnalysisReport {
  CorpusSummary summary;
  std::optional<MetricComparison> overall;
  std::string overall_note;  // why overall is missing, or dropped participants
  std::vector<std::pair<Task, MetricComparison>> within_task;
  std::vector<std::string> notes;
  WorkloadComparison workload;
};

struct AnalysisOptions {
  bool allow_unpaired = false;
  stats::Variance variant = stats::Variance::kPooled;
};

/// Runs every comparison the data supports. Degenerate comparisons are
/// recorded in notes instead of aborting the analysis.
AnalysisReport analyze(const std::vector<ScoredTrial>& scored, const AnalysisOptions& options = {},
                       std::size_t scoring_failures = 0);

}  // namespace adoption::harness
