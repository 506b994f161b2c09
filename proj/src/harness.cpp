#include "adoption/harness.hpp"

#include <atomic>
#include <map>
#include <set>
#include <thread>

namespace adoption::harness {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

std::optional<double> metric_value(const metrics::MetricVector& m, std::size_t index) {
  switch (index) {
    case 0:
      return m.jaccard;
    case 1:
      return m.pos_tf_isf_cosine;
    case 2:
      return m.embedding_cosine;
    default:
      return m.sentiment_match;
  }
}

}  // namespace

UnpairedParticipant::UnpairedParticipant(std::vector<std::string> offenders)
    : std::runtime_error("participants without exactly one AI and one NO_AI trial: " + join(offenders)),
      offenders_(std::move(offenders)) {}

ScoredCorpus score_corpus(const std::vector<TrialRecord>& records, const metrics::Scorer& scorer,
                          std::size_t threads) {
  struct Slot {
    std::optional<metrics::MetricVector> metrics;
    std::string error;
  };
  std::vector<Slot> slots(records.size());

  // Suggestions repeat across records; analyze each distinct text once.
  std::map<std::string, Document> references;
  for (const TrialRecord& r : records) {
    if (!references.count(r.suggestion_text)) references.emplace(r.suggestion_text, scorer.analyze(r.suggestion_text));
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < records.size(); i = next++) {
      const TrialRecord& r = records[i];
      try {
        const Document response = scorer.analyze(r.response_text);
        slots[i].metrics = scorer.score(response, references.at(r.suggestion_text));
      } catch (const embed::ProviderUnavailable& e) {
        slots[i].error = e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(1, records.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  ScoredCorpus out;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (slots[i].metrics) {
      out.scored.push_back({records[i], *slots[i].metrics});
    } else {
      out.failures.push_back({i, records[i].participant_id, slots[i].error});
    }
  }
  return out;
}

MetricComparison compare_overall(const std::vector<ScoredTrial>& scored, bool allow_unpaired,
                                 std::vector<std::string>* dropped) {
  struct Pair {
    std::vector<const ScoredTrial*> ai;
    std::vector<const ScoredTrial*> no_ai;
  };
  std::map<std::string, Pair> by_participant;
  for (const ScoredTrial& s : scored) {
    auto& p = by_participant[s.record.participant_id];
    (s.record.condition == Condition::kAi ? p.ai : p.no_ai).push_back(&s);
  }

  std::vector<std::string> offenders;
  std::vector<const Pair*> pairs;
  for (const auto& [id, p] : by_participant) {
    if (p.ai.size() == 1 && p.no_ai.size() == 1) {
      pairs.push_back(&p);
    } else {
      offenders.push_back(id);
    }
  }
  if (!offenders.empty()) {
    if (!allow_unpaired) throw UnpairedParticipant(offenders);
    if (dropped) *dropped = offenders;
  }
  if (pairs.size() < 2) {
    throw stats::DegenerateSample("paired comparison needs at least two complete participants, have " +
                                  std::to_string(pairs.size()));
  }

  MetricComparison out;
  out.n_units = pairs.size();
  for (std::size_t m = 0; m < 4; ++m) {
    std::vector<double> no_ai, ai;
    for (const Pair* p : pairs) {
      const auto a = metric_value(p->ai.front()->metrics, m);
      const auto b = metric_value(p->no_ai.front()->metrics, m);
      if (!a || !b) continue;
      ai.push_back(*a);
      no_ai.push_back(*b);
    }
    try {
      out.results[m] = stats::compare_paired(no_ai, ai);
    } catch (const stats::DegenerateSample&) {
      out.results[m].reset();
    }
  }
  return out;
}

MetricComparison compare_within_task(const std::vector<ScoredTrial>& scored, Task task, stats::Variance variant) {
  std::size_t n_ai = 0, n_no_ai = 0;
  for (const ScoredTrial& s : scored) {
    if (s.record.task != task) continue;
    ++(s.record.condition == Condition::kAi ? n_ai : n_no_ai);
  }
  if (n_ai < 2 || n_no_ai < 2) {
    throw stats::DegenerateSample(std::string(to_string(task)) + " task needs at least two trials per condition (AI " +
                                  std::to_string(n_ai) + ", NO_AI " + std::to_string(n_no_ai) + ")");
  }
  MetricComparison out;
  out.n_units = n_ai + n_no_ai;
  for (std::size_t m = 0; m < 4; ++m) {
    std::vector<double> no_ai, ai;
    for (const ScoredTrial& s : scored) {
      if (s.record.task != task) continue;
      const auto v = metric_value(s.metrics, m);
      if (!v) continue;
      (s.record.condition == Condition::kAi ? ai : no_ai).push_back(*v);
    }
    try {
      out.results[m] = stats::independent_t(no_ai, ai, variant);
    } catch (const stats::DegenerateSample&) {
      out.results[m].reset();
    }
  }
  return out;
}

WorkloadComparison compare_tlx_time(const std::vector<TrialRecord>& records, stats::Variance variant) {
  WorkloadComparison out;
  for (const TrialRecord& r : records) {
    if (!r.tlx_items) out.missing.push_back({r.participant_id, r.task, "tlx"});
    if (!r.completion_min) out.missing.push_back({r.participant_id, r.task, "completion_min"});
  }

  for (Task task : {Task::kAnalytical, Task::kCreative}) {
    TaskWorkload block;
    block.task = task;
    // 0..5 items, 6 total, 7 time
    std::array<std::vector<double>, 8> no_ai, ai;
    bool any = false;
    for (const TrialRecord& r : records) {
      if (r.task != task) continue;
      any = true;
      auto& dst = r.condition == Condition::kAi ? ai : no_ai;
      if (r.tlx_items) {
        for (std::size_t i = 0; i < 6; ++i) dst[i].push_back((*r.tlx_items)[i]);
        dst[6].push_back(stats::tlx_total(*r.tlx_items));
      }
      if (r.completion_min) dst[7].push_back(*r.completion_min);
    }
    if (!any) continue;
    for (std::size_t i = 0; i < 8; ++i) {
      if (i < 6) {
        block.labels.emplace_back(kTlxItemNames[i]);
      } else {
        block.labels.emplace_back(i == 6 ? "TLX total" : "Completion time (min)");
      }
      try {
        block.results.emplace_back(stats::independent_t(no_ai[i], ai[i], variant));
      } catch (const stats::DegenerateSample&) {
        block.results.emplace_back(std::nullopt);
      }
    }
    out.tasks.push_back(std::move(block));
  }
  return out;
}

AnalysisReport analyze(const std::vector<ScoredTrial>& scored, const AnalysisOptions& options,
                       std::size_t scoring_failures) {
  AnalysisReport report;
  std::set<std::string> participants;
  std::vector<TrialRecord> records;
  for (const ScoredTrial& s : scored) {
    participants.insert(s.record.participant_id);
    ++(s.record.condition == Condition::kAi ? report.summary.ai_trials : report.summary.no_ai_trials);
    records.push_back(s.record);
  }
  report.summary.records = scored.size();
  report.summary.participants = participants.size();
  report.summary.failures = scoring_failures;

  std::vector<std::string> dropped;
  report.overall = compare_overall(scored, options.allow_unpaired, &dropped);
  if (!dropped.empty()) report.overall_note = "dropped unpaired participants: " + join(dropped);

  for (Task task : {Task::kAnalytical, Task::kCreative}) {
    try {
      report.within_task.emplace_back(task, compare_within_task(scored, task, options.variant));
    } catch (const stats::DegenerateSample& e) {
      report.notes.emplace_back(e.what());
    }
  }
  report.workload = compare_tlx_time(records, options.variant);
  return report;
}

}  // namespace adoption::harness
