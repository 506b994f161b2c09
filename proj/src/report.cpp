#include "adoption/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace adoption::harness {

namespace {

constexpr std::array<std::string_view, 4> kDisplayNames = {"Jaccard", "POS TF-ISF cosine", "Embedding cosine",
                                                           "Aspect sentiment match"};

struct Row {
  std::string section;
  std::string task;  // empty for the overall table
  std::string metric;
  std::optional<stats::StatResult> result;
};

struct Table {
  std::string section;  // CSV key
  std::string title;
  std::string effect_label;
  bool has_task = false;
  std::vector<Row> rows;
};

std::string p_cell(const stats::StatResult& r) {
  const std::string p = round_half_even(r.p) == 0.0 ? "<0.001" : format_3(r.p);
  return p + (r.significant ? "*" : "");
}

std::vector<Table> build_tables(const AnalysisReport& report) {
  std::vector<Table> tables;
  if (report.overall) {
    Table t{"overall",
            "Overall AI vs. no-AI similarity (paired-samples t-test, n = " +
                std::to_string(report.overall->n_units) + " participants)",
            "Cohen's d_z", false, {}};
    for (std::size_t m = 0; m < 4; ++m) {
      t.rows.push_back({t.section, "", std::string(kDisplayNames[m]), report.overall->results[m]});
    }
    tables.push_back(std::move(t));
  }
  if (!report.within_task.empty()) {
    Table t{"within_task", "Within-task AI vs. no-AI similarity (independent-samples t-test)", "Cohen's d", true, {}};
    for (const auto& [task, cmp] : report.within_task) {
      for (std::size_t m = 0; m < 4; ++m) {
        t.rows.push_back({t.section, std::string(to_string(task)), std::string(kDisplayNames[m]), cmp.results[m]});
      }
    }
    tables.push_back(std::move(t));
  }
  Table tlx{"tlx", "Within-task AI vs. no-AI NASA-TLX ratings (independent-samples t-test)", "Cohen's d", true, {}};
  Table time{"time", "Within-task AI vs. no-AI completion time (independent-samples t-test)", "Cohen's d", true, {}};
  for (const TaskWorkload& block : report.workload.tasks) {
    for (std::size_t i = 0; i < block.labels.size(); ++i) {
      Table& dst = i + 1 == block.labels.size() ? time : tlx;
      dst.rows.push_back({dst.section, std::string(to_string(block.task)), block.labels[i], block.results[i]});
    }
  }
  // A table with no computable row means the field was not recorded.
  const auto any_result = [](const Table& t) {
    return std::any_of(t.rows.begin(), t.rows.end(), [](const Row& r) { return r.result.has_value(); });
  };
  if (any_result(tlx)) tables.push_back(std::move(tlx));
  if (any_result(time)) tables.push_back(std::move(time));
  return tables;
}

std::string render_markdown(const AnalysisReport& report) {
  std::string out = "# Adoption analysis\n";
  const CorpusSummary& s = report.summary;
  if (s.records > 0 || s.failures > 0) {
    out += "\nRecords: " + std::to_string(s.records) + " (AI " + std::to_string(s.ai_trials) + ", NO_AI " +
           std::to_string(s.no_ai_trials) + "), participants: " + std::to_string(s.participants) +
           ", scoring failures: " + std::to_string(s.failures) + "\n";
  }
  for (const Table& t : build_tables(report)) {
    out += "\n## " + t.title + "\n\n";
    out += t.has_task ? "| Task | Metric " : "| Metric ";
    out += "| No-AI M (SD) | AI M (SD) | Δ | p | " + t.effect_label + " |\n";
    out += t.has_task ? "|---|---" : "|---";
    out += "|---:|---:|---:|---:|---:|\n";
    std::string last_task;
    for (const Row& row : t.rows) {
      out += "| ";
      if (t.has_task) {
        out += row.task == last_task ? "" : row.task;
        last_task = row.task;
        out += " | ";
      }
      if (!row.result) {
        out += row.metric + " | n/a | n/a | n/a | n/a | n/a |\n";
        continue;
      }
      const stats::StatResult& r = *row.result;
      const auto cell = [&](const std::string& v) { return r.significant ? "**" + v + "**" : v; };
      out += cell(row.metric) + " | " + cell(format_3(r.m_no_ai) + " (" + format_3(r.sd_no_ai) + ")") + " | " +
             cell(format_3(r.m_ai) + " (" + format_3(r.sd_ai) + ")") + " | " + cell(format_3(r.delta)) + " | " +
             cell(p_cell(r)) + " | " + cell(format_3(r.effect)) + " |\n";
    }
  }
  std::vector<std::string> notes = report.notes;
  if (!report.overall_note.empty()) notes.insert(notes.begin(), report.overall_note);
  if (!notes.empty()) {
    out += "\n## Notes\n\n";
    for (const auto& n : notes) out += "- " + n + "\n";
  }
  return out;
}

std::string render_csv(const AnalysisReport& report) {
  std::string out = "table,task,metric,no_ai_m,no_ai_sd,ai_m,ai_sd,delta,p,effect\n";
  for (const Table& t : build_tables(report)) {
    for (const Row& row : t.rows) {
      out += t.section + "," + csv_escape(row.task) + "," + csv_escape(row.metric);
      if (!row.result) {
        out += ",,,,,,,\n";
        continue;
      }
      const stats::StatResult& r = *row.result;
      out += "," + format_3(r.m_no_ai) + "," + format_3(r.sd_no_ai) + "," + format_3(r.m_ai) + "," +
             format_3(r.sd_ai) + "," + format_3(r.delta) + "," + p_cell(r) + "," + format_3(r.effect) + "\n";
    }
  }
  return out;
}

}  // namespace

double round_half_even(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = value * scale;
  const double floor = std::floor(scaled);
  const double frac = scaled - floor;
  double rounded;
  if (std::fabs(frac - 0.5) < 1e-9) {
    rounded = std::fmod(floor, 2.0) == 0.0 ? floor : floor + 1.0;
  } else {
    rounded = std::round(scaled);
  }
  return rounded / scale;
}

std::string format_3(double value) {
  if (std::isnan(value)) return "nan";
  double r = round_half_even(value, 3);
  if (r == 0.0) r = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

std::string_view metric_display_name(std::size_t metric_index) { return kDisplayNames.at(metric_index); }

std::string render_report(const AnalysisReport& report, ReportFormat format) {
  return format == ReportFormat::kMarkdown ? render_markdown(report) : render_csv(report);
}

}  // namespace adoption::harness
