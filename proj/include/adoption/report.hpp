#pragma once

#include <string>
#include <string_view>

#include "adoption/harness.hpp"

namespace adoption::harness {

enum class ReportFormat { kMarkdown, kCsv };

/// Round half to even at `decimals` places. Values within 1e-9 of a tie
/// count as ties so printed decimals such as 0.0125 round predictably.
double round_half_even(double value, int decimals = 3);

/// Fixed three-decimal rendering of round_half_even(value); never "-0.000".
std::string format_3(double value);

/// Tables in the layout No-AI M (SD) | AI M (SD) | Δ | p | effect. Rows with
/// p < .05 get a star on p (and bold in markdown).
std::string render_report(const AnalysisReport& report, ReportFormat format);

std::string_view metric_display_name(std::size_t metric_index);

}  // namespace adoption::harness
