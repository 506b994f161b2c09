#pragma once

#include <cstdint>
#include <vector>

#include "adoption/corpus.hpp"

namespace adoption::harness {

struct SynthConfig {
  std::size_t participants = 40;
  /// Fraction of each suggestion sentence copied into AI responses.
  double adoption = 0.3;
  /// Same for no-AI responses; non-zero only for sensitivity checks.
  double no_ai_adoption = 0.0;
  std::uint64_t seed = 7;
  /// Added to the Effort item (tlx_5) of AI trials.
  double effort_shift = 0.0;
};

/// Synthetic study corpus. Every participant writes one AI and one no-AI
/// response, with task/condition pairing alternating between participants.
/// Responses are filler sentences plus, for adopting trials, a contiguous
/// window of each suggestion sentence covering `adoption` of its tokens.
/// Output depends only on the config (portable RNG, no std distributions).
std::vector<TrialRecord> synthesize(const SynthConfig& config);

}  // namespace adoption::harness
