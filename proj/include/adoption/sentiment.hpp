#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

namespace adoption::sentiment {

struct LexiconEntry {
  double polarity = 0.0;  // [-1, 1]
  double factor = 1.0;    // != 1 marks a booster
  bool negator = false;
};

/// Word-level polarity lexicon. CSV `word,polarity,factor,negator` with a
/// header row. Immutable after load.
class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  explicit SentimentLexicon(std::unordered_map<std::string, LexiconEntry> entries);

  static std::shared_ptr<const SentimentLexicon> builtin();
  /// Throws text::DataFileError on malformed rows or out-of-range values.
  static SentimentLexicon parse(std::string_view csv, const std::string& source = "<memory>");
  static SentimentLexicon load(const std::filesystem::path& path);

  const LexiconEntry* find(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, LexiconEntry> entries_;
};

enum class SentimentLabel { kPositive, kNegative, kNeutral };

std::string_view to_string(SentimentLabel label);

/// POSITIVE iff p > threshold, NEGATIVE iff p < -threshold.
SentimentLabel label_for(double polarity, double neutral_threshold = 0.1);

/// Polarity of one sentence given as lowercase tokens.
///
/// Scoring entries are lexicon words that are neither negators nor
/// boosters. A booster scales the next scoring entry by its factor
/// (consecutive boosters multiply). A negator among the three tokens before
/// an entry multiplies that entry by -0.5. The result is the mean over
/// scoring entries, 0.0 when there are none, clamped to [-1, 1].
double sentence_polarity(std::span<const std::string> tokens, const SentimentLexicon& lexicon);
double sentence_polarity(std::string_view sentence, const SentimentLexicon& lexicon);

}  // namespace adoption::sentiment
