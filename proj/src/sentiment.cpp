#include "adoption/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <vector>

#include "adoption/text_core.hpp"
#include "builtin_data.hpp"
#include "data_file.hpp"

namespace adoption::sentiment {

namespace {

constexpr std::size_t kNegationWindow = 3;
constexpr double kNegationScale = -0.5;

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  // std::from_chars for double is available in libstdc++ 11.
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

SentimentLexicon::SentimentLexicon(std::unordered_map<std::string, LexiconEntry> entries)
    : entries_(std::move(entries)) {}

std::shared_ptr<const SentimentLexicon> SentimentLexicon::builtin() {
  static const auto lexicon = std::make_shared<const SentimentLexicon>(parse(builtin::sentiment_csv(), "sentiment.csv"));
  return lexicon;
}

SentimentLexicon SentimentLexicon::parse(std::string_view csv, const std::string& source) {
  std::unordered_map<std::string, LexiconEntry> entries;
  bool header_seen = false;
  for_each_data_line(csv, [&](std::size_t line_no, std::string_view line) {
    const auto fields = split_commas(line);
    if (fields.size() != 4) throw text::DataFileError(source, line_no, "expected word,polarity,factor,negator");
    if (!header_seen) {
      header_seen = true;
      if (fields[0] == "word") return;
    }
    if (fields[0].empty()) throw text::DataFileError(source, line_no, "empty word");
    LexiconEntry e;
    if (!parse_double(fields[1], e.polarity) || e.polarity < -1.0 || e.polarity > 1.0) {
      throw text::DataFileError(source, line_no, "polarity must be a number in [-1, 1]");
    }
    if (!parse_double(fields[2], e.factor) || e.factor <= 0.0) {
      throw text::DataFileError(source, line_no, "factor must be a positive number");
    }
    if (fields[3] == "1" || fields[3] == "true") {
      e.negator = true;
    } else if (fields[3] != "0" && fields[3] != "false") {
      throw text::DataFileError(source, line_no, "negator must be 0/1");
    }
    std::string word(fields[0]);
    std::transform(word.begin(), word.end(), word.begin(), [](unsigned char c) { return std::tolower(c); });
    entries.insert_or_assign(std::move(word), e);
  });
  return SentimentLexicon(std::move(entries));
}

SentimentLexicon SentimentLexicon::load(const std::filesystem::path& path) {
  return parse(read_data_file(path), path.string());
}

const LexiconEntry* SentimentLexicon::find(std::string_view word) const {
  const auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::string_view to_string(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::kPositive:
      return "POSITIVE";
    case SentimentLabel::kNegative:
      return "NEGATIVE";
    case SentimentLabel::kNeutral:
      break;
  }
  return "NEUTRAL";
}

SentimentLabel label_for(double polarity, double neutral_threshold) {
  if (polarity > neutral_threshold) return SentimentLabel::kPositive;
  if (polarity < -neutral_threshold) return SentimentLabel::kNegative;
  return SentimentLabel::kNeutral;
}

double sentence_polarity(std::span<const std::string> tokens, const SentimentLexicon& lexicon) {
  double sum = 0.0;
  std::size_t matched = 0;
  double pending_boost = 1.0;
  std::size_t last_negator = 0;  // index + 1 of the most recent negator, 0 if none
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const LexiconEntry* e = lexicon.find(tokens[i]);
    if (!e) continue;
    if (e->negator) {
      last_negator = i + 1;
      continue;
    }
    if (e->factor != 1.0) {
      pending_boost *= e->factor;
      continue;
    }
    double p = e->polarity * pending_boost;
    pending_boost = 1.0;
    if (last_negator != 0 && i + 1 - last_negator <= kNegationWindow) p *= kNegationScale;
    sum += p;
    ++matched;
  }
  if (matched == 0) return 0.0;
  return std::clamp(sum / static_cast<double>(matched), -1.0, 1.0);
}

double sentence_polarity(std::string_view sentence, const SentimentLexicon& lexicon) {
  const auto tokens = text::tokenize(sentence);
  return sentence_polarity(tokens, lexicon);
}

}  // namespace adoption::sentiment
