#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "adoption/pos_class.hpp"
#include "adoption/pos_tagger.hpp"
#include "adoption/text_core.hpp"

namespace adoption {

/// Half-open token index range [begin, end).
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t size() const { return end - begin; }
  bool operator==(const TokenRange&) const = default;
};

/// A text with its token, sentence, lemma and tag annotations.
/// tokens, lemmas and tags are parallel; sentence ranges are contiguous,
/// non-overlapping and cover every token.
struct Document {
  std::string raw;
  std::vector<std::string> tokens;
  std::vector<text::ByteSpan> sentence_text;  // into raw
  std::vector<TokenRange> sentences;
  std::vector<std::string> lemmas;
  std::vector<PosClass> tags;

  bool empty() const { return tokens.empty(); }
};

/// Linguistic resources plus the pipeline that turns raw text into a
/// Document. Immutable once built.
class Analyzer {
 public:
  Analyzer(pos::TagLexicon lexicon, text::LemmaTable lemmas, text::AbbreviationList abbreviations);

  /// Shared instance over the compiled-in data files.
  static std::shared_ptr<const Analyzer> builtin();
  /// Loads pos_lexicon.tsv, pos_suffix_rules.tsv, irregular.tsv,
  /// lemma_exceptions.tsv (optional) and abbreviations.txt from dir.
  static std::shared_ptr<const Analyzer> load(const std::filesystem::path& dir);

  Document analyze(std::string raw) const;

  const pos::TagLexicon& lexicon() const { return lexicon_; }
  const text::LemmaTable& lemmas() const { return lemmas_; }
  const text::AbbreviationList& abbreviations() const { return abbreviations_; }

 private:
  pos::TagLexicon lexicon_;
  text::LemmaTable lemmas_;
  text::AbbreviationList abbreviations_;
};

}  // namespace adoption
