#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "adoption/pos_class.hpp"

namespace adoption::text {

/// Malformed data file. The message carries the 1-based line number.
class DataFileError : public std::runtime_error {
 public:
  DataFileError(std::string source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::size_t line_;
};

/// Byte range [begin, end) into some source string.
struct ByteSpan {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  std::string_view of(std::string_view s) const { return s.substr(begin, end - begin); }
  bool operator==(const ByteSpan&) const = default;
};

/// All maximal matches of [A-Za-z']+ in raw, lowercased. Matches made only
/// of apostrophes are dropped. Non-ASCII bytes always end a token.
std::vector<std::string> tokenize(std::string_view raw);

/// Same matches as tokenize(), as byte ranges into raw.
std::vector<ByteSpan> token_spans(std::string_view raw);

class AbbreviationList {
 public:
  AbbreviationList() = default;
  explicit AbbreviationList(std::unordered_set<std::string> entries);

  static const AbbreviationList& builtin();
  static AbbreviationList parse(std::string_view text, const std::string& source = "<memory>");
  static AbbreviationList load(const std::filesystem::path& path);

  /// word is compared lowercased and without its final period.
  bool contains(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_set<std::string> entries_;
};

/// Sentence boundaries: '.', '!' or '?' (a run of them, optionally followed
/// by closing quotes or brackets) followed by whitespace or end of text.
/// A lone '.' after a single letter, an initialism ("U.S") or a listed
/// abbreviation, or a numeric list marker at line start ("1."), does not
/// end a sentence. Spans are trimmed; empty ones are dropped.
std::vector<ByteSpan> sentence_spans(std::string_view raw,
                                     const AbbreviationList& abbreviations = AbbreviationList::builtin());

std::vector<std::string> split_sentences(std::string_view raw,
                                         const AbbreviationList& abbreviations = AbbreviationList::builtin());

/// Irregular forms and protected base forms, consulted before suffix rules.
class LemmaTable {
 public:
  LemmaTable() = default;

  static const LemmaTable& builtin();
  /// Lines are `surface<TAB>lemma[<TAB>CLASS]`; '#' starts a comment.
  static LemmaTable parse(std::string_view text, const std::string& source = "<memory>");
  static LemmaTable load(const std::filesystem::path& path);

  /// Adds every entry of other; entries already present win.
  void merge(const LemmaTable& other);
  void add(std::string surface, std::string lemma, std::optional<PosClass> cls);

  std::optional<std::string_view> lookup(std::string_view surface, PosClass cls) const;

  struct Entry {
    std::string surface;
    std::string lemma;
    std::optional<PosClass> cls;
  };
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
  // surface -> indices into entries_
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
};

/// Deterministic suffix-stripping lemmatizer. Never returns an empty string.
std::string lemmatize(std::string_view token, PosClass cls,
                      const LemmaTable& table = LemmaTable::builtin());

}  // namespace adoption::text
