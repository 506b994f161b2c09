#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adoption/pos_class.hpp"

namespace adoption::pos {

// Word -> most frequent coarse class, plus ordered suffix fallbacks.
// Immutable after construction; share freely across threads.
class TagLexicon {
 public:
  TagLexicon() = default;
  TagLexicon(std::unordered_map<std::string, PosClass> entries,
             std::vector<std::pair<std::string, PosClass>> suffix_rules);

  static const TagLexicon& builtin();

  /// `word<TAB>CLASS` per line for both inputs. Throws text::DataFileError
  /// naming the offending line.
  static TagLexicon parse(std::string_view lexicon_text, std::string_view suffix_text,
                          const std::string& lexicon_source = "<lexicon>",
                          const std::string& suffix_source = "<suffixes>");
  static TagLexicon load(const std::filesystem::path& lexicon_path,
                         const std::filesystem::path& suffix_path);

  std::optional<PosClass> lookup(std::string_view word) const;
  std::optional<PosClass> match_suffix(std::string_view word) const;

  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<std::string, PosClass>& entries() const { return entries_; }
  /// Longest suffix first.
  const std::vector<std::pair<std::string, PosClass>>& suffix_rules() const { return suffix_rules_; }

 private:
  std::unordered_map<std::string, PosClass> entries_;
  std::vector<std::pair<std::string, PosClass>> suffix_rules_;
};

/// Tags lowercase tokens in order:
///   1. lexicon lookup (a lexicon VERB right after a DET becomes NOUN,
///      auxiliaries and modals excepted);
///   2. lexicon miss ending in "ly" -> ADV;
///   3. suffix rules, longest first;
///   4. NOUN.
std::vector<PosClass> tag(std::span<const std::string> tokens,
                          const TagLexicon& lexicon = TagLexicon::builtin());

}  // namespace adoption::pos
