#include "adoption/pos_tagger.hpp"

#include <algorithm>
#include <unordered_set>

#include "adoption/text_core.hpp"
#include "builtin_data.hpp"
#include "data_file.hpp"

namespace adoption {

namespace {
constexpr std::array<std::string_view, 11> kPosNames = {"NOUN", "VERB", "ADJ",  "ADV", "PRON", "DET",
                                                        "ADP",  "CONJ", "NUM", "PRT", "X"};
}  // namespace

std::string_view to_string(PosClass cls) { return kPosNames[static_cast<std::size_t>(cls)]; }

std::optional<PosClass> parse_pos_class(std::string_view name) {
  for (std::size_t i = 0; i < kPosNames.size(); ++i) {
    if (kPosNames[i] == name) return static_cast<PosClass>(i);
  }
  return std::nullopt;
}

namespace pos {

namespace {

std::pair<std::string_view, std::string_view> split_tab(std::string_view line) {
  const std::size_t tab = line.find('\t');
  if (tab == std::string_view::npos) return {line, {}};
  return {line.substr(0, tab), line.substr(tab + 1)};
}

bool valid_word(std::string_view w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](char c) { return (c >= 'a' && c <= 'z') || c == '\''; });
}

template <typename Sink>
void parse_tab_file(std::string_view text, const std::string& source, Sink&& sink) {
  for_each_data_line(text, [&](std::size_t line_no, std::string_view line) {
    auto [word, cls_name] = split_tab(line);
    if (cls_name.empty()) throw text::DataFileError(source, line_no, "expected word<TAB>CLASS");
    if (!valid_word(word)) {
      throw text::DataFileError(source, line_no, "word must match [a-z']+: '" + std::string(word) + "'");
    }
    const auto cls = parse_pos_class(cls_name);
    if (!cls) throw text::DataFileError(source, line_no, "unknown class '" + std::string(cls_name) + "'");
    sink(word, *cls);
  });
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

TagLexicon::TagLexicon(std::unordered_map<std::string, PosClass> entries,
                       std::vector<std::pair<std::string, PosClass>> suffix_rules)
    : entries_(std::move(entries)), suffix_rules_(std::move(suffix_rules)) {
  std::stable_sort(suffix_rules_.begin(), suffix_rules_.end(),
                   [](const auto& a, const auto& b) { return a.first.size() > b.first.size(); });
}

const TagLexicon& TagLexicon::builtin() {
  static const TagLexicon lexicon =
      parse(builtin::pos_lexicon_tsv(), builtin::pos_suffix_rules_tsv(), "pos_lexicon.tsv", "pos_suffix_rules.tsv");
  return lexicon;
}

TagLexicon TagLexicon::parse(std::string_view lexicon_text, std::string_view suffix_text,
                             const std::string& lexicon_source, const std::string& suffix_source) {
  std::unordered_map<std::string, PosClass> entries;
  parse_tab_file(lexicon_text, lexicon_source,
                 [&](std::string_view word, PosClass cls) { entries.insert_or_assign(std::string(word), cls); });
  std::vector<std::pair<std::string, PosClass>> rules;
  parse_tab_file(suffix_text, suffix_source,
                 [&](std::string_view suffix, PosClass cls) { rules.emplace_back(std::string(suffix), cls); });
  return TagLexicon(std::move(entries), std::move(rules));
}

TagLexicon TagLexicon::load(const std::filesystem::path& lexicon_path, const std::filesystem::path& suffix_path) {
  return parse(read_data_file(lexicon_path), read_data_file(suffix_path), lexicon_path.string(),
               suffix_path.string());
}

std::optional<PosClass> TagLexicon::lookup(std::string_view word) const {
  const auto it = entries_.find(std::string(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<PosClass> TagLexicon::match_suffix(std::string_view word) const {
  for (const auto& [suffix, cls] : suffix_rules_) {
    // The suffix must leave a non-empty stem.
    if (word.size() > suffix.size() && ends_with(word, suffix)) return cls;
  }
  return std::nullopt;
}

namespace {

// Auxiliaries and modals are never nouns, so the DET patch leaves them
// alone ("this is", "all were", "each can").
bool is_auxiliary(std::string_view token) {
  static const std::unordered_set<std::string_view> kAuxiliaries = {
      "be",    "am",    "is",    "are",   "was",   "were",   "been",  "being", "have",   "has",
      "had",   "do",    "does",  "did",   "can",   "could",  "may",   "might", "must",   "shall",
      "should", "will", "would", "isn't", "aren't", "wasn't", "weren't", "don't", "doesn't", "didn't",
      "can't", "won't", "hasn't", "haven't", "hadn't", "couldn't", "shouldn't", "wouldn't"};
  return kAuxiliaries.contains(token);
}

}  // namespace

std::vector<PosClass> tag(std::span<const std::string> tokens, const TagLexicon& lexicon) {
  std::vector<PosClass> tags;
  tags.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];
    if (auto cls = lexicon.lookup(token)) {
      if (*cls == PosClass::kVerb && i > 0 && tags[i - 1] == PosClass::kDet && !is_auxiliary(token)) {
        tags.push_back(PosClass::kNoun);
      } else {
        tags.push_back(*cls);
      }
      continue;
    }
    if (token.size() > 2 && ends_with(token, "ly")) {
      tags.push_back(PosClass::kAdv);
      continue;
    }
    tags.push_back(lexicon.match_suffix(token).value_or(PosClass::kNoun));
  }
  return tags;
}

}  // namespace pos
}  // namespace adoption
