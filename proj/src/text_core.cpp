#include "adoption/text_core.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "builtin_data.hpp"
#include "data_file.hpp"

namespace adoption::text {

DataFileError::DataFileError(std::string source, std::size_t line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

namespace {

bool is_word_byte(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '\'';
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

// Length of a closing quote/bracket at raw[i], or 0. Covers the UTF-8
// right single/double quotes and the right guillemet.
std::size_t closer_length(std::string_view raw, std::size_t i) {
  const char c = raw[i];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  if (raw.compare(i, 3, "\xE2\x80\x9D") == 0 || raw.compare(i, 3, "\xE2\x80\x99") == 0) return 3;
  if (raw.compare(i, 2, "\xC2\xBB") == 0) return 2;
  return 0;
}

bool is_initialism(std::string_view word) {
  // "u", "u.s", "e.u.k"
  if (word.empty() || word.size() % 2 == 0) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const char c = word[i];
    if (i % 2 == 0) {
      if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
    } else if (c != '.') {
      return false;
    }
  }
  return true;
}

// The whitespace-delimited word ending right before raw[dot], stripped of
// leading opening punctuation.
std::string_view word_before(std::string_view raw, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0 && !is_space(raw[start - 1])) --start;
  std::string_view word = raw.substr(start, dot - start);
  while (!word.empty() && (word.front() == '(' || word.front() == '[' || word.front() == '"' ||
                           word.front() == '\'')) {
    word.remove_prefix(1);
  }
  return word;
}

// "1." at the start of a line.
bool is_list_marker(std::string_view raw, std::size_t dot, std::string_view word) {
  if (word.empty() || word.size() > 3) return false;
  if (!std::all_of(word.begin(), word.end(), [](char c) { return c >= '0' && c <= '9'; })) return false;
  std::size_t start = dot - word.size();
  while (start > 0 && (raw[start - 1] == ' ' || raw[start - 1] == '\t')) --start;
  return start == 0 || raw[start - 1] == '\n';
}

ByteSpan trimmed(std::string_view raw, std::size_t begin, std::size_t end) {
  while (begin < end && is_space(raw[begin])) ++begin;
  while (end > begin && is_space(raw[end - 1])) --end;
  return {begin, end};
}

}  // namespace

std::vector<ByteSpan> token_spans(std::string_view raw) {
  std::vector<ByteSpan> spans;
  std::size_t i = 0;
  while (i < raw.size()) {
    if (!is_word_byte(raw[i])) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    bool has_letter = false;
    while (i < raw.size() && is_word_byte(raw[i])) {
      has_letter = has_letter || raw[i] != '\'';
      ++i;
    }
    if (has_letter) spans.push_back({begin, i});
  }
  return spans;
}

std::vector<std::string> tokenize(std::string_view raw) {
  std::vector<std::string> tokens;
  for (const ByteSpan& span : token_spans(raw)) {
    std::string token(span.of(raw));
    std::transform(token.begin(), token.end(), token.begin(), ascii_lower);
    tokens.push_back(std::move(token));
  }
  return tokens;
}

AbbreviationList::AbbreviationList(std::unordered_set<std::string> entries)
    : entries_(std::move(entries)) {}

const AbbreviationList& AbbreviationList::builtin() {
  static const AbbreviationList list = parse(builtin::abbreviations_txt(), "abbreviations.txt");
  return list;
}

AbbreviationList AbbreviationList::parse(std::string_view text, const std::string& source) {
  std::unordered_set<std::string> entries;
  for_each_data_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.find_first_of(" \t") != std::string_view::npos) {
      throw DataFileError(source, line_no, "abbreviation must be a single word");
    }
    std::string word(line);
    if (!word.empty() && word.back() == '.') word.pop_back();
    std::transform(word.begin(), word.end(), word.begin(), ascii_lower);
    if (word.empty()) throw DataFileError(source, line_no, "empty abbreviation");
    entries.insert(std::move(word));
  });
  return AbbreviationList(std::move(entries));
}

AbbreviationList AbbreviationList::load(const std::filesystem::path& path) {
  return parse(read_data_file(path), path.string());
}

bool AbbreviationList::contains(std::string_view word) const {
  std::string key(word);
  if (!key.empty() && key.back() == '.') key.pop_back();
  std::transform(key.begin(), key.end(), key.begin(), ascii_lower);
  return entries_.count(key) > 0;
}

std::vector<ByteSpan> sentence_spans(std::string_view raw, const AbbreviationList& abbreviations) {
  std::vector<ByteSpan> spans;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    const ByteSpan span = trimmed(raw, start, end);
    if (span.size() > 0) spans.push_back(span);
    start = end;
  };

  std::size_t i = 0;
  while (i < raw.size()) {
    if (!is_terminal(raw[i])) {
      ++i;
      continue;
    }
    const std::size_t run_begin = i;
    std::size_t j = i;
    while (j < raw.size() && is_terminal(raw[j])) ++j;
    const std::size_t run_end = j;
    while (j < raw.size()) {
      const std::size_t len = closer_length(raw, j);
      if (len == 0) break;
      j += len;
    }
    if (j < raw.size() && !is_space(raw[j])) {
      i = j;
      continue;
    }
    const bool lone_period = run_end - run_begin == 1 && raw[run_begin] == '.';
    if (lone_period) {
      const std::string_view word = word_before(raw, run_begin);
      if (is_initialism(word) || abbreviations.contains(word) || is_list_marker(raw, run_begin, word)) {
        i = j;
        continue;
      }
    }
    emit(j);
    i = j;
  }
  emit(raw.size());
  return spans;
}

std::vector<std::string> split_sentences(std::string_view raw, const AbbreviationList& abbreviations) {
  std::vector<std::string> out;
  for (const ByteSpan& span : sentence_spans(raw, abbreviations)) out.emplace_back(span.of(raw));
  return out;
}

}  // namespace adoption::text
