#include <algorithm>

#include "adoption/text_core.hpp"
#include "builtin_data.hpp"
#include "data_file.hpp"

namespace adoption::text {

const LemmaTable& LemmaTable::builtin() {
  static const LemmaTable table = [] {
    LemmaTable t = parse(builtin::irregular_tsv(), "irregular.tsv");
    t.merge(parse(builtin::lemma_exceptions_tsv(), "lemma_exceptions.tsv"));
    return t;
  }();
  return table;
}

LemmaTable LemmaTable::parse(std::string_view text, const std::string& source) {
  LemmaTable table;
  for_each_data_line(text, [&](std::size_t line_no, std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t tab = line.find('\t', pos);
      fields.push_back(line.substr(pos, tab == std::string_view::npos ? std::string_view::npos : tab - pos));
      if (tab == std::string_view::npos) break;
      pos = tab + 1;
    }
    if (fields.size() < 2 || fields.size() > 3) {
      throw DataFileError(source, line_no, "expected surface<TAB>lemma[<TAB>CLASS]");
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw DataFileError(source, line_no, "empty surface or lemma");
    }
    std::optional<PosClass> cls;
    if (fields.size() == 3) {
      cls = parse_pos_class(fields[2]);
      if (!cls) throw DataFileError(source, line_no, "unknown class '" + std::string(fields[2]) + "'");
    }
    table.add(std::string(fields[0]), std::string(fields[1]), cls);
  });
  return table;
}

LemmaTable LemmaTable::load(const std::filesystem::path& path) {
  return parse(read_data_file(path), path.string());
}

void LemmaTable::add(std::string surface, std::string lemma, std::optional<PosClass> cls) {
  auto& slots = index_[surface];
  for (std::size_t idx : slots) {
    if (entries_[idx].cls == cls) return;
  }
  slots.push_back(entries_.size());
  entries_.push_back({std::move(surface), std::move(lemma), cls});
}

void LemmaTable::merge(const LemmaTable& other) {
  for (const Entry& e : other.entries_) add(e.surface, e.lemma, e.cls);
}

std::optional<std::string_view> LemmaTable::lookup(std::string_view surface, PosClass cls) const {
  const auto it = index_.find(std::string(surface));
  if (it == index_.end()) return std::nullopt;
  const Entry* any_class = nullptr;
  for (std::size_t idx : it->second) {
    const Entry& e = entries_[idx];
    if (e.cls == cls) return e.lemma;
    if (!e.cls) any_class = &e;
  }
  if (any_class) return any_class->lemma;
  return std::nullopt;
}

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool has_vowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel(c) || c == 'y'; });
}

bool is_consonant(char c) { return c >= 'a' && c <= 'z' && !is_vowel(c); }

// One vowel group between consonants, ending in a single consonant that is
// not w/x/y: "hop", "mak", "writ", "us".
bool is_short_cvc(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && is_consonant(s[i])) ++i;
  if (i == s.size() || !is_vowel(s[i])) return false;
  ++i;
  if (i + 1 != s.size()) return false;
  const char last = s[i];
  return is_consonant(last) && last != 'w' && last != 'x' && last != 'y';
}

// Undo consonant doubling or restore a dropped final 'e' after removing an
// inflectional suffix.
std::string restore_stem(std::string_view stem) {
  std::string s(stem);
  const std::size_t n = s.size();
  if (n >= 4 && s[n - 1] == s[n - 2] && is_consonant(s[n - 1]) && s[n - 1] != 'l' && s[n - 1] != 's' &&
      s[n - 1] != 'z') {
    s.pop_back();
    return s;
  }
  const char last = s.back();
  const char prev = n >= 2 ? s[n - 2] : '\0';
  const bool needs_e = (last == 'v') || (last == 'z' && prev != 'z') || (last == 'u') || (last == 'c') ||
                       (last == 'g' && prev == 'd') ||
                       (last == 'l' && is_consonant(prev) && prev != 'l' && prev != 'r') || is_short_cvc(s);
  if (needs_e) s.push_back('e');
  return s;
}

std::string strip(std::string_view w, std::size_t n) { return std::string(w.substr(0, w.size() - n)); }

std::string noun_lemma(std::string_view w) {
  if (w.size() <= 3) return std::string(w);
  if (w.size() > 4 && ends_with(w, "ies")) return strip(w, 3) + "y";
  if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes") ||
      ends_with(w, "zzes")) {
    return strip(w, 2);
  }
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return std::string(w);
  if (ends_with(w, "s")) return strip(w, 1);
  return std::string(w);
}

std::string verb_lemma(std::string_view w) {
  if (w.size() <= 3) return std::string(w);
  if (w.size() > 4 && ends_with(w, "ies")) return strip(w, 3) + "y";
  if (w.size() > 4 && ends_with(w, "ied")) return strip(w, 3) + "y";
  if (ends_with(w, "sses") || ends_with(w, "xes") || ends_with(w, "ches") || ends_with(w, "shes") ||
      ends_with(w, "zzes")) {
    return strip(w, 2);
  }
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return std::string(w);
  if (ends_with(w, "s") && !ends_with(w, "'s")) return strip(w, 1);
  if (ends_with(w, "ing")) {
    const std::string_view stem = w.substr(0, w.size() - 3);
    if (stem.size() >= 2 && has_vowel(stem)) return restore_stem(stem);
    return std::string(w);
  }
  if (ends_with(w, "ed") && !ends_with(w, "eed")) {
    const std::string_view stem = w.substr(0, w.size() - 2);
    if (stem.size() >= 2 && has_vowel(stem)) return restore_stem(stem);
  }
  return std::string(w);
}

std::string adj_lemma(std::string_view w) {
  if (w.size() <= 3) return std::string(w);
  if (w.size() > 5 && ends_with(w, "iest")) return strip(w, 4) + "y";
  if (w.size() > 4 && ends_with(w, "ier")) return strip(w, 3) + "y";
  for (std::string_view suffix : {std::string_view("est"), std::string_view("er")}) {
    if (ends_with(w, suffix)) {
      const std::string_view stem = w.substr(0, w.size() - suffix.size());
      if (stem.size() >= 2 && has_vowel(stem)) return restore_stem(stem);
      return std::string(w);
    }
  }
  return std::string(w);
}

}  // namespace

std::string lemmatize(std::string_view token, PosClass cls, const LemmaTable& table) {
  if (token.empty()) return std::string();
  if (auto hit = table.lookup(token, cls)) return std::string(*hit);

  std::string result;
  switch (cls) {
    case PosClass::kNoun: {
      std::string_view base = token;
      if (base.size() > 2 && ends_with(base, "'s")) {
        base.remove_suffix(2);
      } else if (base.size() > 1 && ends_with(base, "s'")) {
        base.remove_suffix(1);
      }
      if (base != token) return lemmatize(base, cls, table);
      result = noun_lemma(token);
      break;
    }
    case PosClass::kVerb:
      result = verb_lemma(token);
      break;
    case PosClass::kAdj:
      result = adj_lemma(token);
      break;
    default:
      result = std::string(token);
  }
  return result.empty() ? std::string(token) : result;
}

}  // namespace adoption::text
