#include "adoption/document.hpp"

#include <algorithm>

namespace adoption {

Analyzer::Analyzer(pos::TagLexicon lexicon, text::LemmaTable lemmas, text::AbbreviationList abbreviations)
    : lexicon_(std::move(lexicon)), lemmas_(std::move(lemmas)), abbreviations_(std::move(abbreviations)) {}

std::shared_ptr<const Analyzer> Analyzer::builtin() {
  static const auto analyzer = std::make_shared<const Analyzer>(
      pos::TagLexicon::builtin(), text::LemmaTable::builtin(), text::AbbreviationList::builtin());
  return analyzer;
}

std::shared_ptr<const Analyzer> Analyzer::load(const std::filesystem::path& dir) {
  auto lemmas = text::LemmaTable::load(dir / "irregular.tsv");
  if (std::filesystem::exists(dir / "lemma_exceptions.tsv")) {
    lemmas.merge(text::LemmaTable::load(dir / "lemma_exceptions.tsv"));
  }
  return std::make_shared<const Analyzer>(
      pos::TagLexicon::load(dir / "pos_lexicon.tsv", dir / "pos_suffix_rules.tsv"), std::move(lemmas),
      text::AbbreviationList::load(dir / "abbreviations.txt"));
}

Document Analyzer::analyze(std::string raw) const {
  Document doc;
  doc.raw = std::move(raw);
  const std::string_view view = doc.raw;

  const auto spans = text::token_spans(view);
  doc.tokens = text::tokenize(view);
  doc.sentence_text = text::sentence_spans(view, abbreviations_);

  // Sentence spans never cut through a token: boundaries sit right after
  // terminal punctuation, which is not a word character.
  std::size_t t = 0;
  for (const text::ByteSpan& sentence : doc.sentence_text) {
    const std::size_t first = t;
    while (t < spans.size() && spans[t].begin < sentence.end) ++t;
    doc.sentences.push_back({first, t});
  }

  doc.tags = pos::tag(doc.tokens, lexicon_);
  doc.lemmas.reserve(doc.tokens.size());
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    doc.lemmas.push_back(text::lemmatize(doc.tokens[i], doc.tags[i], lemmas_));
  }
  return doc;
}

}  // namespace adoption
