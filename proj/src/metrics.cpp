#include "adoption/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

namespace adoption::metrics {

std::string tf_isf_term(const std::string& lemma, PosClass cls) {
  std::string term = lemma;
  term.push_back('_');
  term.append(to_string(cls));
  return term;
}

TfIsfVector build_tf_isf(const Document& doc) {
  TfIsfVector v;
  v.sentence_count = doc.sentences.size();
  for (const TokenRange& sentence : doc.sentences) {
    std::set<std::string> seen;
    for (std::size_t i = sentence.begin; i < sentence.end; ++i) {
      std::string term = tf_isf_term(doc.lemmas[i], doc.tags[i]);
      ++v.term_frequency[term];
      seen.insert(std::move(term));
    }
    for (const std::string& term : seen) ++v.sentence_frequency[term];
  }
  const double n = static_cast<double>(v.sentence_count);
  for (const auto& [term, tf] : v.term_frequency) {
    const double sf = static_cast<double>(v.sentence_frequency.at(term));
    const double isf = std::log((1.0 + n) / (1.0 + sf)) + 1.0;
    v.weights.emplace(term, static_cast<double>(tf) * isf);
  }
  return v;
}

double cosine(const TfIsfVector& a, const TfIsfVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [term, w] : a.weights) {
    na += w * w;
    if (auto it = b.weights.find(term); it != b.weights.end()) dot += w * it->second;
  }
  for (const auto& [term, w] : b.weights) nb += w * w;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

double jaccard(const Document& a, const Document& b) {
  const std::unordered_set<std::string> sa(a.tokens.begin(), a.tokens.end());
  const std::unordered_set<std::string> sb(b.tokens.begin(), b.tokens.end());
  std::size_t shared = 0;
  for (const std::string& t : sa) shared += sb.count(t);
  const std::size_t uni = sa.size() + sb.size() - shared;
  if (uni == 0) return 0.0;
  return static_cast<double>(shared) / static_cast<double>(uni);
}

double pos_tf_isf_cosine(const Document& a, const Document& b) { return cosine(build_tf_isf(a), build_tf_isf(b)); }

double embedding_cosine(const Document& a, const Document& b, const embed::EmbeddingProvider& provider,
                        const embed::EmbeddingProvider* fallback) {
  embed::Vector va, vb;
  try {
    va = provider.embed(a.raw);
    vb = provider.embed(b.raw);
  } catch (const embed::ProviderUnavailable&) {
    if (!fallback) throw;
    va = fallback->embed(a.raw);
    vb = fallback->embed(b.raw);
  }
  return embed::cosine(va, vb);
}

std::map<std::string, sentiment::SentimentLabel> aspect_labels(const Document& doc,
                                                               const sentiment::SentimentLexicon& lexicon,
                                                               double neutral_threshold) {
  struct Acc {
    double sum = 0.0;
    std::size_t n = 0;
  };
  std::map<std::string, Acc> acc;
  for (const TokenRange& sentence : doc.sentences) {
    std::set<std::string> nouns;
    for (std::size_t i = sentence.begin; i < sentence.end; ++i) {
      if (doc.tags[i] == PosClass::kNoun) nouns.insert(doc.lemmas[i]);
    }
    if (nouns.empty()) continue;
    const std::span<const std::string> tokens(doc.tokens.data() + sentence.begin, sentence.size());
    const double p = sentiment::sentence_polarity(tokens, lexicon);
    for (const std::string& noun : nouns) {
      Acc& a = acc[noun];
      a.sum += p;
      ++a.n;
    }
  }
  std::map<std::string, sentiment::SentimentLabel> labels;
  for (const auto& [noun, a] : acc) {
    labels.emplace(noun, sentiment::label_for(a.sum / static_cast<double>(a.n), neutral_threshold));
  }
  return labels;
}

double aspect_sentiment_match(const Document& a, const Document& b, const sentiment::SentimentLexicon& lexicon,
                              const SentimentOptions& options) {
  const auto la = aspect_labels(a, lexicon, options.neutral_threshold);
  const auto lb = aspect_labels(b, lexicon, options.neutral_threshold);
  std::size_t uni = lb.size();
  std::size_t agree = 0;
  for (const auto& [aspect, label] : la) {
    const auto it = lb.find(aspect);
    if (it == lb.end()) {
      ++uni;
      continue;
    }
    if (it->second == label && (options.count_neutral_matches || label != sentiment::SentimentLabel::kNeutral)) {
      ++agree;
    }
  }
  if (uni == 0) return 0.0;
  return static_cast<double>(agree) / static_cast<double>(uni);
}

Scorer::Scorer(std::shared_ptr<const Analyzer> analyzer, std::shared_ptr<const sentiment::SentimentLexicon> lexicon,
               std::shared_ptr<const embed::EmbeddingProvider> provider,
               std::shared_ptr<const embed::EmbeddingProvider> fallback, SentimentOptions options)
    : analyzer_(std::move(analyzer)),
      lexicon_(std::move(lexicon)),
      provider_(std::move(provider)),
      fallback_(std::move(fallback)),
      options_(options) {
  if (!analyzer_ || !lexicon_ || !provider_) throw std::invalid_argument("Scorer: missing resource");
}

std::shared_ptr<const Scorer> Scorer::offline() {
  static const auto scorer = std::make_shared<const Scorer>(Analyzer::builtin(), sentiment::SentimentLexicon::builtin(),
                                                            std::make_shared<embed::HashingProvider>());
  return scorer;
}

MetricVector Scorer::score(const Document& response, const Document& reference, OnProviderFailure on_failure) const {
  MetricVector m;
  m.jaccard = jaccard(response, reference);
  m.pos_tf_isf_cosine = pos_tf_isf_cosine(response, reference);
  try {
    m.embedding_cosine = embedding_cosine(response, reference, *provider_, fallback_.get());
  } catch (const embed::ProviderUnavailable&) {
    if (on_failure == OnProviderFailure::kThrow) throw;
    m.embedding_cosine.reset();
  }
  m.sentiment_match = aspect_sentiment_match(response, reference, *lexicon_, options_);
  return m;
}

MetricVector metric_vector(const Document& response, const Document& reference,
                           const embed::EmbeddingProvider& provider, const sentiment::SentimentLexicon& lexicon,
                           const SentimentOptions& options) {
  MetricVector m;
  m.jaccard = jaccard(response, reference);
  m.pos_tf_isf_cosine = pos_tf_isf_cosine(response, reference);
  m.embedding_cosine = embedding_cosine(response, reference, provider);
  m.sentiment_match = aspect_sentiment_match(response, reference, lexicon, options);
  return m;
}

}  // namespace adoption::metrics
