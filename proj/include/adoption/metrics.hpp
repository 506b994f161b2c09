#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "adoption/document.hpp"
#include "adoption/embedding.hpp"
#include "adoption/sentiment.hpp"

namespace adoption::metrics {

/// The four adoption scores for one (response, reference) pair.
/// embedding_cosine is empty when the provider was unavailable and the
/// caller asked for a partial result.
struct MetricVector {
  double jaccard = 0.0;
  double pos_tf_isf_cosine = 0.0;
  std::optional<double> embedding_cosine = 0.0;
  double sentiment_match = 0.0;

  bool operator==(const MetricVector&) const = default;
};

inline constexpr std::array<const char*, 4> kMetricNames = {"jaccard", "pos_tf_isf_cosine", "embedding_cosine",
                                                            "sentiment_match"};

/// Term weights of one document over lemma+class terms ("run_VERB").
/// weight = tf * (ln((1 + N) / (1 + sf)) + 1) with N the document's
/// sentence count and sf the number of its sentences containing the term.
struct TfIsfVector {
  std::map<std::string, double> weights;
  std::map<std::string, std::size_t> term_frequency;
  std::map<std::string, std::size_t> sentence_frequency;
  std::size_t sentence_count = 0;
};

std::string tf_isf_term(const std::string& lemma, PosClass cls);
TfIsfVector build_tf_isf(const Document& doc);
/// Cosine over the union of terms; 0.0 when either vector is all zero.
double cosine(const TfIsfVector& a, const TfIsfVector& b);

/// |A ∩ B| / |A ∪ B| over the unique tokens; 0.0 when both are empty.
double jaccard(const Document& a, const Document& b);

double pos_tf_isf_cosine(const Document& a, const Document& b);

/// Cosine of provider embeddings of the raw texts. When the provider throws
/// ProviderUnavailable and a fallback is given, both texts are embedded with
/// the fallback instead; otherwise the error propagates.
double embedding_cosine(const Document& a, const Document& b, const embed::EmbeddingProvider& provider,
                        const embed::EmbeddingProvider* fallback = nullptr);

struct SentimentOptions {
  double neutral_threshold = 0.1;
  /// Count agreeing NEUTRAL labels in the numerator as well.
  bool count_neutral_matches = false;
};

/// Aspects are the NOUN lemmas of a document. For an aspect shared by both
/// documents, its label in each document is the label of the mean polarity
/// of that document's sentences containing it. The score is the number of
/// shared aspects whose labels agree (and are non-neutral, by default)
/// over the size of the aspect union.
double aspect_sentiment_match(const Document& a, const Document& b, const sentiment::SentimentLexicon& lexicon,
                              const SentimentOptions& options = {});

/// Per-aspect labels of one document, keyed by noun lemma.
std::map<std::string, sentiment::SentimentLabel> aspect_labels(const Document& doc,
                                                               const sentiment::SentimentLexicon& lexicon,
                                                               double neutral_threshold = 0.1);

enum class OnProviderFailure { kThrow, kMarkAbsent };

/// Scores documents against each other with a fixed set of resources.
class Scorer {
 public:
  Scorer(std::shared_ptr<const Analyzer> analyzer, std::shared_ptr<const sentiment::SentimentLexicon> lexicon,
         std::shared_ptr<const embed::EmbeddingProvider> provider,
         std::shared_ptr<const embed::EmbeddingProvider> fallback = nullptr, SentimentOptions options = {});

  /// Built-in resources with the hashing provider.
  static std::shared_ptr<const Scorer> offline();

  Document analyze(std::string raw) const { return analyzer_->analyze(std::move(raw)); }

  MetricVector score(const Document& response, const Document& reference,
                     OnProviderFailure on_failure = OnProviderFailure::kThrow) const;

  const Analyzer& analyzer() const { return *analyzer_; }
  const sentiment::SentimentLexicon& lexicon() const { return *lexicon_; }
  const embed::EmbeddingProvider& provider() const { return *provider_; }
  const SentimentOptions& sentiment_options() const { return options_; }

 private:
  std::shared_ptr<const Analyzer> analyzer_;
  std::shared_ptr<const sentiment::SentimentLexicon> lexicon_;
  std::shared_ptr<const embed::EmbeddingProvider> provider_;
  std::shared_ptr<const embed::EmbeddingProvider> fallback_;
  SentimentOptions options_;
};

MetricVector metric_vector(const Document& response, const Document& reference,
                           const embed::EmbeddingProvider& provider,
                           const sentiment::SentimentLexicon& lexicon = *sentiment::SentimentLexicon::builtin(),
                           const SentimentOptions& options = {});

}  // namespace adoption::metrics
