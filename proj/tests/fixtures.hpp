#pragma once

// Fixtures shared by the unit tests and the acceptance gate.

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "adoption/metrics.hpp"
#include "oracles.hpp"

namespace fixtures {

using namespace adoption;

inline oracle::TermTable terms_of(const Document& d) {
  oracle::TermTable t;
  for (const auto& s : d.sentences) {
    t.emplace_back();
    for (std::size_t i = s.begin; i < s.end; ++i) t.back().push_back(metrics::tf_isf_term(d.lemmas[i], d.tags[i]));
  }
  return t;
}

// Self-match score: non-neutral aspects over all aspects, enumerated directly.
inline double self_match_oracle(const Document& d) {
  std::set<std::string> aspects;
  for (std::size_t i = 0; i < d.tokens.size(); ++i) {
    if (d.tags[i] == PosClass::kNoun) aspects.insert(d.lemmas[i]);
  }
  if (aspects.empty()) return 0.0;
  std::size_t polar = 0;
  for (const auto& aspect : aspects) {
    double sum = 0;
    int count = 0;
    for (const auto& s : d.sentences) {
      bool has = false;
      for (std::size_t i = s.begin; i < s.end; ++i) has = has || (d.tags[i] == PosClass::kNoun && d.lemmas[i] == aspect);
      if (!has) continue;
      const std::vector<std::string> tokens(d.tokens.begin() + s.begin, d.tokens.begin() + s.end);
      sum += sentiment::sentence_polarity(tokens, *sentiment::SentimentLexicon::builtin());
      ++count;
    }
    if (std::fabs(sum / count) > 0.1) ++polar;
  }
  return static_cast<double>(polar) / static_cast<double>(aspects.size());
}

struct Golden {
  const char* a;
  const char* b;
  oracle::TermTable terms_a;
  oracle::TermTable terms_b;
};

// Term tables written out by hand from the lemma and class of every word.
inline const std::vector<Golden>& goldens() {
  static const std::vector<Golden> g = {
      {"cats run. cats sleep.", "a cat runs.",
       {{"cat_NOUN", "run_VERB"}, {"cat_NOUN", "sleep_VERB"}},
       {{"a_DET", "cat_NOUN", "run_VERB"}}},
      {"Bob kept his promise.", "She broke every promise she made to him.",
       {{"bob_NOUN", "keep_VERB", "his_PRON", "promise_NOUN"}},
       {{"she_PRON", "break_VERB", "every_DET", "promise_NOUN", "she_PRON", "make_VERB", "to_PRT", "him_PRON"}}},
      {"It was a cold night.", "The night was long and the street was empty.",
       {{"it_PRON", "be_VERB", "a_DET", "cold_ADJ", "night_NOUN"}},
       {{"the_DET", "night_NOUN", "be_VERB", "long_ADJ", "and_CONJ", "the_DET", "street_NOUN", "be_VERB",
         "empty_ADJ"}}},
      {"The officer waited. The officer smiled.", "An officer waited quietly by the door.",
       {{"the_DET", "officer_NOUN", "wait_VERB"}, {"the_DET", "officer_NOUN", "smile_VERB"}},
       {{"an_DET", "officer_NOUN", "wait_VERB", "quietly_ADV", "by_ADP", "the_DET", "door_NOUN"}}},
      {"The food was good. The service was terrible.",
       "The food was excellent. The price was high. The service was slow. The room was nice.",
       {{"the_DET", "food_NOUN", "be_VERB", "good_ADJ"}, {"the_DET", "service_NOUN", "be_VERB", "terrible_ADJ"}},
       {{"the_DET", "food_NOUN", "be_VERB", "excellent_ADJ"},
        {"the_DET", "price_NOUN", "be_VERB", "high_ADJ"},
        {"the_DET", "service_NOUN", "be_VERB", "slow_ADJ"},
        {"the_DET", "room_NOUN", "be_VERB", "nice_ADJ"}}},
  };
  return g;
}

}  // namespace fixtures
