#include <doctest.h>

#include "adoption/sentiment.hpp"
#include "adoption/text_core.hpp"
#include "oracles.hpp"

using namespace adoption;
using namespace adoption::sentiment;

namespace {

SentimentLexicon small_lexicon() {
  return SentimentLexicon::parse(
      "word,polarity,factor,negator\n"
      "great,0.8,1,0\n"
      "bad,-0.7,1,0\n"
      "good,0.6,1,0\n"
      "very,0,1.3,0\n"
      "really,0,2,0\n"
      "not,0,1,1\n"
      "never,0,1,true\n");
}

}  // namespace

TEST_CASE("sentence polarity examples") {
  const auto lex = small_lexicon();
  CHECK(sentence_polarity("great", lex) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(sentence_polarity("not great", lex) == doctest::Approx(-0.4).epsilon(1e-12));
  CHECK(sentence_polarity("the table stands", lex) == 0.0);
  CHECK(sentence_polarity("", lex) == 0.0);
}

TEST_CASE("mean over scoring entries") {
  const auto lex = small_lexicon();
  CHECK(sentence_polarity("great but bad", lex) == doctest::Approx((0.8 - 0.7) / 2));
  // Negators and boosters are not entries of their own.
  CHECK(sentence_polarity("not", lex) == 0.0);
  CHECK(sentence_polarity("very", lex) == 0.0);
}

TEST_CASE("boosters scale the next entry and stack") {
  const auto lex = small_lexicon();
  CHECK(sentence_polarity("very good", lex) == doctest::Approx(0.78));
  CHECK(sentence_polarity("really very good", lex) == doctest::Approx(1.0));  // 0.6 * 2.6 clamped
  CHECK(sentence_polarity("very bad", lex) == doctest::Approx(-0.91));
  CHECK(sentence_polarity("very good good", lex) == doctest::Approx((0.78 + 0.6) / 2));
  CHECK(sentence_polarity("very the good", lex) == doctest::Approx(0.78));
}

TEST_CASE("negation window is three tokens") {
  const auto lex = small_lexicon();
  CHECK(sentence_polarity("not a good", lex) == doctest::Approx(-0.3));
  CHECK(sentence_polarity("not a very good", lex) == doctest::Approx(-0.39));
  CHECK(sentence_polarity("not the old and good", lex) == doctest::Approx(0.6));
  CHECK(sentence_polarity("never bad", lex) == doctest::Approx(0.35));
}

TEST_CASE("polarity is clamped") {
  oracle::TextGenerator gen(8);
  const auto& lex = *SentimentLexicon::builtin();
  for (int i = 0; i < 500; ++i) {
    const double p = sentence_polarity(gen.sentence(), lex);
    CHECK(p >= -1.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("labels use the neutral band") {
  CHECK(label_for(0.11) == SentimentLabel::kPositive);
  CHECK(label_for(0.1) == SentimentLabel::kNeutral);
  CHECK(label_for(-0.1) == SentimentLabel::kNeutral);
  CHECK(label_for(-0.11) == SentimentLabel::kNegative);
  CHECK(label_for(0.3, 0.5) == SentimentLabel::kNeutral);
  CHECK(to_string(SentimentLabel::kPositive) == "POSITIVE");
}

TEST_CASE("shipped lexicon") {
  const auto& lex = *SentimentLexicon::builtin();
  CHECK(lex.size() > 1000);
  REQUIRE(lex.find("great"));
  CHECK(lex.find("great")->polarity > 0.1);
  REQUIRE(lex.find("terrible"));
  CHECK(lex.find("terrible")->polarity < -0.1);
  REQUIRE(lex.find("not"));
  CHECK(lex.find("not")->negator);
  REQUIRE(lex.find("very"));
  CHECK(lex.find("very")->factor > 1.0);
  CHECK(sentence_polarity("This is not a great plan.", lex) < 0.0);
  CHECK(sentence_polarity("What a wonderful, happy day!", lex) > 0.1);
}

TEST_CASE("lexicon validation") {
  const auto line_of = [](std::string_view csv) -> std::size_t {
    try {
      SentimentLexicon::parse(csv, "sentiment.csv");
    } catch (const text::DataFileError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("word,polarity,factor,negator\ngood,0.5,1,0\n") == 0);
  CHECK(line_of("good,0.5,1,0\n") == 0);  // header optional
  CHECK(line_of("word,polarity,factor,negator\ngood,1.5,1,0\n") == 2);
  CHECK(line_of("word,polarity,factor,negator\ngood,0.5,0,0\n") == 2);
  CHECK(line_of("word,polarity,factor,negator\ngood,0.5,1,maybe\n") == 2);
  CHECK(line_of("word,polarity,factor,negator\ngood,0.5,1,0\nbad,x,1,0\n") == 3);
  CHECK(line_of("word,polarity,factor,negator\ngood,0.5\n") == 2);
}
