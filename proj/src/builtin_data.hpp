#pragma once

#include <string_view>

// Contents of the files under data/, compiled in.
namespace adoption::builtin {

std::string_view pos_lexicon_tsv();
std::string_view pos_suffix_rules_tsv();
std::string_view irregular_tsv();
std::string_view lemma_exceptions_tsv();
std::string_view abbreviations_txt();
std::string_view sentiment_csv();

}  // namespace adoption::builtin
