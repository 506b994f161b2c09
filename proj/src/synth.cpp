#include "adoption/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "adoption/task_texts.hpp"
#include "adoption/text_core.hpp"

namespace adoption::harness {

namespace {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// they are done by hand here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t index(std::size_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal(double mean, double sd) {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return mean + sd * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[index(xs.size())];
  }

 private:
  std::mt19937_64 engine_;
};

const std::vector<std::string> kDeterminers = {"the", "a", "this", "that", "every", "some", "his", "their"};
const std::vector<std::string> kAdjectives = {"quiet", "cold",   "old",     "bright", "dark",   "long",
                                              "small", "simple", "careful", "strange", "honest", "tired",
                                              "calm",  "heavy",  "pleasant", "bitter", "warm",   "sad"};
const std::vector<std::string> kNouns = {"street", "city",   "night",  "door",   "window", "rain",   "friend",
                                         "story",  "corner", "light",  "stranger", "watch", "voice", "choice",
                                         "reader", "ending", "memory", "time",   "place",  "officer", "letter"};
const std::vector<std::string> kVerbs = {"walks",  "waits",   "looks",  "turns",    "remembers", "hears",
                                         "stops",  "changes", "notices", "explains", "feels",     "leaves",
                                         "opens",  "keeps",   "shows",  "describes"};
const std::vector<std::string> kAdverbs = {"slowly", "quietly", "clearly", "finally", "suddenly", "carefully"};
const std::vector<std::string> kPrepositions = {"in", "near", "under", "after", "before", "across", "with"};

// A few sentence shapes; the parts are joined with spaces.
std::string filler_sentence(Rng& rng) {
  std::vector<std::string> words;
  switch (rng.index(4)) {
    case 0:
      words = {rng.pick(kDeterminers), rng.pick(kAdjectives), rng.pick(kNouns), rng.pick(kVerbs),
               rng.pick(kPrepositions), rng.pick(kDeterminers), rng.pick(kNouns)};
      break;
    case 1:
      words = {rng.pick(kDeterminers), rng.pick(kNouns), rng.pick(kAdverbs), rng.pick(kVerbs), rng.pick(kDeterminers),
               rng.pick(kAdjectives), rng.pick(kNouns)};
      break;
    case 2:
      words = {rng.pick(kPrepositions), rng.pick(kDeterminers), rng.pick(kNouns), rng.pick(kDeterminers),
               rng.pick(kNouns), rng.pick(kVerbs), "and", rng.pick(kVerbs), rng.pick(kAdverbs)};
      break;
    default:
      words = {"it", "is", rng.pick(kAdjectives), "that", rng.pick(kDeterminers), rng.pick(kNouns),
               rng.pick(kVerbs), rng.pick(kPrepositions), rng.pick(kDeterminers), rng.pick(kAdjectives),
               rng.pick(kNouns)};
  }
  std::string s;
  for (const auto& w : words) {
    if (!s.empty()) s.push_back(' ');
    s += w;
  }
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  s.push_back('.');
  return s;
}

// A contiguous window of each suggestion sentence, `rate` of its tokens long.
std::vector<std::string> adopted_sentences(const std::vector<std::vector<std::string>>& suggestion, double rate,
                                           Rng& rng) {
  std::vector<std::string> out;
  if (rate <= 0.0) return out;
  for (const auto& tokens : suggestion) {
    const auto len = static_cast<std::size_t>(std::lround(rate * static_cast<double>(tokens.size())));
    if (len == 0) continue;
    const std::size_t start = rng.index(tokens.size() - std::min(len, tokens.size()) + 1);
    std::string s;
    for (std::size_t i = start; i < start + len && i < tokens.size(); ++i) {
      if (!s.empty()) s.push_back(' ');
      s += tokens[i];
    }
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    s.push_back('.');
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::vector<std::string>> sentence_tokens(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  for (const auto& sentence : text::split_sentences(text)) {
    auto tokens = text::tokenize(sentence);
    if (!tokens.empty()) out.push_back(std::move(tokens));
  }
  return out;
}

double clamp_round(double v, double lo, double hi) {
  return std::round(std::clamp(v, lo, hi) * 10.0) / 10.0;
}

}  // namespace

std::vector<TrialRecord> synthesize(const SynthConfig& config) {
  if (config.adoption < 0.0 || config.adoption > 1.0 || config.no_ai_adoption < 0.0 || config.no_ai_adoption > 1.0) {
    throw std::invalid_argument("adoption rates must lie in [0, 1]");
  }
  const std::array<std::vector<std::vector<std::string>>, 2> suggestion_tokens = {
      sentence_tokens(tasks::kAnalyticalSuggestion), sentence_tokens(tasks::kCreativeSuggestion)};
  const std::array<std::string_view, 2> suggestions = {tasks::kAnalyticalSuggestion, tasks::kCreativeSuggestion};
  constexpr std::array<double, 6> kTlxBase = {5.0, 2.7, 2.6, 3.5, 5.0, 2.6};
  constexpr double kTlxSd = 1.3;

  Rng rng(config.seed);
  std::vector<TrialRecord> records;
  for (std::size_t p = 0; p < config.participants; ++p) {
    char id[16];
    std::snprintf(id, sizeof id, "P%03zu", p + 1);
    const bool analytical_with_ai = p % 2 == 0;
    for (Task task : {Task::kAnalytical, Task::kCreative}) {
      const std::size_t t = task == Task::kAnalytical ? 0 : 1;
      TrialRecord r;
      r.participant_id = id;
      r.task = task;
      r.condition = (task == Task::kAnalytical) == analytical_with_ai ? Condition::kAi : Condition::kNoAi;
      r.suggestion_text = std::string(suggestions[t]);

      const double rate = r.condition == Condition::kAi ? config.adoption : config.no_ai_adoption;
      std::vector<std::string> sentences = adopted_sentences(suggestion_tokens[t], rate, rng);
      const std::size_t filler = 4 + rng.index(4);
      for (std::size_t i = 0; i < filler; ++i) {
        sentences.insert(sentences.begin() + static_cast<std::ptrdiff_t>(rng.index(sentences.size() + 1)),
                         filler_sentence(rng));
      }
      for (const auto& s : sentences) {
        if (!r.response_text.empty()) r.response_text.push_back(' ');
        r.response_text += s;
      }

      std::array<double, 6> tlx{};
      for (std::size_t i = 0; i < 6; ++i) {
        double v = rng.normal(kTlxBase[i], kTlxSd);
        if (i == 4 && r.condition == Condition::kAi) v += config.effort_shift;
        tlx[i] = clamp_round(v, 1.0, 7.0);
      }
      r.tlx_items = tlx;
      r.completion_min = clamp_round(rng.normal(17.0, 9.0), 2.0, 60.0);
      r.source_row = records.size() + 1;
      records.push_back(std::move(r));
    }
  }
  return records;
}

}  // namespace adoption::harness
