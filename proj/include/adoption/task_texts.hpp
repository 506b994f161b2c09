#pragma once

#include <string_view>

// The two study tasks: prompts and the fixed AI suggestion for each.
namespace adoption::tasks {

extern const std::string_view kAnalyticalPrompt;
extern const std::string_view kAnalyticalSuggestion;
extern const std::string_view kCreativePrompt;
extern const std::string_view kCreativeSuggestion;

}  // namespace adoption::tasks
