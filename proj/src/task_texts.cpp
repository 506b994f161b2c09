#include "adoption/task_texts.hpp"

namespace adoption::tasks {

const std::string_view kAnalyticalPrompt =
    "Evaluate Bob's decision to wait at the old restaurant site for twenty years. Judge whether his choice was "
    "wise or misguided, using two story details. Finally, conclude what this reveals about the theme of friendship "
    "versus duty.";

const std::string_view kAnalyticalSuggestion =
    "Bob’s decision to wait at the old restaurant site for twenty years reflects a mix of admirable loyalty and "
    "ultimately misguided hope. His declaration that he “came a thousand miles to stand here tonight” "
    "highlights his deep commitment to the promise he made, while his certainty that Jimmy “will never "
    "forget” shows his unwavering faith in his friend’s character. Yet the ironic moment when Bob "
    "realizes, “Twenty years is a long time, but not long enough to change the shape of a man’s "
    "nose,” reveals how his trust has blinded him to the possibility that their lives—and moral "
    "paths—have diverged. Together, these details show that Bob’s long wait, though rooted in sincere "
    "friendship, becomes a tragic misjudgment. Ultimately, the story suggests that the tension between friendship "
    "and duty can force painful choices, and Jimmy’s decision to prioritize justice over personal loyalty "
    "underscores that duty may demand sacrifices that even lifelong bonds cannot prevent.";

const std::string_view kCreativePrompt =
    "Rewrite the final scene from Jimmy Wells's point of view (begin when he arrives on the street). Show how Jimmy "
    "processes the twist when he realizes Bob is a wanted man.";

const std::string_view kCreativeSuggestion =
    "Suggested Structure:\n"
    "1. Introduction — Jimmy's emotions as he arrives.\n"
    "2. Recognition — His reaction upon seeing Bob.\n"
    "3. Conflict — Realizing Bob is a wanted man.\n"
    "4. Resolution — Choosing duty with compassion.\n"
    "5. Reflection — Jimmy's lasting feelings.\n"
    "\n"
    "Suggested Focus:\n"
    "Explore Jimmy's emotional conflict — his loyalty to friendship versus his duty as a policeman — and "
    "how he chooses a compassionate yet responsible path.";

}  // namespace adoption::tasks
