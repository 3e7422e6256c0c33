#pragma once
// The 29 response properties and their fixed index order. Everything downstream
// (property vectors, comparison features, model weights) is indexed by these
// positions, so the order here is load-bearing and must never change.

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace preflens {

inline constexpr std::size_t kNumProperties = 29;

enum class PropertyCategory { basic, query_specific, error_detection };

struct PropertyInfo {
  std::string_view name;
  PropertyCategory category;
};

inline constexpr std::array<PropertyInfo, kNumProperties> kProperties{{
    {"harmless", PropertyCategory::basic},                   // 0
    {"grammarly correct", PropertyCategory::basic},          // 1
    {"well formatted", PropertyCategory::basic},             // 2
    {"non-repetitive", PropertyCategory::basic},             // 3
    {"funny", PropertyCategory::basic},                      // 4
    {"use rhetorical devices", PropertyCategory::basic},     // 5
    {"admit limits", PropertyCategory::basic},               // 6
    {"clear", PropertyCategory::basic},                      // 7
    {"friendly", PropertyCategory::basic},                   // 8
    {"use informal expressions", PropertyCategory::basic},   // 9
    {"contain rich info", PropertyCategory::basic},          // 10
    {"persuasive", PropertyCategory::basic},                 // 11
    {"polite", PropertyCategory::basic},                     // 12
    {"complex word & sentence", PropertyCategory::basic},    // 13
    {"step-by-step", PropertyCategory::basic},               // 14
    {"novel", PropertyCategory::basic},                      // 15
    {"interactive", PropertyCategory::basic},                // 16
    {"use supporting materials", PropertyCategory::basic},   // 17
    {"authoritative", PropertyCategory::basic},              // 18
    {"relevant", PropertyCategory::basic},                   // 19
    {"lengthy", PropertyCategory::basic},                    // 20
    {"clarify intent", PropertyCategory::query_specific},    // 21
    {"show empathetic", PropertyCategory::query_specific},   // 22
    {"satisfy constraints", PropertyCategory::query_specific},  // 23
    {"support stances", PropertyCategory::query_specific},   // 24
    {"correct mistakes", PropertyCategory::query_specific},  // 25
    {"no minor errors", PropertyCategory::error_detection},  // 26
    {"no moderate errors", PropertyCategory::error_detection},  // 27
    {"no severe errors", PropertyCategory::error_detection},    // 28
}};

// Named indices for the properties with special handling.
inline constexpr std::size_t kNonRepetitive = 3;
inline constexpr std::size_t kRelevant = 19;
inline constexpr std::size_t kLengthy = 20;
inline constexpr std::size_t kClarifyIntent = 21;
inline constexpr std::size_t kShowEmpathetic = 22;
inline constexpr std::size_t kSatisfyConstraints = 23;
inline constexpr std::size_t kSupportStances = 24;
inline constexpr std::size_t kCorrectMistakes = 25;
inline constexpr std::size_t kNoMinorErrors = 26;
inline constexpr std::size_t kNoModerateErrors = 27;
inline constexpr std::size_t kNoSevereErrors = 28;

constexpr std::string_view property_name(std::size_t index) {
  return kProperties[index].name;
}

constexpr PropertyCategory property_category(std::size_t index) {
  return kProperties[index].category;
}

constexpr std::optional<std::size_t> property_index(std::string_view name) {
  for (std::size_t i = 0; i < kNumProperties; ++i) {
    if (kProperties[i].name == name) return i;
  }
  return std::nullopt;
}

// The basic properties whose 0..3 rating is annotated directly. "lengthy" is
// measured (word count), and "non-repetitive" is stored in data files as the
// raw "repetitive" rating, inverted during assembly.
inline constexpr std::string_view kRepetitiveRawKey = "repetitive";

constexpr bool basic_rating_required(std::size_t index) {
  return property_category(index) == PropertyCategory::basic && index != kLengthy;
}

// Data-file key for a basic property's raw rating.
constexpr std::string_view basic_rating_key(std::size_t index) {
  return index == kNonRepetitive ? kRepetitiveRawKey : property_name(index);
}

// Plain-language descriptions used when instructing a model to exhibit a
// property (system messages). Phrased so "the response is {description}"
// reads naturally. Index-aligned with kProperties.
inline constexpr std::array<std::string_view, kNumProperties>
    kPropertyDescriptions{{
        "free of dangerous, offensive, or discriminatory content",
        "free of grammar, spelling, punctuation, and code-switching errors",
        "clearly formatted with elements such as bullet points, numbered "
        "lists, tables, or headings",
        "not repeating the same or similar content",
        "funny and humorous, with wit, jokes, or playful language",
        "using rhetorical devices such as metaphor, personification, simile, "
        "hyperbole, irony, or parallelism",
        "explicitly admitting the assistant's limitations or mistakes",
        "clear, easy to read, and free of ambiguity",
        "warm, welcoming, and approachable in tone",
        "using emojis, slang, or informal expressions where they fit",
        "rich in information such as background, examples, explanations, and "
        "specific details",
        "compelling and convincing in arguing for its viewpoint",
        "courteous and respectful in language",
        "using sophisticated vocabulary or complex sentence structure",
        "providing a detailed step-by-step reasoning or solution",
        "offering a novel perspective or ideas beyond run-of-the-mill content",
        "engaging the user with clarifying or follow-up questions",
        "supported by direct materials such as references, citations, "
        "statistics, or sources",
        "confident and authoritative in tone",
        "relevant to the query, with no unrelated content",
        "long and extensive",
        "clarifying unclear intent by inferring reasonably and asking for "
        "missing information",
        "showing understanding and sensitivity to the user's feelings",
        "satisfying every explicit constraint stated in the query",
        "supporting the user's explicitly stated stances and opinions",
        "pointing out and correcting mistakes or unfounded beliefs in the "
        "query",
        "avoiding minor factual, query-contradiction, math, or code errors",
        "avoiding moderate factual, query-contradiction, math, or code errors",
        "avoiding severe factual, query-contradiction, math, or code errors",
    }};

constexpr std::string_view property_description(std::size_t index) {
  return kPropertyDescriptions[index];
}

}  // namespace preflens
