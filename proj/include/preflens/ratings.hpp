#pragma once
// Conversion of raw annotations into the final per-response value for each of
// the 29 properties, collected into a PropertyVector with applicability mask.

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "preflens/data.hpp"
#include "preflens/properties.hpp"

namespace preflens {

// Final values per property plus applicability. Inapplicable slots hold 0 and
// must never be read by comparison logic; the mask is the source of truth.
struct PropertyVector {
  std::array<double, kNumProperties> values{};
  std::array<bool, kNumProperties> applicable{};
};

inline double stance_score(const std::vector<StanceLabel>& labels) {
  if (labels.empty())
    throw std::invalid_argument("stance_score: inapplicable (no stances)");
  double sum = 0.0;
  for (auto l : labels) {
    switch (l) {
      case StanceLabel::strongly_supported: sum += 3.0; break;
      case StanceLabel::weakly_supported: sum += 2.25; break;
      case StanceLabel::neutral: sum += 1.5; break;
      case StanceLabel::weakly_opposed: sum += 0.75; break;
      case StanceLabel::strongly_opposed: sum += 0.0; break;
    }
  }
  return sum / static_cast<double>(labels.size());
}

inline double mistake_score(const std::vector<MistakeLabel>& labels) {
  if (labels.empty())
    throw std::invalid_argument("mistake_score: inapplicable (no mistakes)");
  double sum = 0.0;
  for (auto l : labels) {
    switch (l) {
      case MistakeLabel::pointed_out_and_corrected: sum += 3.0; break;
      case MistakeLabel::corrected_without_being_pointed_out: sum += 2.0; break;
      case MistakeLabel::pointed_out_but_not_corrected: sum += 1.0; break;
      case MistakeLabel::neither_pointed_out_nor_corrected: sum += 0.0; break;
    }
  }
  return sum / static_cast<double>(labels.size());
}

inline double constraint_score(const std::vector<int>& per_constraint) {
  if (per_constraint.empty())
    throw std::invalid_argument("constraint_score: inapplicable (no constraints)");
  const double sum = std::accumulate(per_constraint.begin(), per_constraint.end(), 0.0);
  return sum / static_cast<double>(per_constraint.size());
}

// Counts by severity: (minor, moderate, severe).
inline std::array<long, 3> error_counts(const std::vector<ErrorRecord>& errors) {
  std::array<long, 3> counts{0, 0, 0};
  for (const auto& e : errors) counts[static_cast<int>(e.severity)] += 1;
  return counts;
}

namespace detail {

// Unicode whitespace code points (White_Space property).
constexpr bool is_space_cp(char32_t cp) {
  return (cp >= 0x09 && cp <= 0x0D) || cp == 0x20 || cp == 0x85 || cp == 0xA0 ||
         cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 ||
         cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

// Decodes one UTF-8 code point at i, advancing i. Invalid bytes decode as
// themselves so malformed input still tokenizes deterministically.
inline char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  int len = 1;
  char32_t cp = b0;
  if (b0 >= 0xF0) { len = 4; cp = b0 & 0x07; }
  else if (b0 >= 0xE0) { len = 3; cp = b0 & 0x0F; }
  else if (b0 >= 0xC0) { len = 2; cp = b0 & 0x1F; }
  if (i + len > s.size()) len = 1, cp = b0;
  for (int k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) { len = 1; cp = b0; break; }
    cp = (cp << 6) | (b & 0x3F);
  }
  i += len;
  return cp;
}

// ASCII punctuation plus common typographic marks; used only for stripping
// token edges, so the set being conservative is fine.
constexpr bool is_punct_cp(char32_t cp) {
  if (cp < 0x80)
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  switch (cp) {
    case 0x2018: case 0x2019: case 0x201C: case 0x201D:  // curly quotes
    case 0x2013: case 0x2014:                            // en/em dash
    case 0x2026:                                         // ellipsis
    case 0x00A1: case 0x00BF:                            // inverted !/?
      return true;
    default:
      return false;
  }
}

}  // namespace detail

// Token count: split on Unicode whitespace, strip leading/trailing punctuation
// from each token, drop tokens that become empty.
inline long word_count(std::string_view text) {
  long count = 0;
  std::size_t i = 0;
  std::vector<char32_t> token;
  auto flush = [&] {
    std::size_t lo = 0, hi = token.size();
    while (lo < hi && detail::is_punct_cp(token[lo])) ++lo;
    while (hi > lo && detail::is_punct_cp(token[hi - 1])) --hi;
    if (hi > lo) ++count;
    token.clear();
  };
  while (i < text.size()) {
    const char32_t cp = detail::decode_utf8(text, i);
    if (detail::is_space_cp(cp)) flush();
    else token.push_back(cp);
  }
  flush();
  return count;
}

// Builds the final 29-slot vector for one response. Throws when a rating that
// the applicability mask requires is missing from the annotation.
inline PropertyVector assemble_property_vector(const ResponseAnnotation& resp,
                                               const QueryMeta& meta) {
  PropertyVector pv;
  for (std::size_t i = 0; i < kNumProperties; ++i) {
    if (!basic_rating_required(i)) continue;
    const std::string key{basic_rating_key(i)};
    auto it = resp.ratings.find(key);
    if (it == resp.ratings.end())
      throw std::runtime_error("missing required rating: " + std::string(property_name(i)));
    pv.values[i] = i == kNonRepetitive ? 3.0 - it->second : it->second;
    pv.applicable[i] = true;
  }

  pv.values[kLengthy] = static_cast<double>(resp.word_count);
  pv.applicable[kLengthy] = true;

  const auto* qs = resp.query_specific ? &*resp.query_specific : nullptr;
  if (!meta.clear_intent) {
    if (!qs || !qs->clarify_intent)
      throw std::runtime_error("missing required rating: clarify intent");
    pv.values[kClarifyIntent] = *qs->clarify_intent;
    pv.applicable[kClarifyIntent] = true;
  }
  if (meta.expresses_feelings) {
    if (!qs || !qs->show_empathetic)
      throw std::runtime_error("missing required rating: show empathetic");
    pv.values[kShowEmpathetic] = *qs->show_empathetic;
    pv.applicable[kShowEmpathetic] = true;
  }
  if (!meta.constraints.empty()) {
    if (!qs || qs->constraints.empty())
      throw std::runtime_error("missing required rating: satisfy constraints");
    pv.values[kSatisfyConstraints] = constraint_score(qs->constraints);
    pv.applicable[kSatisfyConstraints] = true;
  }
  if (!meta.stances.empty()) {
    if (!qs || qs->stances.empty())
      throw std::runtime_error("missing required rating: support stances");
    pv.values[kSupportStances] = stance_score(qs->stances);
    pv.applicable[kSupportStances] = true;
  }
  if (!meta.mistakes.empty()) {
    if (!qs || qs->mistakes.empty())
      throw std::runtime_error("missing required rating: correct mistakes");
    pv.values[kCorrectMistakes] = mistake_score(qs->mistakes);
    pv.applicable[kCorrectMistakes] = true;
  }

  if (resp.error_check) {
    const auto counts = error_counts(resp.errors);
    pv.values[kNoMinorErrors] = static_cast<double>(counts[0]);
    pv.values[kNoModerateErrors] = static_cast<double>(counts[1]);
    pv.values[kNoSevereErrors] = static_cast<double>(counts[2]);
    pv.applicable[kNoMinorErrors] = true;
    pv.applicable[kNoModerateErrors] = true;
    pv.applicable[kNoSevereErrors] = true;
  }
  return pv;
}

}  // namespace preflens
