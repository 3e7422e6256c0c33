#pragma once
// Canonical dataset schema: annotated samples with two responses, per-judge
// preference labels, and grouping metadata. Storage format is newline-delimited
// JSON, one sample per line; see README for the field reference.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "preflens/properties.hpp"
#include "preflens/rng.hpp"

namespace preflens {

using json = nlohmann::json;

inline constexpr std::array<std::string_view, 10> kScenarios{
    "Advice",           "Code",          "Communication", "Creative Writing",
    "Daily Tasks",      "Exam Questions", "Functional Writing",
    "Knowledge-Aware",  "NLP Tasks",     "Others"};

inline constexpr std::string_view kUnsafeGroupName = "Unsafe Query";

// Query-specific prerequisites; the group names double as filter names.
inline constexpr std::array<std::string_view, 5> kPrerequisites{
    "with explicit constraints", "unclear intent", "show subjective stances",
    "express feelings", "contain mistakes or bias"};

struct GroupTag {
  enum class Kind { scenario, unsafe, query_specific };

  Kind kind = Kind::scenario;
  std::string name;

  static GroupTag scenario(std::string n) { return {Kind::scenario, std::move(n)}; }
  static GroupTag unsafe() { return {Kind::unsafe, std::string(kUnsafeGroupName)}; }
  static GroupTag query_specific(std::string n) {
    return {Kind::query_specific, std::move(n)};
  }

  // Resolves a group name of any kind; nullopt for unknown names.
  static std::optional<GroupTag> parse(std::string_view n) {
    if (n == kUnsafeGroupName) return unsafe();
    for (auto s : kScenarios)
      if (n == s) return scenario(std::string(s));
    for (auto p : kPrerequisites)
      if (n == p) return query_specific(std::string(p));
    return std::nullopt;
  }

  bool operator==(const GroupTag&) const = default;
  auto operator<=>(const GroupTag&) const = default;
};

// The 11 scenario-wise fitting groups: 10 scenarios plus the unsafe group.
inline std::vector<GroupTag> scenario_groups() {
  std::vector<GroupTag> out;
  for (auto s : kScenarios) out.push_back(GroupTag::scenario(std::string(s)));
  out.push_back(GroupTag::unsafe());
  return out;
}

enum class ErrorType { factual, query_contradiction, math, code };
enum class Severity { minor, moderate, severe };

enum class StanceLabel {
  strongly_supported,
  weakly_supported,
  neutral,
  weakly_opposed,
  strongly_opposed
};

enum class MistakeLabel {
  pointed_out_and_corrected,
  corrected_without_being_pointed_out,
  pointed_out_but_not_corrected,
  neither_pointed_out_nor_corrected
};

enum class PrefLabel { A, B };

namespace detail {

template <typename Enum, std::size_t N>
struct EnumNames {
  std::array<std::pair<Enum, std::string_view>, N> entries;

  std::string_view name(Enum e) const {
    for (const auto& [v, s] : entries)
      if (v == e) return s;
    throw std::logic_error("unknown enum value");
  }
  std::optional<Enum> parse(std::string_view s) const {
    for (const auto& [v, n] : entries)
      if (n == s) return v;
    return std::nullopt;
  }
};

inline constexpr EnumNames<ErrorType, 4> kErrorTypeNames{{{
    {ErrorType::factual, "factual"},
    {ErrorType::query_contradiction, "query_contradiction"},
    {ErrorType::math, "math"},
    {ErrorType::code, "code"},
}}};

inline constexpr EnumNames<Severity, 3> kSeverityNames{{{
    {Severity::minor, "minor"},
    {Severity::moderate, "moderate"},
    {Severity::severe, "severe"},
}}};

inline constexpr EnumNames<StanceLabel, 5> kStanceNames{{{
    {StanceLabel::strongly_supported, "strongly supported"},
    {StanceLabel::weakly_supported, "weakly supported"},
    {StanceLabel::neutral, "neutral"},
    {StanceLabel::weakly_opposed, "weakly opposed"},
    {StanceLabel::strongly_opposed, "strongly opposed"},
}}};

inline constexpr EnumNames<MistakeLabel, 4> kMistakeNames{{{
    {MistakeLabel::pointed_out_and_corrected, "pointed out and corrected"},
    {MistakeLabel::corrected_without_being_pointed_out,
     "corrected without being pointed out"},
    {MistakeLabel::pointed_out_but_not_corrected, "pointed out but not corrected"},
    {MistakeLabel::neither_pointed_out_nor_corrected,
     "neither pointed out nor corrected"},
}}};

}  // namespace detail

inline std::string_view to_string(ErrorType e) { return detail::kErrorTypeNames.name(e); }
inline std::string_view to_string(Severity s) { return detail::kSeverityNames.name(s); }
inline std::string_view to_string(StanceLabel s) { return detail::kStanceNames.name(s); }
inline std::string_view to_string(MistakeLabel m) { return detail::kMistakeNames.name(m); }
inline std::string_view to_string(PrefLabel l) { return l == PrefLabel::A ? "A" : "B"; }

struct ErrorRecord {
  std::string description;
  ErrorType type = ErrorType::factual;
  Severity severity = Severity::minor;

  bool operator==(const ErrorRecord&) const = default;
};

struct QueryMeta {
  std::string query_text;
  GroupTag scenario = GroupTag::unsafe();  // kind scenario or unsafe only
  bool clear_intent = true;
  bool expresses_feelings = false;
  std::vector<std::string> constraints;
  std::vector<std::string> stances;
  std::vector<std::string> mistakes;

  bool operator==(const QueryMeta&) const = default;
};

// Second-round annotations for the query-specific properties. The list fields
// are index-aligned with the corresponding QueryMeta lists.
struct QuerySpecificRaw {
  std::optional<int> clarify_intent;   // 0..3, applicable when !clear_intent
  std::optional<int> show_empathetic;  // 0..3, applicable when expresses_feelings
  std::vector<int> constraints;        // per-constraint 0..3
  std::vector<StanceLabel> stances;
  std::vector<MistakeLabel> mistakes;

  bool operator==(const QuerySpecificRaw&) const = default;
};

struct ResponseAnnotation {
  std::string text;
  // Raw basic ratings keyed by data-file name; "repetitive" is stored raw and
  // inverted to non-repetitive during property-vector assembly.
  std::map<std::string, int> ratings;
  long word_count = 0;
  bool error_check = true;  // error annotation applicable to this response
  std::vector<ErrorRecord> errors;
  std::optional<QuerySpecificRaw> query_specific;

  bool operator==(const ResponseAnnotation&) const = default;
};

struct AnnotatedSample {
  std::string id;
  QueryMeta meta;
  ResponseAnnotation resp_a;
  ResponseAnnotation resp_b;
  std::map<std::string, PrefLabel> labels;  // judge name -> preference
  // Per-judge first-token log-probs [o1_A, o1_B, o2_A, o2_B]; o2 values come
  // from the order-swapped round.
  std::map<std::string, std::array<double, 4>> logprobs;

  bool operator==(const AnnotatedSample&) const = default;
};

// ---- JSON (de)serialization ----
// Parsers throw std::runtime_error naming the offending field; the dataset
// loader turns those into line-numbered diagnostics.

namespace detail {

inline const json& require_field(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) throw std::runtime_error(std::string("missing field: ") + field);
  return *it;
}

inline void reject_unknown_keys(const json& j,
                                std::initializer_list<std::string_view> known,
                                const char* where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (auto k : known)
      if (key == k) ok = true;
    if (!ok)
      throw std::runtime_error(std::string("unknown field in ") + where + ": " + key);
  }
}

inline int int_field(const json& j, const char* field) {
  const json& v = require_field(j, field);
  if (!v.is_number_integer())
    throw std::runtime_error(std::string(field) + ": expected integer");
  return v.get<int>();
}

inline bool bool_field(const json& j, const char* field) {
  const json& v = require_field(j, field);
  if (!v.is_boolean())
    throw std::runtime_error(std::string(field) + ": expected boolean");
  return v.get<bool>();
}

inline std::string string_field(const json& j, const char* field) {
  const json& v = require_field(j, field);
  if (!v.is_string())
    throw std::runtime_error(std::string(field) + ": expected string");
  return v.get<std::string>();
}

inline std::vector<std::string> string_list(const json& v, const char* field) {
  if (!v.is_array())
    throw std::runtime_error(std::string(field) + ": expected array");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string())
      throw std::runtime_error(std::string(field) + ": expected array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline bool known_rating_key(std::string_view key) {
  for (std::size_t i = 0; i < kNumProperties; ++i)
    if (basic_rating_required(i) && key == basic_rating_key(i)) return true;
  return false;
}

}  // namespace detail

inline ResponseAnnotation response_from_json(const json& j, const std::string& which) {
  if (!j.is_object()) throw std::runtime_error(which + ": expected object");
  detail::reject_unknown_keys(
      j, {"text", "ratings", "word_count", "error_check", "errors", "query_specific"},
      which.c_str());
  ResponseAnnotation r;
  r.text = detail::string_field(j, "text");

  const json& ratings = detail::require_field(j, "ratings");
  if (!ratings.is_object())
    throw std::runtime_error(which + ".ratings: expected object");
  for (const auto& [key, value] : ratings.items()) {
    if (!detail::known_rating_key(key))
      throw std::runtime_error(which + ".ratings: unknown property name: " + key);
    if (!value.is_number_integer())
      throw std::runtime_error(which + ".ratings." + key + ": expected integer");
    r.ratings[key] = value.get<int>();
  }

  const json& wc = detail::require_field(j, "word_count");
  if (!wc.is_number_integer() || wc.get<long>() < 0)
    throw std::runtime_error(which + ".word_count: expected nonnegative integer");
  r.word_count = wc.get<long>();

  r.error_check = detail::bool_field(j, "error_check");

  const json& errors = detail::require_field(j, "errors");
  if (!errors.is_array()) throw std::runtime_error(which + ".errors: expected array");
  for (const auto& e : errors) {
    if (!e.is_object())
      throw std::runtime_error(which + ".errors[]: expected object");
    detail::reject_unknown_keys(e, {"desc", "type", "severity"}, "errors[]");
    ErrorRecord rec;
    rec.description = detail::string_field(e, "desc");
    auto type = detail::kErrorTypeNames.parse(detail::string_field(e, "type"));
    if (!type)
      throw std::runtime_error(which + ".errors[].type: unknown error type");
    rec.type = *type;
    auto sev = detail::kSeverityNames.parse(detail::string_field(e, "severity"));
    if (!sev)
      throw std::runtime_error(which + ".errors[].severity: unknown severity");
    rec.severity = *sev;
    r.errors.push_back(std::move(rec));
  }

  if (auto qs = j.find("query_specific"); qs != j.end()) {
    if (!qs->is_object())
      throw std::runtime_error(which + ".query_specific: expected object");
    detail::reject_unknown_keys(
        *qs, {"clarify_intent", "show_empathetic", "constraints", "stances", "mistakes"},
        "query_specific");
    QuerySpecificRaw raw;
    if (qs->contains("clarify_intent"))
      raw.clarify_intent = detail::int_field(*qs, "clarify_intent");
    if (qs->contains("show_empathetic"))
      raw.show_empathetic = detail::int_field(*qs, "show_empathetic");
    if (auto c = qs->find("constraints"); c != qs->end()) {
      if (!c->is_array())
        throw std::runtime_error(which + ".query_specific.constraints: expected array");
      for (const auto& e : *c) {
        if (!e.is_number_integer())
          throw std::runtime_error(
              which + ".query_specific.constraints: expected integers");
        raw.constraints.push_back(e.get<int>());
      }
    }
    if (auto s = qs->find("stances"); s != qs->end()) {
      for (const auto& name :
           detail::string_list(*s, "query_specific.stances")) {
        auto label = detail::kStanceNames.parse(name);
        if (!label)
          throw std::runtime_error(
              which + ".query_specific.stances: unknown stance label: " + name);
        raw.stances.push_back(*label);
      }
    }
    if (auto m = qs->find("mistakes"); m != qs->end()) {
      for (const auto& name :
           detail::string_list(*m, "query_specific.mistakes")) {
        auto label = detail::kMistakeNames.parse(name);
        if (!label)
          throw std::runtime_error(
              which + ".query_specific.mistakes: unknown mistake label: " + name);
        raw.mistakes.push_back(*label);
      }
    }
    r.query_specific = std::move(raw);
  }
  return r;
}

inline json response_to_json(const ResponseAnnotation& r) {
  json j;
  j["text"] = r.text;
  j["ratings"] = json::object();
  for (const auto& [k, v] : r.ratings) j["ratings"][k] = v;
  j["word_count"] = r.word_count;
  j["error_check"] = r.error_check;
  j["errors"] = json::array();
  for (const auto& e : r.errors)
    j["errors"].push_back({{"desc", e.description},
                           {"type", std::string(to_string(e.type))},
                           {"severity", std::string(to_string(e.severity))}});
  if (r.query_specific) {
    json qs = json::object();
    const auto& raw = *r.query_specific;
    if (raw.clarify_intent) qs["clarify_intent"] = *raw.clarify_intent;
    if (raw.show_empathetic) qs["show_empathetic"] = *raw.show_empathetic;
    if (!raw.constraints.empty()) qs["constraints"] = raw.constraints;
    if (!raw.stances.empty()) {
      json arr = json::array();
      for (auto s : raw.stances) arr.push_back(std::string(to_string(s)));
      qs["stances"] = arr;
    }
    if (!raw.mistakes.empty()) {
      json arr = json::array();
      for (auto m : raw.mistakes) arr.push_back(std::string(to_string(m)));
      qs["mistakes"] = arr;
    }
    j["query_specific"] = qs;
  }
  return j;
}

inline AnnotatedSample sample_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("record: expected object");
  detail::reject_unknown_keys(
      j, {"id", "query", "scenario", "prereq", "resp_a", "resp_b", "labels", "logprobs"},
      "record");
  AnnotatedSample s;
  s.id = detail::string_field(j, "id");
  s.meta.query_text = detail::string_field(j, "query");

  const std::string scenario = detail::string_field(j, "scenario");
  auto tag = GroupTag::parse(scenario);
  if (!tag || tag->kind == GroupTag::Kind::query_specific)
    throw std::runtime_error("scenario: unknown scenario: " + scenario);
  s.meta.scenario = *tag;

  const json& prereq = detail::require_field(j, "prereq");
  if (!prereq.is_object()) throw std::runtime_error("prereq: expected object");
  detail::reject_unknown_keys(
      prereq, {"clear_intent", "expresses_feelings", "constraints", "stances", "mistakes"},
      "prereq");
  s.meta.clear_intent = detail::bool_field(prereq, "clear_intent");
  s.meta.expresses_feelings = detail::bool_field(prereq, "expresses_feelings");
  s.meta.constraints =
      detail::string_list(detail::require_field(prereq, "constraints"), "prereq.constraints");
  s.meta.stances =
      detail::string_list(detail::require_field(prereq, "stances"), "prereq.stances");
  s.meta.mistakes =
      detail::string_list(detail::require_field(prereq, "mistakes"), "prereq.mistakes");

  s.resp_a = response_from_json(detail::require_field(j, "resp_a"), "resp_a");
  s.resp_b = response_from_json(detail::require_field(j, "resp_b"), "resp_b");

  const json& labels = detail::require_field(j, "labels");
  if (!labels.is_object()) throw std::runtime_error("labels: expected object");
  for (const auto& [judge, value] : labels.items()) {
    if (!value.is_string() || (value != "A" && value != "B"))
      throw std::runtime_error("labels." + judge + R"(: expected "A" or "B")");
    s.labels[judge] = value == "A" ? PrefLabel::A : PrefLabel::B;
  }

  if (auto lp = j.find("logprobs"); lp != j.end()) {
    if (!lp->is_object()) throw std::runtime_error("logprobs: expected object");
    for (const auto& [judge, value] : lp->items()) {
      if (!value.is_array() || value.size() != 4)
        throw std::runtime_error("logprobs." + judge + ": expected array of 4 numbers");
      std::array<double, 4> quad{};
      for (int i = 0; i < 4; ++i) {
        if (!value[i].is_number())
          throw std::runtime_error("logprobs." + judge + ": expected numbers");
        quad[i] = value[i].get<double>();
        if (!std::isfinite(quad[i]))
          throw std::runtime_error("logprobs." + judge + ": non-finite value");
      }
      s.logprobs[judge] = quad;
    }
  }
  return s;
}

inline json sample_to_json(const AnnotatedSample& s) {
  json j;
  j["id"] = s.id;
  j["query"] = s.meta.query_text;
  j["scenario"] = s.meta.scenario.name;
  j["prereq"] = {{"clear_intent", s.meta.clear_intent},
                 {"expresses_feelings", s.meta.expresses_feelings},
                 {"constraints", s.meta.constraints},
                 {"stances", s.meta.stances},
                 {"mistakes", s.meta.mistakes}};
  j["resp_a"] = response_to_json(s.resp_a);
  j["resp_b"] = response_to_json(s.resp_b);
  j["labels"] = json::object();
  for (const auto& [judge, label] : s.labels)
    j["labels"][judge] = std::string(to_string(label));
  if (!s.logprobs.empty()) {
    j["logprobs"] = json::object();
    for (const auto& [judge, quad] : s.logprobs) j["logprobs"][judge] = quad;
  }
  return j;
}

// ---- validation ----

namespace detail {

inline void check_response(const ResponseAnnotation& r, const QueryMeta& meta,
                           const std::string& which,
                           std::vector<std::string>& out) {
  for (const auto& [key, value] : r.ratings)
    if (value < 0 || value > 3)
      out.push_back(which + ": basic_ratings out of range: " + key);
  if (!r.error_check && !r.errors.empty())
    out.push_back(which + ": errors present but error_check is false");
  if (r.query_specific) {
    const auto& qs = *r.query_specific;
    if (qs.clarify_intent && (*qs.clarify_intent < 0 || *qs.clarify_intent > 3))
      out.push_back(which + ": clarify_intent rating out of range");
    if (qs.show_empathetic && (*qs.show_empathetic < 0 || *qs.show_empathetic > 3))
      out.push_back(which + ": show_empathetic rating out of range");
    for (int c : qs.constraints)
      if (c < 0 || c > 3)
        out.push_back(which + ": constraint rating out of range");
    if (!qs.constraints.empty() && qs.constraints.size() != meta.constraints.size())
      out.push_back(which + ": constraint ratings do not match prereq constraints");
    if (!qs.stances.empty() && qs.stances.size() != meta.stances.size())
      out.push_back(which + ": stance labels do not match prereq stances");
    if (!qs.mistakes.empty() && qs.mistakes.size() != meta.mistakes.size())
      out.push_back(which + ": mistake labels do not match prereq mistakes");
  }
}

}  // namespace detail

// Semantic invariants beyond JSON shape. Empty result means the sample is valid.
inline std::vector<std::string> validate_sample(const AnnotatedSample& s) {
  std::vector<std::string> out;
  if (s.id.empty()) out.push_back("id: empty");
  detail::check_response(s.resp_a, s.meta, "resp_a", out);
  detail::check_response(s.resp_b, s.meta, "resp_b", out);
  return out;
}

// ---- dataset IO ----

struct DatasetLoadResult {
  std::vector<AnnotatedSample> samples;   // valid records, file order preserved
  std::vector<std::string> diagnostics;   // "line N: message" per rejected record
};

inline DatasetLoadResult load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  DatasetLoadResult result;
  std::string line;
  for (long line_no = 1; std::getline(in, line); ++line_no) {
    if (line.empty()) continue;
    try {
      json j = json::parse(line);
      AnnotatedSample s = sample_from_json(j);
      auto issues = validate_sample(s);
      if (!issues.empty()) throw std::runtime_error(issues.front());
      result.samples.push_back(std::move(s));
    } catch (const std::exception& e) {
      result.diagnostics.push_back("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return result;
}

inline void save_dataset(const std::string& path,
                         const std::vector<AnnotatedSample>& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  for (const auto& s : samples) out << sample_to_json(s).dump() << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

// ---- grouping ----

inline bool in_group(const AnnotatedSample& s, const GroupTag& tag) {
  switch (tag.kind) {
    case GroupTag::Kind::scenario:
      return s.meta.scenario == tag;
    case GroupTag::Kind::unsafe:
      return s.meta.scenario.kind == GroupTag::Kind::unsafe;
    case GroupTag::Kind::query_specific:
      if (tag.name == "with explicit constraints") return !s.meta.constraints.empty();
      if (tag.name == "unclear intent") return !s.meta.clear_intent;
      if (tag.name == "show subjective stances") return !s.meta.stances.empty();
      if (tag.name == "express feelings") return s.meta.expresses_feelings;
      if (tag.name == "contain mistakes or bias") return !s.meta.mistakes.empty();
      throw std::invalid_argument("unknown query_specific group: " + tag.name);
  }
  throw std::logic_error("unreachable");
}

inline std::vector<AnnotatedSample> filter_group(
    const std::vector<AnnotatedSample>& samples, const GroupTag& tag) {
  if (tag.kind == GroupTag::Kind::scenario && !GroupTag::parse(tag.name))
    throw std::invalid_argument("unknown scenario: " + tag.name);
  std::vector<AnnotatedSample> out;
  for (const auto& s : samples)
    if (in_group(s, tag)) out.push_back(s);
  return out;
}

// ---- content fingerprint ----

// FNV-1a 64 over the raw file bytes, hex-encoded. Stamped into fitted models
// and reports so outputs are traceable to their exact input.
inline std::string content_hash_hex(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file for hashing: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return std::string(out);
}

}  // namespace preflens
