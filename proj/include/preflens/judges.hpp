#pragma once
// Judge roster: the 30 open-source LLMs (with series, size, base model and
// alignment status), the two proprietary judges, and the human judge.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace preflens {

enum class JudgeKind { human, proprietary, open_source };

struct JudgeInfo {
  std::string_view name;
  JudgeKind kind;
  std::string_view series;  // empty for human/proprietary
  double size_b = 0.0;      // parameter count in billions; 0 when unknown
  bool aligned = false;     // SFT/RLHF/DPO variant (vs pretrained only)
  std::string_view base;    // base model it was trained from; empty for bases
};

inline constexpr std::array<JudgeInfo, 33> kJudges{{
    {"human", JudgeKind::human, "", 0.0, false, ""},
    {"GPT-3.5-Turbo", JudgeKind::proprietary, "", 0.0, true, ""},
    {"GPT-4-Turbo", JudgeKind::proprietary, "", 0.0, true, ""},
    {"LLaMA-2-7B", JudgeKind::open_source, "LLaMA-2", 7, false, ""},
    {"LLaMA-2-7B-Chat", JudgeKind::open_source, "LLaMA-2", 7, true, "LLaMA-2-7B"},
    {"LLaMA-2-13B", JudgeKind::open_source, "LLaMA-2", 13, false, ""},
    {"LLaMA-2-13B-Chat", JudgeKind::open_source, "LLaMA-2", 13, true, "LLaMA-2-13B"},
    {"LLaMA-2-70B", JudgeKind::open_source, "LLaMA-2", 70, false, ""},
    {"LLaMA-2-70B-Chat", JudgeKind::open_source, "LLaMA-2", 70, true, "LLaMA-2-70B"},
    {"Vicuna-7B-v1.5", JudgeKind::open_source, "Vicuna", 7, true, "LLaMA-2-7B"},
    {"Vicuna-13B-v1.5", JudgeKind::open_source, "Vicuna", 13, true, "LLaMA-2-13B"},
    {"WizardLM-13B-v1.2", JudgeKind::open_source, "WizardLM", 13, true, "LLaMA-2-13B"},
    {"WizardLM-70B-v1.0", JudgeKind::open_source, "WizardLM", 70, true, "LLaMA-2-70B"},
    {"Mistral-7B", JudgeKind::open_source, "Mistral", 7, false, ""},
    {"Mistral-7B-Inst-v0.1", JudgeKind::open_source, "Mistral", 7, true, "Mistral-7B"},
    {"Mistral-7B-Inst-v0.2", JudgeKind::open_source, "Mistral", 7, true, "Mistral-7B"},
    {"Mistral-8x7B", JudgeKind::open_source, "Mistral", 46.7, false, ""},
    {"Mistral-8x7B-Inst-v0.1", JudgeKind::open_source, "Mistral", 46.7, true,
     "Mistral-8x7B"},
    {"Tulu-2-DPO-7B", JudgeKind::open_source, "Tulu-2", 7, true, "LLaMA-2-7B"},
    {"Tulu-2-DPO-13B", JudgeKind::open_source, "Tulu-2", 13, true, "LLaMA-2-13B"},
    {"Tulu-2-DPO-70B", JudgeKind::open_source, "Tulu-2", 70, true, "LLaMA-2-70B"},
    {"Yi-6B", JudgeKind::open_source, "Yi", 6, false, ""},
    {"Yi-6B-Chat", JudgeKind::open_source, "Yi", 6, true, "Yi-6B"},
    {"Yi-34B", JudgeKind::open_source, "Yi", 34, false, ""},
    {"Yi-34B-Chat", JudgeKind::open_source, "Yi", 34, true, "Yi-34B"},
    {"Zephyr-7B-alpha", JudgeKind::open_source, "Zephyr", 7, true, "Mistral-7B"},
    {"Zephyr-7B-beta", JudgeKind::open_source, "Zephyr", 7, true, "Mistral-7B"},
    {"Qwen-7B", JudgeKind::open_source, "Qwen", 7, false, ""},
    {"Qwen-7B-Chat", JudgeKind::open_source, "Qwen", 7, true, "Qwen-7B"},
    {"Qwen-14B", JudgeKind::open_source, "Qwen", 14, false, ""},
    {"Qwen-14B-Chat", JudgeKind::open_source, "Qwen", 14, true, "Qwen-14B"},
    {"Qwen-72B", JudgeKind::open_source, "Qwen", 72, false, ""},
    {"Qwen-72B-Chat", JudgeKind::open_source, "Qwen", 72, true, "Qwen-72B"},
}};

inline constexpr std::array<std::string_view, 8> kSeries{
    "LLaMA-2", "Vicuna", "WizardLM", "Mistral", "Tulu-2", "Yi", "Zephyr", "Qwen"};

constexpr std::optional<JudgeInfo> judge_info(std::string_view name) {
  for (const auto& j : kJudges)
    if (j.name == name) return j;
  return std::nullopt;
}

// Named judge groups used in similarity analyses. "<14B" and ">30B" divide
// the open-source models by parameter count (boundary models such as exactly
// 14B belong to neither); a series name selects that series' models.
inline std::vector<std::string> judge_group(std::string_view group) {
  std::vector<std::string> out;
  if (group == "<14B") {
    for (const auto& j : kJudges)
      if (j.kind == JudgeKind::open_source && j.size_b < 14)
        out.emplace_back(j.name);
    return out;
  }
  if (group == ">30B") {
    for (const auto& j : kJudges)
      if (j.kind == JudgeKind::open_source && j.size_b > 30)
        out.emplace_back(j.name);
    return out;
  }
  for (auto s : kSeries) {
    if (group == s) {
      for (const auto& j : kJudges)
        if (j.series == s) out.emplace_back(j.name);
      return out;
    }
  }
  throw std::invalid_argument("unknown judge group: " + std::string(group));
}

inline std::vector<std::string> all_judges() {
  std::vector<std::string> out;
  for (const auto& j : kJudges) out.emplace_back(j.name);
  return out;
}

inline std::vector<std::string> open_source_judges() {
  std::vector<std::string> out;
  for (const auto& j : kJudges)
    if (j.kind == JudgeKind::open_source) out.emplace_back(j.name);
  return out;
}

}  // namespace preflens
