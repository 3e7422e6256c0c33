// Benchmark-manipulation inputs: model-relabeled preference pairs for DPO
// export, and system messages steering generation toward a judge's most or
// least preferred properties.
#pragma once

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "preflens/analytics.hpp"
#include "preflens/data.hpp"
#include "preflens/features.hpp"
#include "preflens/fit.hpp"
#include "preflens/logistic.hpp"
#include "preflens/properties.hpp"

namespace preflens {

// Which fitted model scores a sample: its own scenario group's model, or
// that with a fallback to the Others model when the scenario has none.
enum class GroupResolution { scenario_else_others, scenario_only };

struct RelabelConfig {
  std::string judge;
  // Predictions within [0.5 - band, 0.5 + band] (closed) are dropped: both
  // endpoints count as "within" the band.
  double band_halfwidth = 0.15;
  bool invert = false;
  GroupResolution resolution = GroupResolution::scenario_else_others;

  void check() const {
    if (judge.empty()) throw std::invalid_argument("relabel: judge is required");
    if (!(band_halfwidth >= 0.0) || band_halfwidth >= 0.5)
      throw std::invalid_argument("relabel: band_halfwidth must be in [0, 0.5)");
  }
};

struct SyntheticPair {
  std::string id;
  std::string prompt;
  std::string chosen;
  std::string rejected;
  // Model probability that the first response is preferred, before any
  // inversion. Always outside the exclusion band.
  double prob_a = 0.0;
  GroupTag group = GroupTag::unsafe();
};

namespace manipulate_detail {

inline const FittedPreferenceModel& resolve_model(
    const ModelsByJudgeGroup& models, const RelabelConfig& config,
    const GroupTag& group) {
  auto j = models.find(config.judge);
  if (j == models.end())
    throw std::invalid_argument("relabel: no models for judge: " + config.judge);
  auto g = j->second.find(group);
  if (g == j->second.end() &&
      config.resolution == GroupResolution::scenario_else_others) {
    g = j->second.find(GroupTag::scenario("Others"));
  }
  if (g == j->second.end())
    throw std::invalid_argument("relabel: no model for group: " + group.name);
  return g->second;
}

}  // namespace manipulate_detail

// Relabels every sample with its group model's prediction, dropping those
// inside the exclusion band. invert swaps chosen and rejected texts but
// leaves the recorded probability untouched. Input order is preserved.
inline std::vector<SyntheticPair> relabel(
    const ModelsByJudgeGroup& models, const std::vector<AnnotatedSample>& samples,
    const RelabelConfig& config) {
  config.check();
  std::vector<SyntheticPair> out;
  out.reserve(samples.size());
  for (const AnnotatedSample& s : samples) {
    const FittedPreferenceModel& model =
        manipulate_detail::resolve_model(models, config, s.meta.scenario);
    const double p = predict(model.alpha, sample_feature(s));
    if (p >= 0.5 - config.band_halfwidth && p <= 0.5 + config.band_halfwidth)
      continue;
    SyntheticPair pair;
    pair.id = s.id;
    pair.prompt = s.meta.query_text;
    pair.prob_a = p;
    pair.group = s.meta.scenario;
    const bool first_chosen = (p > 0.5) != config.invert;
    pair.chosen = first_chosen ? s.resp_a.text : s.resp_b.text;
    pair.rejected = first_chosen ? s.resp_b.text : s.resp_a.text;
    out.push_back(std::move(pair));
  }
  return out;
}

enum class RankDirection { top, last };

inline std::string_view to_string(RankDirection d) {
  return d == RankDirection::top ? "top" : "last";
}

// Deterministic system message naming the k best (or worst) ranked
// properties with their plain-language descriptions. k = 0 yields the bare
// header. The wording is this library's own fixed template.
inline std::string compose_system_message(const PreferenceProfile& profile,
                                          const GroupTag& scenario, std::size_t k,
                                          RankDirection direction) {
  if (!(profile.group == scenario))
    throw std::invalid_argument("system message: profile was fitted for group " +
                                profile.group.name + ", not " + scenario.name);
  const Ranking ranking = rank_properties(profile, k);
  const std::vector<std::size_t>& picks =
      direction == RankDirection::top ? ranking.top : ranking.last;
  std::string out = "When answering, prioritize the following qualities:";
  for (std::size_t i = 0; i < picks.size(); ++i) {
    out += i == 0 ? " " : "; ";
    out += property_name(picks[i]);
    out += ": ";
    out += property_description(picks[i]);
  }
  if (!picks.empty()) out += ".";
  return out;
}

// Writes newline-delimited JSON records {prompt, chosen, rejected}, sorted
// by sample id. Reruns over the same pairs produce identical bytes.
inline void export_dpo_pairs(const std::vector<SyntheticPair>& pairs,
                             const std::string& path) {
  if (pairs.empty()) throw std::invalid_argument("dpo export: no pairs");
  std::vector<const SyntheticPair*> sorted;
  sorted.reserve(pairs.size());
  for (const SyntheticPair& p : pairs) sorted.push_back(&p);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SyntheticPair* a, const SyntheticPair* b) {
                     return a->id < b->id;
                   });
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const SyntheticPair* p : sorted) {
    nlohmann::ordered_json j;
    j["prompt"] = p->prompt;
    j["chosen"] = p->chosen;
    j["rejected"] = p->rejected;
    out << j.dump() << '\n';
  }
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace preflens
