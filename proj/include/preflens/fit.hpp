#pragma once
// Model fitting: per-chain NUTS over the logistic posterior, fold-averaged
// weights, diagnostics, accuracy, and fitted-model JSON persistence.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <future>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "preflens/data.hpp"
#include "preflens/diagnostics.hpp"
#include "preflens/features.hpp"
#include "preflens/logistic.hpp"
#include "preflens/nuts.hpp"
#include "preflens/properties.hpp"
#include "preflens/rng.hpp"

namespace preflens {

struct FitConfig {
  double prior_scale = 0.1;  // Laplace prior scale b
  int chains = 4;
  int warmup = 500;
  int samples_per_chain = 1500;
  int folds = 10;
  double target_accept = 0.8;
  int max_tree_depth = 10;
  std::uint64_t seed = 0;
  ErrorSamplePolicy error_policy = ErrorSamplePolicy::zero_error_slots;

  void check() const {
    if (prior_scale <= 0 || chains <= 0 || warmup < 0 || samples_per_chain <= 0 ||
        folds <= 0 || target_accept <= 0 || target_accept >= 1 || max_tree_depth <= 0)
      throw std::invalid_argument("invalid fit configuration");
  }
};

struct ChainDiagnostics {
  double accept_stat = 0.0;
  long divergences = 0;
  double step_size = 0.0;
};

struct FitDiagnostics {
  std::vector<ChainDiagnostics> chains;
  std::array<double, kNumProperties> rhat{};
  std::array<double, kNumProperties> ess{};
  std::vector<std::string> warnings;
};

using Alpha = std::array<double, kNumProperties>;

struct FitResult {
  Alpha alpha{};
  FitDiagnostics diagnostics;
};

// Runs config.chains independent NUTS chains over the posterior for `design`.
// Each chain draws its generator and Laplace(0, b) initialization from
// (seed, key_prefix, chain index), so results do not depend on scheduling.
inline std::vector<ChainResult> nuts_sample(const DesignMatrix& design,
                                            const FitConfig& config,
                                            std::uint64_t seed,
                                            const std::string& key_prefix = "") {
  config.check();
  if (design.rows.empty())
    throw std::invalid_argument("nuts_sample: empty design matrix");

  const LogisticPosterior target(design, config.prior_scale);
  NutsOptions opt;
  opt.warmup = config.warmup;
  opt.samples = config.samples_per_chain;
  opt.target_accept = config.target_accept;
  opt.max_tree_depth = config.max_tree_depth;

  auto run_one = [&](int chain) {
    Rng rng = Rng::from_key(seed, key_prefix + "chain=" + std::to_string(chain));
    std::vector<double> init(kNumProperties);
    for (auto& v : init) v = rng.laplace(0.0, config.prior_scale);
    return nuts_chain(target, opt, std::move(init), std::move(rng));
  };

  std::vector<std::future<ChainResult>> futures;
  for (int c = 1; c < config.chains; ++c)
    futures.push_back(std::async(std::launch::async, run_one, c));
  std::vector<ChainResult> chains;
  chains.push_back(run_one(0));
  for (auto& f : futures) chains.push_back(f.get());
  return chains;
}

inline FitDiagnostics diagnose(const std::vector<ChainResult>& chains) {
  FitDiagnostics d;
  for (const auto& c : chains)
    d.chains.push_back({c.accept_stat, c.divergences, c.step_size});
  long total_div = 0;
  for (const auto& c : chains) total_div += c.divergences;
  for (std::size_t i = 0; i < kNumProperties; ++i) {
    d.rhat[i] = split_rhat(chains, i);
    d.ess[i] = effective_sample_size(chains, i);
    if (d.rhat[i] > 1.1)
      d.warnings.push_back("R-hat > 1.1 for property: " +
                           std::string(property_name(i)));
  }
  if (total_div > 0)
    d.warnings.push_back(std::to_string(total_div) + " divergent transitions");
  return d;
}

// Posterior mean over all kept draws across chains.
inline FitResult fit_single(const DesignMatrix& design, const FitConfig& config,
                            std::uint64_t seed, const std::string& key_prefix = "") {
  const auto chains = nuts_sample(design, config, seed, key_prefix);
  FitResult r;
  r.alpha.fill(0.0);
  long total = 0;
  for (const auto& c : chains) {
    for (const auto& draw : c.draws) {
      for (std::size_t i = 0; i < kNumProperties; ++i) r.alpha[i] += draw[i];
      ++total;
    }
  }
  for (auto& v : r.alpha) v /= static_cast<double>(total);
  r.diagnostics = diagnose(chains);
  return r;
}

// Fraction of rows whose predicted label matches; a prediction of exactly 0.5
// counts as predicting A.
inline double accuracy(const Alpha& alpha, const DesignMatrix& design) {
  if (design.rows.empty())
    throw std::invalid_argument("accuracy: empty design matrix");
  long correct = 0;
  for (std::size_t r = 0; r < design.rows.size(); ++r) {
    const int predicted_a = predict(alpha, design.rows[r]) >= 0.5 ? 1 : 0;
    if (predicted_a == design.labels[r]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(design.rows.size());
}

struct FittedPreferenceModel {
  std::string judge;
  GroupTag group;
  Alpha alpha{};
  std::vector<Alpha> fold_alphas;
  std::vector<FitDiagnostics> fold_diagnostics;
  double train_accuracy = 0.0;
  std::array<bool, kNumProperties> informative{};
  FitConfig config;
  std::string dataset_hash;
};

// 10-fold refitting: deterministic shuffle of the group's rows keyed by
// (seed, judge, group), one fit per held-out slice, final alpha = mean of the
// per-fold means. folds=1 degenerates to a single fit on all rows.
inline FittedPreferenceModel fit_folds(const std::vector<AnnotatedSample>& samples,
                                       const std::string& judge,
                                       const GroupTag& group,
                                       const FitConfig& config,
                                       const std::string& dataset_hash = "") {
  config.check();
  const DesignMatrix full = build_design_matrix(samples, judge, group,
                                                config.error_policy);
  const std::size_t n = full.size();
  if (n < static_cast<std::size_t>(config.folds))
    throw std::invalid_argument("fit_folds: fewer samples than folds in group: " +
                                group.name);

  // Order rows by sample id, then shuffle; input permutations cannot change
  // the fold assignment.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return full.sample_ids[a] < full.sample_ids[b];
  });
  const std::string unit = "judge=" + judge + "|group=" + group.name;
  Rng shuffle_rng = Rng::from_key(config.seed, unit + "|shuffle");
  shuffle(order, shuffle_rng);

  FittedPreferenceModel model;
  model.judge = judge;
  model.group = group;
  model.config = config;
  model.dataset_hash = dataset_hash;
  model.informative = informative_columns(full);
  model.alpha.fill(0.0);

  for (int fold = 0; fold < config.folds; ++fold) {
    const std::size_t lo = n * fold / config.folds;
    const std::size_t hi = n * (fold + 1) / config.folds;
    DesignMatrix train;
    for (std::size_t k = 0; k < n; ++k) {
      if (config.folds > 1 && k >= lo && k < hi) continue;  // held-out slice
      const std::size_t row = order[k];
      train.rows.push_back(full.rows[row]);
      train.labels.push_back(full.labels[row]);
      train.sample_ids.push_back(full.sample_ids[row]);
    }
    const auto fit = fit_single(train, config, config.seed,
                                unit + "|fold=" + std::to_string(fold) + "|");
    model.fold_alphas.push_back(fit.alpha);
    model.fold_diagnostics.push_back(fit.diagnostics);
    for (std::size_t i = 0; i < kNumProperties; ++i)
      model.alpha[i] += fit.alpha[i];
  }
  for (auto& v : model.alpha) v /= static_cast<double>(config.folds);
  model.train_accuracy = accuracy(model.alpha, full);
  return model;
}

// Unweighted mean of per-group accuracies; requires exactly one model per
// requested group.
inline double judge_accuracy(const std::vector<FittedPreferenceModel>& models,
                             const std::vector<GroupTag>& groups) {
  if (groups.empty()) throw std::invalid_argument("judge_accuracy: no groups");
  double sum = 0.0;
  for (const auto& g : groups) {
    const FittedPreferenceModel* found = nullptr;
    for (const auto& m : models)
      if (m.group == g) {
        if (found)
          throw std::invalid_argument("judge_accuracy: duplicate model for group: " +
                                      g.name);
        found = &m;
      }
    if (!found)
      throw std::invalid_argument("judge_accuracy: missing model for group: " + g.name);
    sum += found->train_accuracy;
  }
  return sum / static_cast<double>(groups.size());
}

// ---- model JSON persistence ----

inline std::string error_policy_to_string(ErrorSamplePolicy p) {
  return p == ErrorSamplePolicy::zero_error_slots ? "zero-error-slots" : "drop";
}

inline ErrorSamplePolicy error_policy_from_string(const std::string& s) {
  if (s == "zero-error-slots") return ErrorSamplePolicy::zero_error_slots;
  if (s == "drop") return ErrorSamplePolicy::drop;
  throw std::runtime_error("unknown error_policy: " + s);
}

inline json fit_config_to_json(const FitConfig& c) {
  return {{"prior_scale", c.prior_scale},
          {"chains", c.chains},
          {"warmup", c.warmup},
          {"samples_per_chain", c.samples_per_chain},
          {"folds", c.folds},
          {"target_accept", c.target_accept},
          {"max_tree_depth", c.max_tree_depth},
          {"seed", c.seed},
          {"error_policy", error_policy_to_string(c.error_policy)}};
}

inline FitConfig fit_config_from_json(const json& j) {
  FitConfig c;
  c.prior_scale = j.at("prior_scale").get<double>();
  c.chains = j.at("chains").get<int>();
  c.warmup = j.at("warmup").get<int>();
  c.samples_per_chain = j.at("samples_per_chain").get<int>();
  c.folds = j.at("folds").get<int>();
  c.target_accept = j.at("target_accept").get<double>();
  c.max_tree_depth = j.at("max_tree_depth").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.error_policy = error_policy_from_string(j.at("error_policy").get<std::string>());
  return c;
}

inline json model_to_json(const FittedPreferenceModel& m) {
  json j;
  j["schema_version"] = 1;
  j["judge"] = m.judge;
  j["group"] = {{"kind", m.group.kind == GroupTag::Kind::scenario ? "scenario"
                         : m.group.kind == GroupTag::Kind::unsafe ? "unsafe"
                                                                  : "query_specific"},
                {"name", m.group.name}};
  j["properties"] = json::array();
  for (std::size_t i = 0; i < kNumProperties; ++i)
    j["properties"].push_back(std::string(property_name(i)));
  j["alpha"] = m.alpha;
  j["fold_alphas"] = m.fold_alphas;
  j["diagnostics"] = json::array();
  for (const auto& d : m.fold_diagnostics) {
    json fd;
    fd["chains"] = json::array();
    for (const auto& c : d.chains)
      fd["chains"].push_back({{"accept_stat", c.accept_stat},
                              {"divergences", c.divergences},
                              {"step_size", c.step_size}});
    fd["rhat"] = d.rhat;
    fd["ess"] = d.ess;
    fd["warnings"] = d.warnings;
    j["diagnostics"].push_back(fd);
  }
  j["train_accuracy"] = m.train_accuracy;
  j["informative"] = m.informative;
  j["config"] = fit_config_to_json(m.config);
  j["dataset_hash"] = m.dataset_hash;
  return j;
}

inline FittedPreferenceModel model_from_json(const json& j) {
  FittedPreferenceModel m;
  m.judge = j.at("judge").get<std::string>();
  const std::string kind = j.at("group").at("kind").get<std::string>();
  const std::string name = j.at("group").at("name").get<std::string>();
  if (kind == "scenario") m.group = GroupTag::scenario(name);
  else if (kind == "unsafe") m.group = GroupTag::unsafe();
  else if (kind == "query_specific") m.group = GroupTag::query_specific(name);
  else throw std::runtime_error("unknown group kind: " + kind);
  m.alpha = j.at("alpha").get<Alpha>();
  m.fold_alphas = j.at("fold_alphas").get<std::vector<Alpha>>();
  for (const auto& fd : j.at("diagnostics")) {
    FitDiagnostics d;
    for (const auto& c : fd.at("chains"))
      d.chains.push_back({c.at("accept_stat").get<double>(),
                          c.at("divergences").get<long>(),
                          c.at("step_size").get<double>()});
    d.rhat = fd.at("rhat").get<std::array<double, kNumProperties>>();
    d.ess = fd.at("ess").get<std::array<double, kNumProperties>>();
    d.warnings = fd.at("warnings").get<std::vector<std::string>>();
    m.fold_diagnostics.push_back(std::move(d));
  }
  m.train_accuracy = j.at("train_accuracy").get<double>();
  m.informative = j.at("informative").get<std::array<bool, kNumProperties>>();
  m.config = fit_config_from_json(j.at("config"));
  m.dataset_hash = j.at("dataset_hash").get<std::string>();
  return m;
}

inline void save_model(const FittedPreferenceModel& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open file for writing: " + path);
  out << model_to_json(m).dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline FittedPreferenceModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  json j = json::parse(in);
  return model_from_json(j);
}

}  // namespace preflens
