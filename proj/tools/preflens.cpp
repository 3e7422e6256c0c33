// preflens: dissect pairwise preference datasets into per-property weights.
//
// Subcommands cover the full pipeline: dataset validation, per judge/group
// model fitting, preference profiles, judge similarity, error sensitivity,
// accuracy tables, model-based relabeling with DPO export, ranked-property
// system messages, synthetic data generation, and report emission.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <preflens/preflens.hpp>

namespace fs = std::filesystem;
using namespace preflens;

namespace {

std::vector<AnnotatedSample> load_or_die(const std::string& path, bool strict) {
  DatasetLoadResult r = load_dataset(path);
  for (const std::string& d : r.diagnostics) std::cerr << path << ": " << d << "\n";
  if (strict && !r.diagnostics.empty())
    throw std::runtime_error(std::to_string(r.diagnostics.size()) +
                             " invalid lines in " + path);
  return std::move(r.samples);
}

// Loads every *.model.json under dir (sorted for determinism).
ModelsByJudgeGroup load_models_dir(const std::string& dir) {
  if (!fs::is_directory(dir))
    throw std::runtime_error("not a directory: " + dir);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() > 11 && name.substr(name.size() - 11) == ".model.json")
      paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  ModelsByJudgeGroup models;
  for (const fs::path& p : paths) {
    FittedPreferenceModel m = load_model(p.string());
    models[m.judge][m.group] = std::move(m);
  }
  return models;
}

GroupTag parse_group(const std::string& name) {
  const std::optional<GroupTag> tag = GroupTag::parse(name);
  if (!tag) throw std::runtime_error("unknown group: " + name);
  return *tag;
}

std::vector<GroupTag> parse_groups(const std::vector<std::string>& names) {
  if (names.empty()) return scenario_groups();
  std::vector<GroupTag> out;
  out.reserve(names.size());
  for (const std::string& n : names) out.push_back(parse_group(n));
  return out;
}

std::vector<std::string> judges_in(const ModelsByJudgeGroup& models,
                                   const std::vector<std::string>& filter) {
  if (!filter.empty()) return filter;
  std::vector<std::string> out;
  for (const auto& [judge, _] : models) out.push_back(judge);
  return out;
}

std::vector<std::string> judges_in_dataset(const std::vector<AnnotatedSample>& samples) {
  std::set<std::string> seen;
  for (const AnnotatedSample& s : samples)
    for (const auto& [judge, _] : s.labels) seen.insert(judge);
  return {seen.begin(), seen.end()};
}

// Flags override config-file values, which override defaults.
struct FitFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> chains, warmup, samples, folds, max_tree_depth;
  std::optional<double> prior_scale, target_accept;
  std::optional<std::string> error_policy;
  bool fast = false;

  FitConfig resolve() const {
    RunConfig rc;
    if (!config_path.empty()) rc = load_config(config_path, rc);
    FitConfig c = rc.fit;
    if (fast) {
      c.chains = 2;
      c.samples_per_chain = 500;
    }
    if (seed) c.seed = *seed;
    if (chains) c.chains = *chains;
    if (warmup) c.warmup = *warmup;
    if (samples) c.samples_per_chain = *samples;
    if (folds) c.folds = *folds;
    if (max_tree_depth) c.max_tree_depth = *max_tree_depth;
    if (prior_scale) c.prior_scale = *prior_scale;
    if (target_accept) c.target_accept = *target_accept;
    if (error_policy) c.error_policy = error_policy_from_string(*error_policy);
    c.check();
    return c;
  }
};

void add_fit_flags(CLI::App* cmd, FitFlags& f) {
  cmd->add_option("--config", f.config_path, "Config file (key = value lines)");
  cmd->add_option("--seed", f.seed, "Base RNG seed");
  cmd->add_option("--chains", f.chains, "NUTS chains per fit");
  cmd->add_option("--warmup", f.warmup, "Warmup iterations per chain");
  cmd->add_option("--samples", f.samples, "Kept samples per chain");
  cmd->add_option("--folds", f.folds, "Cross-validation folds");
  cmd->add_option("--max-tree-depth", f.max_tree_depth, "NUTS max tree depth");
  cmd->add_option("--prior-scale", f.prior_scale, "Laplace prior scale b");
  cmd->add_option("--target-accept", f.target_accept, "Dual-averaging target");
  cmd->add_option("--error-policy", f.error_policy,
                  "zero-error-slots or drop (unchecked-error samples)")
      ->check(CLI::IsMember({"zero-error-slots", "drop"}));
  cmd->add_flag("--fast", f.fast, "2 chains x 500 samples");
}

int cmd_validate(const std::string& data) {
  DatasetLoadResult r = load_dataset(data);
  for (const std::string& d : r.diagnostics) std::cout << d << "\n";
  std::cout << r.samples.size() << " samples loaded, " << r.diagnostics.size()
            << " lines rejected\n";
  return r.diagnostics.empty() ? 0 : 1;
}

int cmd_fit(const std::string& data, std::vector<std::string> judges,
            const std::vector<std::string>& group_names, const std::string& out,
            const FitFlags& flags) {
  const FitConfig config = flags.resolve();
  const std::vector<AnnotatedSample> samples = load_or_die(data, false);
  const std::string hash = content_hash_hex(data);
  const bool groups_explicit = !group_names.empty();
  const std::vector<GroupTag> groups = parse_groups(group_names);
  if (judges.empty()) judges = judges_in_dataset(samples);
  fs::create_directories(out);

  for (const std::string& judge : judges) {
    for (const GroupTag& group : groups) {
      long rows = 0;
      for (const AnnotatedSample& s : samples)
        if (in_group(s, group) && s.labels.count(judge)) ++rows;
      if (rows < config.folds) {
        if (groups_explicit)
          throw std::runtime_error("judge " + judge + " on " + group.name + ": " +
                                   std::to_string(rows) + " samples < " +
                                   std::to_string(config.folds) + " folds");
        std::cout << judge << " on " << group.name << ": skipped (" << rows
                  << " samples)\n";
        continue;
      }
      FittedPreferenceModel model = fit_folds(samples, judge, group, config, hash);
      const fs::path path = fs::path(out) / (sanitize_filename(judge) + "-" +
                                             sanitize_filename(group.name) +
                                             ".model.json");
      save_model(model, path.string());
      double max_rhat = 0.0;
      long divergences = 0;
      for (const FitDiagnostics& d : model.fold_diagnostics) {
        for (double r : d.rhat)
          if (std::isfinite(r)) max_rhat = std::max(max_rhat, r);
        for (const ChainDiagnostics& c : d.chains) divergences += c.divergences;
      }
      std::printf("%s on %s: %ld samples, train accuracy %.2f%%, max R-hat %.3f, %ld divergences -> %s\n",
                  judge.c_str(), group.name.c_str(), rows,
                  model.train_accuracy * 100.0, max_rhat, divergences,
                  path.string().c_str());
    }
  }
  return 0;
}

int cmd_profile(const std::string& models_dir, const std::vector<std::string>& judges,
                const std::vector<std::string>& group_names, std::size_t k) {
  const ModelsByJudgeGroup models = load_models_dir(models_dir);
  const std::vector<GroupTag> groups =
      group_names.empty() ? std::vector<GroupTag>{} : parse_groups(group_names);
  for (const std::string& judge : judges_in(models, judges)) {
    auto it = models.find(judge);
    if (it == models.end()) throw std::runtime_error("no models for judge: " + judge);
    for (const auto& [group, model] : it->second) {
      if (!groups.empty() &&
          std::find(groups.begin(), groups.end(), group) == groups.end())
        continue;
      const PreferenceProfile profile = profile_of(model);
      const Ranking ranking = rank_properties(profile, k);
      std::cout << judge << " on " << group.name << "\n";
      const auto print_list = [&](const char* tag, const std::vector<std::size_t>& ps) {
        std::cout << "  " << tag << ":";
        for (std::size_t p : ps)
          std::printf(" %s (%.1f%%)", std::string(property_name(p)).c_str(),
                      profile.degree[p] * 100.0);
        std::cout << "\n";
      };
      print_list("top", ranking.top);
      print_list("last", ranking.last);
      const Ranking full = rank_properties(profile, kNumProperties);
      for (std::size_t p : full.top)
        std::printf("    %-28s %6.2f%%\n", std::string(property_name(p)).c_str(),
                    profile.degree[p] * 100.0);
    }
  }
  return 0;
}

int cmd_similarity(const std::string& models_dir, const std::vector<std::string>& tokens,
                   const std::vector<std::string>& judges,
                   const std::vector<std::string>& group_set_names) {
  const ModelsByJudgeGroup models = load_models_dir(models_dir);
  const std::vector<GroupTag> group_set = parse_groups(group_set_names);

  bool want_intra = false, want_inter = false;
  std::vector<std::string> divisions;
  for (const std::string& t : tokens) {
    if (t == "<intra>") want_intra = true;
    else if (t == "<inter>") want_inter = true;
    else divisions.push_back(t);
  }

  if (divisions.empty() && !want_intra && !want_inter) {
    const std::vector<std::string> js = judges_in(models, judges);
    const SimilarityMatrix sim = similarity_matrix(js, models, group_set);
    std::cout << "judge";
    for (const std::string& j : js) std::cout << "," << j;
    std::cout << "\n";
    for (std::size_t i = 0; i < js.size(); ++i) {
      std::cout << js[i];
      for (double v : sim.values[i]) std::printf(",%.4f", v);
      std::cout << "\n";
    }
    return 0;
  }

  // Division statistics: one matrix over the union of named divisions.
  std::vector<std::vector<std::string>> division_judges;
  std::vector<std::string> all;
  for (const std::string& d : divisions) {
    division_judges.push_back(judge_group(d));
    for (const std::string& j : division_judges.back())
      if (std::find(all.begin(), all.end(), j) == all.end()) all.push_back(j);
  }
  if (division_judges.empty())
    throw std::runtime_error("similarity: <intra>/<inter> need division names");
  const SimilarityMatrix sim = similarity_matrix(all, models, group_set);
  if (want_intra)
    for (std::size_t i = 0; i < divisions.size(); ++i)
      std::printf("intra %s %.4f\n", divisions[i].c_str(),
                  intra_group(division_judges[i], sim));
  if (want_inter) {
    if (divisions.size() < 2)
      throw std::runtime_error("similarity: <inter> needs two divisions");
    for (std::size_t i = 0; i < divisions.size(); ++i)
      for (std::size_t j = i + 1; j < divisions.size(); ++j)
        std::printf("inter %s %s %.4f\n", divisions[i].c_str(), divisions[j].c_str(),
                    inter_group(division_judges[i], division_judges[j], sim));
  }
  if (!want_intra && !want_inter) {
    const SimilarityMatrix d = similarity_matrix(all, models, group_set);
    std::cout << "judge";
    for (const std::string& j : all) std::cout << "," << j;
    std::cout << "\n";
    for (std::size_t i = 0; i < all.size(); ++i) {
      std::cout << all[i];
      for (double v : d.values[i]) std::printf(",%.4f", v);
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_errors(const std::string& models_dir, const std::vector<std::string>& judges,
               const std::vector<std::string>& group_set_names) {
  const ModelsByJudgeGroup models = load_models_dir(models_dir);
  const std::vector<GroupTag> group_set = parse_groups(group_set_names);
  std::printf("%-24s %8s %8s %8s\n", "judge", "minor", "moderate", "severe");
  for (const std::string& judge : judges_in(models, judges)) {
    const std::array<double, 3> s = error_sensitivity(judge, models, group_set);
    std::printf("%-24s %8.2f %8.2f %8.2f\n", judge.c_str(), s[0], s[1], s[2]);
  }
  return 0;
}

int cmd_accuracy(const std::string& models_dir, const std::vector<std::string>& judges,
                 const std::vector<std::string>& group_set_names) {
  const ModelsByJudgeGroup all_models = load_models_dir(models_dir);
  const std::vector<GroupTag> group_set = parse_groups(group_set_names);
  std::printf("%-24s %9s\n", "judge", "accuracy");
  for (const std::string& judge : judges_in(all_models, judges)) {
    auto it = all_models.find(judge);
    if (it == all_models.end()) throw std::runtime_error("no models for judge: " + judge);
    std::vector<FittedPreferenceModel> ms;
    for (const auto& [_, m] : it->second) ms.push_back(m);
    std::printf("%-24s %9.2f\n", judge.c_str(),
                judge_accuracy(ms, group_set) * 100.0);
  }
  return 0;
}

int cmd_relabel(const std::string& data, const std::string& models_dir,
                const RelabelConfig& config, const std::string& out) {
  const std::vector<AnnotatedSample> samples = load_or_die(data, false);
  const ModelsByJudgeGroup models = load_models_dir(models_dir);
  const std::vector<SyntheticPair> pairs = relabel(models, samples, config);
  std::cout << "kept " << pairs.size() << " of " << samples.size()
            << " samples (band " << config.band_halfwidth << ", invert "
            << (config.invert ? "true" : "false") << ")\n";
  if (!pairs.empty()) {
    export_dpo_pairs(pairs, out);
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

int cmd_sysmsg(const std::string& models_dir, const std::string& judge,
               const std::string& group_name, std::size_t k,
               const std::string& direction, const std::string& out) {
  const ModelsByJudgeGroup models = load_models_dir(models_dir);
  const GroupTag group = parse_group(group_name);
  const PreferenceProfile profile = profile_of(model_for(models, judge, group));
  fs::create_directories(out);
  std::vector<RankDirection> directions;
  if (direction == "top") directions = {RankDirection::top};
  else if (direction == "last") directions = {RankDirection::last};
  else directions = {RankDirection::top, RankDirection::last};
  for (RankDirection d : directions) {
    const std::string text = compose_system_message(profile, group, k, d);
    const fs::path path =
        fs::path(out) / (sanitize_filename(judge) + "-" +
                         sanitize_filename(group.name) + "-" +
                         std::string(to_string(d)) + ".txt");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << text << "\n";
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path.string());
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

int cmd_synth(long n, std::uint64_t seed, double sparsity,
              const std::string& alpha_csv, std::optional<std::uint64_t> alpha_seed,
              const std::string& out) {
  SynthSpec spec;
  spec.n_samples = n;
  spec.seed = seed;
  spec.feature_sparsity = sparsity;
  if (!alpha_csv.empty()) {
    std::vector<double> values;
    std::string token;
    std::istringstream in(alpha_csv);
    while (std::getline(in, token, ',')) values.push_back(std::stod(token));
    if (values.size() != kNumProperties)
      throw std::runtime_error("--alpha needs " + std::to_string(kNumProperties) +
                               " comma-separated values, got " +
                               std::to_string(values.size()));
    std::copy(values.begin(), values.end(), spec.alpha_star.begin());
  } else if (alpha_seed) {
    Rng rng = Rng::from_key(*alpha_seed, "synth-alpha");
    for (double& a : spec.alpha_star) a = 2.0 * rng.uniform01() - 1.0;
  } else {
    throw std::runtime_error("synth: provide --alpha or --alpha-seed");
  }
  const DesignMatrix design = generate(spec);
  save_dataset(out, synthetic_samples(design));
  nlohmann::json truth;
  truth["alpha_star"] = spec.alpha_star;
  truth["n_samples"] = spec.n_samples;
  truth["feature_sparsity"] = spec.feature_sparsity;
  truth["seed"] = spec.seed;
  const std::string truth_path = out + ".truth.json";
  std::ofstream f(truth_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + truth_path);
  f << truth.dump(2) << "\n";
  std::cout << "wrote " << out << " (" << design.size() << " samples) and "
            << truth_path << "\n";
  return 0;
}

int cmd_report(const std::string& models_dir, const std::string& data,
               const std::vector<std::string>& formats, const std::string& out,
               bool with_similarity, const std::vector<std::string>& group_set_names) {
  const ModelsByJudgeGroup models = load_models_dir(models_dir);
  ReportInputs inputs;
  for (const auto& [_, by_group] : models)
    for (const auto& [_g, m] : by_group) inputs.models.push_back(m);
  if (!data.empty()) inputs.dataset_hash = content_hash_hex(data);
  else if (!inputs.models.empty()) inputs.dataset_hash = inputs.models.front().dataset_hash;
  RunConfig rc;
  rc.dataset = data;
  rc.output_dir = out;
  rc.formats = formats;
  rc.group_set = group_set_names;
  if (!inputs.models.empty()) rc.fit = inputs.models.front().config;
  inputs.config_snapshot = run_config_to_json(rc);
  // Where the report lands must not change its bytes.
  inputs.config_snapshot.erase("output_dir");
  if (with_similarity) {
    const std::vector<GroupTag> group_set = parse_groups(group_set_names);
    std::vector<std::string> judges;
    for (const auto& [judge, by_group] : models) {
      bool complete = true;
      for (const GroupTag& g : group_set)
        if (!by_group.count(g)) { complete = false; break; }
      if (complete) judges.push_back(judge);
    }
    if (judges.size() >= 2)
      inputs.similarity = similarity_matrix(judges, models, group_set);
  }
  for (const std::string& path : emit_report(inputs, formats, out))
    std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissect pairwise preference data into per-property weights"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "preflens 0.1.0");

  int rc = 0;

  // validate
  auto* validate = app.add_subcommand("validate", "Check a dataset file, printing diagnostics");
  std::string v_data;
  validate->add_option("--data", v_data, "Dataset (newline-delimited JSON)")->required();
  validate->callback([&] { rc = cmd_validate(v_data); });

  // fit
  auto* fit = app.add_subcommand("fit", "Fit per judge/group preference models");
  std::string f_data, f_out = "models";
  std::vector<std::string> f_judges, f_groups;
  FitFlags f_flags;
  fit->add_option("--data", f_data, "Dataset path")->required();
  fit->add_option("--judge", f_judges, "Judge name (repeatable; default: all in data)");
  fit->add_option("--group", f_groups, "Group name (repeatable; default: all 11)");
  fit->add_option("--out", f_out, "Output directory for model files");
  add_fit_flags(fit, f_flags);
  fit->callback([&] { rc = cmd_fit(f_data, f_judges, f_groups, f_out, f_flags); });

  // profile
  auto* profile = app.add_subcommand("profile", "Print degrees of preference and rankings");
  std::string p_models;
  std::vector<std::string> p_judges, p_groups;
  std::size_t p_k = 3;
  profile->add_option("--models", p_models, "Directory of fitted models")->required();
  profile->add_option("--judge", p_judges, "Judge filter (repeatable)");
  profile->add_option("--group", p_groups, "Group filter (repeatable)");
  profile->add_option("--k", p_k, "Top/last list length");
  profile->callback([&] { rc = cmd_profile(p_models, p_judges, p_groups, p_k); });

  // similarity
  auto* similarity = app.add_subcommand(
      "similarity", "Judge similarity matrix or intra/inter division means");
  std::string s_models;
  std::vector<std::string> s_tokens, s_judges, s_group_set;
  similarity->add_option("--models", s_models, "Directory of fitted models")->required();
  similarity->add_option("--groups", s_tokens,
                         "Division names (<14B, >30B, series) plus <intra>/<inter>");
  similarity->add_option("--judge", s_judges, "Judge filter for the matrix");
  similarity->add_option("--group-set", s_group_set,
                         "Groups averaged over (default: all 11)");
  similarity->callback([&] { rc = cmd_similarity(s_models, s_tokens, s_judges, s_group_set); });

  // errors
  auto* errors = app.add_subcommand("errors", "Error sensitivity per judge");
  std::string e_models;
  std::vector<std::string> e_judges, e_group_set;
  errors->add_option("--models", e_models, "Directory of fitted models")->required();
  errors->add_option("--judge", e_judges, "Judge filter (repeatable)");
  errors->add_option("--group-set", e_group_set, "Groups averaged over (default: all 11)");
  errors->callback([&] { rc = cmd_errors(e_models, e_judges, e_group_set); });

  // accuracy
  auto* accuracy = app.add_subcommand("accuracy", "Mean train accuracy per judge");
  std::string a_models;
  std::vector<std::string> a_judges, a_group_set;
  accuracy->add_option("--models", a_models, "Directory of fitted models")->required();
  accuracy->add_option("--judge", a_judges, "Judge filter (repeatable)");
  accuracy->add_option("--group-set", a_group_set, "Groups averaged over (default: all 11)");
  accuracy->callback([&] { rc = cmd_accuracy(a_models, a_judges, a_group_set); });

  // relabel
  auto* relabel_cmd = app.add_subcommand(
      "relabel", "Relabel samples with a judge's models and export DPO pairs");
  std::string r_data, r_models, r_out = "pairs.ndjson", r_policy = "scenario-else-others";
  RelabelConfig r_config;
  relabel_cmd->add_option("--data", r_data, "Dataset path")->required();
  relabel_cmd->add_option("--models", r_models, "Directory of fitted models")->required();
  relabel_cmd->add_option("--judge", r_config.judge, "Judge whose models relabel")->required();
  relabel_cmd->add_option("--band", r_config.band_halfwidth,
                          "Exclusion half-width around 0.5");
  relabel_cmd->add_flag("--invert", r_config.invert, "Swap chosen and rejected");
  relabel_cmd->add_option("--policy", r_policy, "scenario-else-others or scenario-only")
      ->check(CLI::IsMember({"scenario-else-others", "scenario-only"}));
  relabel_cmd->add_option("--out", r_out, "Output pairs file");
  relabel_cmd->callback([&] {
    r_config.resolution = r_policy == "scenario-only"
                              ? GroupResolution::scenario_only
                              : GroupResolution::scenario_else_others;
    rc = cmd_relabel(r_data, r_models, r_config, r_out);
  });

  // sysmsg
  auto* sysmsg = app.add_subcommand("sysmsg", "Write top/last-k property system messages");
  std::string m_models, m_judge, m_group, m_direction = "both", m_out = "sysmsg";
  std::size_t m_k = 3;
  sysmsg->add_option("--models", m_models, "Directory of fitted models")->required();
  sysmsg->add_option("--judge", m_judge, "Judge name")->required();
  sysmsg->add_option("--group", m_group, "Group name")->required();
  sysmsg->add_option("--k", m_k, "Number of properties named");
  sysmsg->add_option("--direction", m_direction, "top, last, or both")
      ->check(CLI::IsMember({"top", "last", "both"}));
  sysmsg->add_option("--out", m_out, "Output directory");
  sysmsg->callback([&] { rc = cmd_sysmsg(m_models, m_judge, m_group, m_k, m_direction, m_out); });

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset from known weights");
  long y_n = 1000;
  std::uint64_t y_seed = 0;
  double y_sparsity = 0.4;
  std::string y_alpha, y_out;
  std::optional<std::uint64_t> y_alpha_seed;
  synth->add_option("--n", y_n, "Number of samples");
  synth->add_option("--seed", y_seed, "Generation seed");
  synth->add_option("--sparsity", y_sparsity, "Probability a feature slot is nonzero");
  synth->add_option("--alpha", y_alpha, "29 comma-separated ground-truth weights");
  synth->add_option("--alpha-seed", y_alpha_seed, "Draw ground truth uniformly from [-1,1]");
  synth->add_option("--out", y_out, "Output dataset path")->required();
  synth->callback([&] { rc = cmd_synth(y_n, y_seed, y_sparsity, y_alpha, y_alpha_seed, y_out); });

  // report
  auto* report = app.add_subcommand("report", "Emit JSON/CSV/markdown/SVG reports");
  std::string t_models, t_data, t_out = "report";
  std::vector<std::string> t_formats{"json", "csv", "markdown", "svg"}, t_group_set;
  bool t_similarity = false;
  report->add_option("--models", t_models, "Directory of fitted models")->required();
  report->add_option("--data", t_data, "Dataset path (for the content hash)");
  report->add_option("--formats", t_formats, "Any of: json csv markdown svg");
  report->add_option("--out", t_out, "Output directory");
  report->add_flag("--similarity", t_similarity, "Include the judge similarity matrix");
  report->add_option("--group-set", t_group_set, "Similarity group set (default: all 11)");
  report->callback([&] { rc = cmd_report(t_models, t_data, t_formats, t_out, t_similarity, t_group_set); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
