// Report emission: machine-readable JSON, CSV tables, a markdown summary,
// and standalone SVG bar charts of per-property preference degrees. Every
// output embeds the dataset content hash and the config snapshot, and
// re-running over identical inputs reproduces identical bytes (no
// timestamps anywhere).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "preflens/analytics.hpp"
#include "preflens/fit.hpp"
#include "preflens/properties.hpp"

namespace preflens {

namespace report_detail {

inline std::string fmt1(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

inline std::string fmt4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Shortest round-trip decimal form.
inline std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  double back = 0.0;
  if (std::sscanf(buf, "%lf", &back) == 1 && back == v) {
    for (int prec = 1; prec < 17; ++prec) {
      char trial[64];
      std::snprintf(trial, sizeof trial, "%.*g", prec, v);
      if (std::sscanf(trial, "%lf", &back) == 1 && back == v)
        return trial;
    }
  }
  return buf;
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << bytes;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

struct ModelSummary {
  double max_rhat = std::numeric_limits<double>::quiet_NaN();
  double min_ess = std::numeric_limits<double>::quiet_NaN();
  long divergences = 0;
  std::vector<std::string> warnings;
};

inline ModelSummary summarize_diagnostics(const FittedPreferenceModel& m) {
  ModelSummary s;
  for (const FitDiagnostics& d : m.fold_diagnostics) {
    for (double r : d.rhat)
      if (std::isfinite(r) && !(r <= s.max_rhat)) s.max_rhat = r;
    for (double e : d.ess)
      if (std::isfinite(e) && !(e >= s.min_ess)) s.min_ess = e;
    for (const ChainDiagnostics& c : d.chains) s.divergences += c.divergences;
    s.warnings.insert(s.warnings.end(), d.warnings.begin(), d.warnings.end());
  }
  return s;
}

}  // namespace report_detail

// Replaces spaces and any character outside [A-Za-z0-9._-] so judge and
// group names form portable file names.
inline std::string sanitize_filename(std::string_view name) {
  std::string out;
  for (char c : name) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
    out += ok ? c : '-';
  }
  return out;
}

// Horizontal bar chart of one profile's informative properties, sorted by
// degree descending, with a dashed 50% reference line. `provenance` lands in
// the SVG <desc> element.
inline std::string render_profile_svg(const PreferenceProfile& profile,
                                      const std::string& provenance = "") {
  using namespace report_detail;
  const Ranking full = rank_properties(profile, kNumProperties);
  const std::vector<std::size_t>& order = full.top;

  const int left = 210, chart_w = 360, row_h = 22, bar_h = 14;
  const int top = 52, bottom = 30;
  const int width = left + chart_w + 70;
  const int height = top + row_h * static_cast<int>(order.size()) + bottom;
  const auto x_of = [&](double percent) {
    return static_cast<double>(left) + percent / 100.0 * chart_w;
  };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       std::to_string(width) + "\" height=\"" + std::to_string(height) +
       "\" viewBox=\"0 0 " + std::to_string(width) + " " +
       std::to_string(height) + "\">\n";
  s += "  <title>" + xml_escape(profile.judge) + " on " +
       xml_escape(profile.group.name) + "</title>\n";
  if (!provenance.empty()) s += "  <desc>" + xml_escape(provenance) + "</desc>\n";
  s += "  <rect x=\"0\" y=\"0\" width=\"" + std::to_string(width) +
       "\" height=\"" + std::to_string(height) + "\" fill=\"#ffffff\"/>\n";
  s += "  <text x=\"" + std::to_string(left) +
       "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\" "
       "font-weight=\"bold\" fill=\"#222222\">" +
       xml_escape(profile.judge) + " on " + xml_escape(profile.group.name) +
       "</text>\n";
  s += "  <text x=\"" + std::to_string(left) +
       "\" y=\"37\" font-family=\"sans-serif\" font-size=\"11\" "
       "fill=\"#555555\">degree of preference (%)</text>\n";

  for (std::size_t i = 0; i < order.size(); ++i) {
    const std::size_t p = order[i];
    const double percent = profile.degree[p] * 100.0;
    const int y = top + static_cast<int>(i) * row_h;
    const int bar_y = y + (row_h - bar_h) / 2;
    const double bar_w = percent / 100.0 * chart_w;
    s += "  <text x=\"" + std::to_string(left - 8) + "\" y=\"" +
         std::to_string(y + row_h / 2 + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" "
         "fill=\"#222222\">" +
         xml_escape(property_name(p)) + "</text>\n";
    s += "  <rect x=\"" + std::to_string(left) + "\" y=\"" +
         std::to_string(bar_y) + "\" width=\"" + fmt1(bar_w) + "\" height=\"" +
         std::to_string(bar_h) + "\" fill=\"#4477aa\"/>\n";
    s += "  <text x=\"" + fmt1(x_of(percent) + 5) + "\" y=\"" +
         std::to_string(y + row_h / 2 + 4) +
         "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#555555\">" +
         fmt1(percent) + "</text>\n";
  }

  const int axis_top = top - 6;
  const int axis_bottom = top + row_h * static_cast<int>(order.size()) + 4;
  s += "  <line x1=\"" + fmt1(x_of(50.0)) + "\" y1=\"" +
       std::to_string(axis_top) + "\" x2=\"" + fmt1(x_of(50.0)) + "\" y2=\"" +
       std::to_string(axis_bottom) +
       "\" stroke=\"#999999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n";
  s += "  <text x=\"" + fmt1(x_of(50.0)) + "\" y=\"" +
       std::to_string(axis_bottom + 14) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\" "
       "fill=\"#999999\">50%</text>\n";
  s += "</svg>\n";
  return s;
}

struct ReportInputs {
  std::vector<FittedPreferenceModel> models;
  std::optional<SimilarityMatrix> similarity;
  std::string dataset_hash;
  nlohmann::json config_snapshot = nlohmann::json::object();
};

// Writes the requested formats under outdir and returns the created paths.
// Format names: json, csv, markdown, svg.
inline std::vector<std::string> emit_report(const ReportInputs& inputs,
                                            const std::vector<std::string>& formats,
                                            const std::string& outdir) {
  using namespace report_detail;
  for (const std::string& f : formats) {
    if (f != "json" && f != "csv" && f != "markdown" && f != "svg")
      throw std::invalid_argument("unknown report format: " + f);
  }
  const auto wants = [&](const char* f) {
    return std::find(formats.begin(), formats.end(), f) != formats.end();
  };

  std::vector<const FittedPreferenceModel*> models;
  models.reserve(inputs.models.size());
  for (const FittedPreferenceModel& m : inputs.models) models.push_back(&m);
  std::sort(models.begin(), models.end(),
            [](const FittedPreferenceModel* a, const FittedPreferenceModel* b) {
              if (a->judge != b->judge) return a->judge < b->judge;
              return a->group < b->group;
            });

  const std::filesystem::path root(outdir);
  std::filesystem::create_directories(root);
  std::vector<std::string> written;
  const std::string provenance =
      "dataset_hash=" + inputs.dataset_hash +
      " config=" + inputs.config_snapshot.dump();

  if (wants("json")) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["dataset_hash"] = inputs.dataset_hash;
    j["config"] = inputs.config_snapshot;
    j["models"] = nlohmann::json::array();
    for (const FittedPreferenceModel* m : models) {
      const PreferenceProfile profile = profile_of(*m);
      const Ranking ranking = rank_properties(profile, 3);
      const ModelSummary summary = summarize_diagnostics(*m);
      nlohmann::json e;
      e["judge"] = m->judge;
      e["group"] = {{"kind", m->group.kind == GroupTag::Kind::scenario
                                 ? "scenario"
                                 : m->group.kind == GroupTag::Kind::unsafe
                                       ? "unsafe"
                                       : "query_specific"},
                    {"name", m->group.name}};
      e["train_accuracy"] = m->train_accuracy;
      e["alpha"] = m->alpha;
      e["degree"] = profile.degree;
      e["informative"] = m->informative;
      nlohmann::json top = nlohmann::json::array();
      for (std::size_t p : ranking.top) top.push_back(property_name(p));
      nlohmann::json last = nlohmann::json::array();
      for (std::size_t p : ranking.last) last.push_back(property_name(p));
      e["top3"] = top;
      e["last3"] = last;
      e["diagnostics"] = {{"max_rhat", summary.max_rhat},
                          {"min_ess", summary.min_ess},
                          {"divergences", summary.divergences},
                          {"warnings", summary.warnings}};
      j["models"].push_back(e);
    }
    if (inputs.similarity) {
      j["similarity"] = {{"judges", inputs.similarity->judges},
                         {"values", inputs.similarity->values}};
    }
    const auto path = root / "report.json";
    write_file(path, j.dump(2) + "\n");
    written.push_back(path.string());
  }

  if (wants("csv")) {
    std::string csv = "# dataset_hash=" + inputs.dataset_hash + "\n" +
                      "# config=" + inputs.config_snapshot.dump() + "\n" +
                      "judge,group,property,weight,degree_percent,informative\n";
    for (const FittedPreferenceModel* m : models) {
      const PreferenceProfile profile = profile_of(*m);
      for (std::size_t p = 0; p < kNumProperties; ++p) {
        csv += csv_escape(m->judge) + "," + csv_escape(m->group.name) + "," +
               csv_escape(std::string(property_name(p))) + "," +
               fmt_full(m->alpha[p]) + "," + fmt6(profile.degree[p] * 100.0) +
               "," + (m->informative[p] ? "true" : "false") + "\n";
      }
    }
    const auto path = root / "degrees.csv";
    write_file(path, csv);
    written.push_back(path.string());

    if (inputs.similarity) {
      std::string sim = "# dataset_hash=" + inputs.dataset_hash + "\n" +
                        "# config=" + inputs.config_snapshot.dump() + "\njudge";
      for (const std::string& judge : inputs.similarity->judges)
        sim += "," + csv_escape(judge);
      sim += "\n";
      for (std::size_t i = 0; i < inputs.similarity->judges.size(); ++i) {
        sim += csv_escape(inputs.similarity->judges[i]);
        for (double v : inputs.similarity->values[i]) sim += "," + fmt6(v);
        sim += "\n";
      }
      const auto sim_path = root / "similarity.csv";
      write_file(sim_path, sim);
      written.push_back(sim_path.string());
    }
  }

  if (wants("markdown")) {
    std::string md = "# Preference dissection report\n\n";
    md += "- Dataset hash: `" + inputs.dataset_hash + "`\n";
    md += "- Models: " + std::to_string(models.size()) + "\n";
    md += "- Config: `" + inputs.config_snapshot.dump() + "`\n";
    for (const FittedPreferenceModel* m : models) {
      const PreferenceProfile profile = profile_of(*m);
      const Ranking ranking = rank_properties(profile, 3);
      const ModelSummary summary = summarize_diagnostics(*m);
      md += "\n## " + m->judge + " on " + m->group.name + "\n\n";
      md += "- Train accuracy: " + fmt1(m->train_accuracy * 100.0) + "%\n";
      md += "- Max split R-hat: " + fmt4(summary.max_rhat) +
            "; min ESS: " + fmt1(summary.min_ess) +
            "; divergences: " + std::to_string(summary.divergences) + "\n";
      const auto list_of = [&](const std::vector<std::size_t>& picks) {
        std::string out;
        for (std::size_t i = 0; i < picks.size(); ++i) {
          if (i) out += "; ";
          out += std::string(property_name(picks[i])) + " (" +
                 fmt1(profile.degree[picks[i]] * 100.0) + "%)";
        }
        return out;
      };
      md += "- Top 3: " + list_of(ranking.top) + "\n";
      md += "- Last 3: " + list_of(ranking.last) + "\n";
      for (const std::string& w : summary.warnings) md += "- Warning: " + w + "\n";
      md += "\n| property | degree (%) | weight |\n|---|---:|---:|\n";
      const Ranking full = rank_properties(profile, kNumProperties);
      for (std::size_t p : full.top) {
        md += "| " + std::string(property_name(p)) + " | " +
              fmt1(profile.degree[p] * 100.0) + " | " + fmt4(m->alpha[p]) +
              " |\n";
      }
    }
    if (inputs.similarity) {
      md += "\n## Judge similarity\n\n|  |";
      for (const std::string& judge : inputs.similarity->judges)
        md += " " + judge + " |";
      md += "\n|---|";
      for (std::size_t i = 0; i < inputs.similarity->judges.size(); ++i)
        md += "---:|";
      md += "\n";
      for (std::size_t i = 0; i < inputs.similarity->judges.size(); ++i) {
        md += "| " + inputs.similarity->judges[i] + " |";
        for (double v : inputs.similarity->values[i]) md += " " + fmt4(v) + " |";
        md += "\n";
      }
    }
    const auto path = root / "report.md";
    write_file(path, md);
    written.push_back(path.string());
  }

  if (wants("svg")) {
    const auto svg_dir = root / "svg";
    std::filesystem::create_directories(svg_dir);
    for (const FittedPreferenceModel* m : models) {
      const PreferenceProfile profile = profile_of(*m);
      const auto path = svg_dir / (sanitize_filename(m->judge) + "-" +
                                   sanitize_filename(m->group.name) + ".svg");
      write_file(path, render_profile_svg(profile, provenance));
      written.push_back(path.string());
    }
  }

  return written;
}

}  // namespace preflens
