// Run configuration: a plain-text file of `key = value` lines (TOML syntax
// for scalars, strings, and string arrays). Unknown keys are rejected so a
// typo cannot silently fall back to a default. CLI flags override file
// values; the merged snapshot is embedded in every report.
#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "preflens/fit.hpp"

namespace preflens {

struct RunConfig {
  std::string dataset;
  std::string output_dir = "out";
  std::vector<std::string> judges;   // empty: every judge present in the data
  std::vector<std::string> groups;   // empty: all 11 scenario-wise groups
  std::vector<std::string> formats{"json", "csv", "markdown", "svg"};
  std::vector<std::string> group_set;  // groups averaged by accuracy/error tables
  FitConfig fit;
  double band_halfwidth = 0.15;
};

namespace config_detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Strips a # comment, respecting double-quoted strings.
inline std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

inline std::string parse_string(const std::string& raw, long line_no) {
  if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"')
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": expected a double-quoted string, got " + raw);
  std::string out;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    char c = raw[i];
    if (c == '\\') {
      if (i + 2 >= raw.size())
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": dangling escape");
      c = raw[++i];
      if (c != '"' && c != '\\')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": unsupported escape \\" + std::string(1, c));
    } else if (c == '"') {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unescaped quote inside string");
    }
    out += c;
  }
  return out;
}

inline std::vector<std::string> parse_string_array(const std::string& raw,
                                                   long line_no) {
  if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']')
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": expected an array [\"a\", \"b\"], got " + raw);
  std::vector<std::string> out;
  std::string body = trim(raw.substr(1, raw.size() - 2));
  while (!body.empty()) {
    if (body.front() != '"')
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": array elements must be quoted strings");
    std::size_t end = 1;
    while (end < body.size() && body[end] != '"') {
      if (body[end] == '\\') ++end;
      ++end;
    }
    if (end >= body.size())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": unterminated string in array");
    out.push_back(parse_string(body.substr(0, end + 1), line_no));
    body = trim(body.substr(end + 1));
    if (!body.empty()) {
      if (body.front() != ',')
        throw std::invalid_argument("config line " + std::to_string(line_no) +
                                    ": expected comma between array elements");
      body = trim(body.substr(1));
    }
  }
  return out;
}

template <typename T>
inline T parse_number(const std::string& raw, long line_no) {
  std::istringstream in(raw);
  T value{};
  in >> value;
  if (in.fail() || !in.eof())
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": expected a number, got " + raw);
  return value;
}

}  // namespace config_detail

// Applies one key/value pair. Shared between the file parser and flag
// overrides so both reject unknown keys identically.
inline void apply_config_value(RunConfig& config, const std::string& key,
                               const std::string& raw_value, long line_no = 0) {
  using namespace config_detail;
  const std::string value = trim(raw_value);
  if (key == "dataset") config.dataset = parse_string(value, line_no);
  else if (key == "output_dir") config.output_dir = parse_string(value, line_no);
  else if (key == "judges") config.judges = parse_string_array(value, line_no);
  else if (key == "groups") config.groups = parse_string_array(value, line_no);
  else if (key == "formats") config.formats = parse_string_array(value, line_no);
  else if (key == "group_set") config.group_set = parse_string_array(value, line_no);
  else if (key == "prior_scale") config.fit.prior_scale = parse_number<double>(value, line_no);
  else if (key == "chains") config.fit.chains = parse_number<int>(value, line_no);
  else if (key == "warmup") config.fit.warmup = parse_number<int>(value, line_no);
  else if (key == "samples") config.fit.samples_per_chain = parse_number<int>(value, line_no);
  else if (key == "folds") config.fit.folds = parse_number<int>(value, line_no);
  else if (key == "target_accept") config.fit.target_accept = parse_number<double>(value, line_no);
  else if (key == "max_tree_depth") config.fit.max_tree_depth = parse_number<int>(value, line_no);
  else if (key == "seed") config.fit.seed = parse_number<std::uint64_t>(value, line_no);
  else if (key == "error_policy") config.fit.error_policy = error_policy_from_string(parse_string(value, line_no));
  else if (key == "band_halfwidth") config.band_halfwidth = parse_number<double>(value, line_no);
  else
    throw std::invalid_argument("config line " + std::to_string(line_no) +
                                ": unknown key: " + key);
}

inline RunConfig parse_config(std::istream& in, RunConfig base = {}) {
  using namespace config_detail;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(strip_comment(line));
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key");
    apply_config_value(base, key, stripped.substr(eq + 1), line_no);
  }
  return base;
}

inline RunConfig load_config(const std::string& path, RunConfig base = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_config(in, std::move(base));
}

inline nlohmann::json run_config_to_json(const RunConfig& config) {
  nlohmann::json j;
  j["dataset"] = config.dataset;
  j["output_dir"] = config.output_dir;
  j["judges"] = config.judges;
  j["groups"] = config.groups;
  j["formats"] = config.formats;
  j["group_set"] = config.group_set;
  j["fit"] = fit_config_to_json(config.fit);
  j["band_halfwidth"] = config.band_halfwidth;
  return j;
}

}  // namespace preflens
