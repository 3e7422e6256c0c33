#pragma once
// Shared fixtures: a minimal valid sample, paths into tests/data, and a
// self-cleaning temporary directory.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "preflens/data.hpp"

namespace preflens::testing {

inline std::string data_dir() { return PREFLENS_TEST_DATA_DIR; }

inline std::string data_path(const std::string& name) {
  return (std::filesystem::path(data_dir()) / name).string();
}

// Unique directory under the system temp root, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 gen{std::random_device{}()};
    const auto base = std::filesystem::temp_directory_path();
    do {
      path_ = base / ("preflens-test-" + std::to_string(gen()));
    } while (std::filesystem::exists(path_));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void spit(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  out << bytes;
  if (!out) throw std::runtime_error("cannot write: " + path);
}

// Mirrors tests/data/mini.ndjson: a complete sample with no query-specific
// annotations and one severe math error on response B.
inline AnnotatedSample make_minimal_sample() {
  AnnotatedSample s;
  s.id = "mini-0001";
  s.meta.query_text = "What is 2+2?";
  s.meta.scenario = GroupTag::scenario("Exam Questions");
  s.meta.clear_intent = true;
  s.meta.expresses_feelings = false;

  auto fill_ratings = [](ResponseAnnotation& r) {
    r.ratings = {
        {"harmless", 3},       {"grammarly correct", 3},
        {"well formatted", 1}, {"repetitive", 0},
        {"funny", 0},          {"use rhetorical devices", 0},
        {"admit limits", 0},   {"clear", 3},
        {"friendly", 1},       {"use informal expressions", 0},
        {"contain rich info", 0}, {"persuasive", 0},
        {"polite", 1},         {"complex word & sentence", 0},
        {"step-by-step", 0},   {"novel", 0},
        {"interactive", 0},    {"use supporting materials", 0},
        {"authoritative", 2},  {"relevant", 3},
    };
  };
  s.resp_a.text = "4";
  fill_ratings(s.resp_a);
  s.resp_a.word_count = 1;
  s.resp_a.error_check = true;

  s.resp_b.text = "2+2 equals 5.";
  fill_ratings(s.resp_b);
  s.resp_b.ratings["contain rich info"] = 1;
  s.resp_b.word_count = 4;
  s.resp_b.error_check = true;
  s.resp_b.errors.push_back(
      {"2 + 2 = 5 is a wrong math operation.", ErrorType::math, Severity::severe});

  s.labels["human"] = PrefLabel::A;
  s.labels["GPT-4-Turbo"] = PrefLabel::A;
  s.logprobs["GPT-4-Turbo"] = {-0.2, -1.0, -0.3, -0.9};
  return s;
}

}  // namespace preflens::testing
