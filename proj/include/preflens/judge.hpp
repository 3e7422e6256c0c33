// Preference labels from judge log-probabilities with positional debiasing.
//
// An LLM judge sees both response orders; each response's score is its
// "A"/"B" token log-probability averaged over the two positions it occupied.
// The higher score wins. Exact ties are errors: the released data has none,
// and fabricating a direction would bias downstream fits.
#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "preflens/data.hpp"

namespace preflens {

// Fixed prompt suffix appended after the query and both responses. The next
// generated token ("A" or "B") carries the preference signal.
inline constexpr std::string_view kJudgePromptTemplate =
    "Between Response A and Response B, which better addresses the user's "
    "query? The better response is Response";

// o1_*: responses in original order (first response shown as A).
// o2_*: responses swapped (first response shown as B). The A/B subscripts
// always name the position token, not the underlying response.
struct LogProbQuadruple {
  double o1_a = 0.0;
  double o1_b = 0.0;
  double o2_a = 0.0;
  double o2_b = 0.0;

  bool finite() const {
    return std::isfinite(o1_a) && std::isfinite(o1_b) && std::isfinite(o2_a) &&
           std::isfinite(o2_b);
  }

  friend bool operator==(const LogProbQuadruple&,
                         const LogProbQuadruple&) = default;
};

struct DebiasResult {
  PrefLabel label = PrefLabel::A;
  double margin = 0.0;
};

// Position-debiased label: score(r1) = (o1_a + o2_b)/2 pairs the first
// response with the two slots it occupied; likewise score(r2). Adding a
// constant to all four entries cancels in the difference.
inline DebiasResult debias_label(const LogProbQuadruple& q) {
  if (!q.finite()) throw std::invalid_argument("log-prob quadruple must be finite");
  const double score_r1 = 0.5 * (q.o1_a + q.o2_b);
  const double score_r2 = 0.5 * (q.o1_b + q.o2_a);
  if (score_r1 == score_r2) throw std::domain_error("tie: debiased scores are equal");
  DebiasResult out;
  out.label = score_r1 > score_r2 ? PrefLabel::A : PrefLabel::B;
  out.margin = std::abs(score_r1 - score_r2);
  return out;
}

enum class ResponseOrder : std::uint8_t { original, swapped };

// One scoring call: the pair of responses as presented, plus the sample id so
// replay clients can address recordings. Live clients ignore the id.
struct JudgeRequest {
  std::string sample_id;
  std::string query;
  std::string shown_as_a;
  std::string shown_as_b;
  ResponseOrder order = ResponseOrder::original;
};

struct TokenLogProbs {
  double log_prob_a = 0.0;
  double log_prob_b = 0.0;
};

// Stateless scoring boundary. Implementations must surface failures as
// exceptions; returning made-up numbers would poison every fit downstream.
class JudgeClient {
 public:
  virtual ~JudgeClient() = default;
  virtual TokenLogProbs score(const JudgeRequest& request) = 0;
};

// Connection settings for a vendor-hosted judge. Credentials travel by
// environment variable name, never by value. No live transport ships here;
// this type only fixes the configuration surface.
struct LiveJudgeConfig {
  std::string endpoint;
  std::string model;
  std::string api_key_env = "PREFLENS_JUDGE_API_KEY";
  double timeout_seconds = 60.0;
};

// Replays recorded quadruples from newline-delimited JSON records
// {sample_id, judge, quadruple:[o1_A, o1_B, o2_A, o2_B]}.
class FixtureJudgeClient final : public JudgeClient {
 public:
  FixtureJudgeClient(std::string judge,
                     std::map<std::string, LogProbQuadruple> recordings)
      : judge_(std::move(judge)), recordings_(std::move(recordings)) {}

  static FixtureJudgeClient from_file(const std::string& path,
                                      const std::string& judge) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open fixture file: " + path);
    std::map<std::string, LogProbQuadruple> recordings;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      // All JSON failures (syntax, overflow, wrong types) carry the line.
      try {
        const nlohmann::json j = nlohmann::json::parse(line);
        if (!j.is_object() || !j.contains("sample_id") || !j.contains("judge") ||
            !j.contains("quadruple")) {
          throw std::runtime_error("expected {sample_id, judge, quadruple}");
        }
        if (j.at("judge").get<std::string>() != judge) continue;
        const auto& quad = j.at("quadruple");
        if (!quad.is_array() || quad.size() != 4) {
          throw std::runtime_error("quadruple must be an array of 4 numbers");
        }
        LogProbQuadruple q{quad[0].get<double>(), quad[1].get<double>(),
                           quad[2].get<double>(), quad[3].get<double>()};
        if (!q.finite()) {
          throw std::runtime_error("quadruple must be finite");
        }
        recordings[j.at("sample_id").get<std::string>()] = q;
      } catch (const std::exception& e) {
        throw std::runtime_error("fixture line " + std::to_string(line_no) +
                                 ": " + e.what());
      }
    }
    return FixtureJudgeClient(judge, std::move(recordings));
  }

  const std::string& judge() const { return judge_; }
  std::size_t size() const { return recordings_.size(); }

  TokenLogProbs score(const JudgeRequest& request) override {
    auto it = recordings_.find(request.sample_id);
    if (it == recordings_.end()) {
      throw std::out_of_range("no recording for sample " + request.sample_id);
    }
    const LogProbQuadruple& q = it->second;
    if (request.order == ResponseOrder::original) return {q.o1_a, q.o1_b};
    return {q.o2_a, q.o2_b};
  }

 private:
  std::string judge_;
  std::map<std::string, LogProbQuadruple> recordings_;
};

// Labels keyed by sample id; failed samples land in errors instead, one
// entry per sample, so partial judge outages degrade visibly.
struct PreferenceCollection {
  std::map<std::string, PrefLabel> labels;
  std::map<std::string, double> margins;
  std::map<std::string, std::string> errors;
};

// Scores every sample in both response orders and debiases. Each sample is
// independent; ordering of client calls does not affect the result.
inline PreferenceCollection collect_preferences(
    JudgeClient& client, const std::vector<AnnotatedSample>& samples) {
  PreferenceCollection out;
  for (const AnnotatedSample& s : samples) {
    try {
      JudgeRequest original{s.id, s.meta.query_text, s.resp_a.text,
                            s.resp_b.text, ResponseOrder::original};
      JudgeRequest swapped{s.id, s.meta.query_text, s.resp_b.text,
                           s.resp_a.text, ResponseOrder::swapped};
      const TokenLogProbs o1 = client.score(original);
      const TokenLogProbs o2 = client.score(swapped);
      const DebiasResult r = debias_label(
          {o1.log_prob_a, o1.log_prob_b, o2.log_prob_a, o2.log_prob_b});
      out.labels[s.id] = r.label;
      out.margins[s.id] = r.margin;
    } catch (const std::exception& e) {
      out.errors[s.id] = e.what();
    }
  }
  return out;
}

}  // namespace preflens
