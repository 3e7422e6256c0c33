#pragma once
// Downstream quantities over fitted models: degrees of preference, property
// rankings, Pearson similarity and its group aggregates, error sensitivity,
// and log-probability margins.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "preflens/data.hpp"
#include "preflens/fit.hpp"
#include "preflens/logistic.hpp"
#include "preflens/properties.hpp"

namespace preflens {

// Probability a response is preferred when it satisfies property i better,
// all else equal.
inline double degree_of_preference(double alpha_i) { return sigmoid(alpha_i); }

struct PreferenceProfile {
  std::string judge;
  GroupTag group;
  std::array<double, kNumProperties> degree{};
  // Properties whose design column was all-zero carry prior-only weights and
  // are excluded from rankings.
  std::array<bool, kNumProperties> informative{};
};

inline PreferenceProfile profile_of(const FittedPreferenceModel& m) {
  PreferenceProfile p;
  p.judge = m.judge;
  p.group = m.group;
  p.informative = m.informative;
  for (std::size_t i = 0; i < kNumProperties; ++i)
    p.degree[i] = degree_of_preference(m.alpha[i]);
  return p;
}

struct Ranking {
  std::vector<std::size_t> top;   // property indices, best first
  std::vector<std::size_t> last;  // property indices, worst first
};

// Sorts informative properties by degree (descending for top, ascending for
// last); ties broken by property index ascending.
inline Ranking rank_properties(const PreferenceProfile& p, std::size_t k) {
  if (k > kNumProperties) throw std::invalid_argument("rank_properties: k > 29");
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < kNumProperties; ++i)
    if (p.informative[i]) idx.push_back(i);
  std::vector<std::size_t> by_degree = idx;
  std::sort(by_degree.begin(), by_degree.end(), [&](std::size_t a, std::size_t b) {
    if (p.degree[a] != p.degree[b]) return p.degree[a] > p.degree[b];
    return a < b;
  });
  Ranking r;
  for (std::size_t i = 0; i < std::min(k, by_degree.size()); ++i)
    r.top.push_back(by_degree[i]);
  std::vector<std::size_t> asc = idx;
  std::sort(asc.begin(), asc.end(), [&](std::size_t a, std::size_t b) {
    if (p.degree[a] != p.degree[b]) return p.degree[a] < p.degree[b];
    return a < b;
  });
  for (std::size_t i = 0; i < std::min(k, asc.size()); ++i)
    r.last.push_back(asc[i]);
  return r;
}

// Pearson correlation over the 29 coordinates.
inline double pearson(const std::array<double, kNumProperties>& a,
                      const std::array<double, kNumProperties>& b) {
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < kNumProperties; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= kNumProperties;
  mb /= kNumProperties;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < kNumProperties; ++i) {
    const double da = a[i] - ma, db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa <= 0.0 || sbb <= 0.0)
    throw std::invalid_argument("pearson: zero-variance vector");
  double r = sab / std::sqrt(saa * sbb);
  // Clamp rounding spill; correlations live in [-1, 1].
  return std::min(1.0, std::max(-1.0, r));
}

// Keyed storage for per-(judge, group) models.
using ModelsByJudgeGroup = std::map<std::string, std::map<GroupTag, FittedPreferenceModel>>;

inline const FittedPreferenceModel& model_for(const ModelsByJudgeGroup& models,
                                              const std::string& judge,
                                              const GroupTag& group) {
  auto j = models.find(judge);
  if (j == models.end())
    throw std::invalid_argument("no models for judge: " + judge);
  auto g = j->second.find(group);
  if (g == j->second.end())
    throw std::invalid_argument("no model for judge " + judge + " on group: " + group.name);
  return g->second;
}

// Mean per-group Pearson correlation of the two judges' weights over S.
inline double similarity(const std::string& judge_m, const std::string& judge_n,
                         const ModelsByJudgeGroup& models,
                         const std::vector<GroupTag>& group_set) {
  if (group_set.empty()) throw std::invalid_argument("similarity: empty group set");
  double sum = 0.0;
  for (const auto& g : group_set)
    sum += pearson(model_for(models, judge_m, g).alpha,
                   model_for(models, judge_n, g).alpha);
  return sum / static_cast<double>(group_set.size());
}

struct SimilarityMatrix {
  std::vector<std::string> judges;
  std::vector<std::vector<double>> values;  // symmetric, unit diagonal
  std::vector<GroupTag> group_set;

  double at(const std::string& a, const std::string& b) const {
    const auto ia = index_of(a), ib = index_of(b);
    return values[ia][ib];
  }

  std::size_t index_of(const std::string& j) const {
    for (std::size_t i = 0; i < judges.size(); ++i)
      if (judges[i] == j) return i;
    throw std::invalid_argument("judge not in similarity matrix: " + j);
  }
};

inline SimilarityMatrix similarity_matrix(const std::vector<std::string>& judges,
                                          const ModelsByJudgeGroup& models,
                                          const std::vector<GroupTag>& group_set) {
  SimilarityMatrix m;
  m.judges = judges;
  m.group_set = group_set;
  m.values.assign(judges.size(), std::vector<double>(judges.size(), 1.0));
  for (std::size_t i = 0; i < judges.size(); ++i)
    for (std::size_t j = i + 1; j < judges.size(); ++j) {
      const double s = similarity(judges[i], judges[j], models, group_set);
      m.values[i][j] = s;
      m.values[j][i] = s;
    }
  return m;
}

// Mean similarity over unordered pairs within one judge set.
inline double intra_group(const std::vector<std::string>& judges,
                          const SimilarityMatrix& sim) {
  if (judges.size() < 2)
    throw std::invalid_argument("intra_group: need at least two judges");
  double sum = 0.0;
  long pairs = 0;
  for (std::size_t i = 0; i < judges.size(); ++i)
    for (std::size_t j = i + 1; j < judges.size(); ++j) {
      sum += sim.at(judges[i], judges[j]);
      ++pairs;
    }
  return sum / static_cast<double>(pairs);
}

// Mean similarity over all cross pairs of two judge sets.
inline double inter_group(const std::vector<std::string>& a,
                          const std::vector<std::string>& b,
                          const SimilarityMatrix& sim) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("inter_group: empty judge set");
  double sum = 0.0;
  for (const auto& x : a)
    for (const auto& y : b) sum += sim.at(x, y);
  return sum / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

// Mean degree of preference for the three error-detection properties across
// the group set, in percent: (minor, moderate, severe).
inline std::array<double, 3> error_sensitivity(const std::string& judge,
                                               const ModelsByJudgeGroup& models,
                                               const std::vector<GroupTag>& group_set) {
  if (group_set.empty())
    throw std::invalid_argument("error_sensitivity: empty group set");
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (const auto& g : group_set) {
    const auto& m = model_for(models, judge, g);
    out[0] += degree_of_preference(m.alpha[kNoMinorErrors]);
    out[1] += degree_of_preference(m.alpha[kNoModerateErrors]);
    out[2] += degree_of_preference(m.alpha[kNoSevereErrors]);
  }
  for (auto& v : out) v = v / static_cast<double>(group_set.size()) * 100.0;
  return out;
}

// Mean absolute difference between the judge's position-averaged first-token
// log-probabilities of "A" and "B".
inline double logprob_margin(const std::string& judge,
                             const std::vector<AnnotatedSample>& samples) {
  double sum = 0.0;
  long n = 0;
  for (const auto& s : samples) {
    auto it = s.logprobs.find(judge);
    if (it == s.logprobs.end()) continue;
    const auto& q = it->second;  // [o1_A, o1_B, o2_A, o2_B]
    const double token_a = 0.5 * (q[0] + q[2]);
    const double token_b = 0.5 * (q[1] + q[3]);
    sum += std::abs(token_a - token_b);
    ++n;
  }
  if (n == 0)
    throw std::invalid_argument("logprob_margin: no log-prob data for judge: " + judge);
  return sum / static_cast<double>(n);
}

}  // namespace preflens
