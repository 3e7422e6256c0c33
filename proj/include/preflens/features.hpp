#pragma once
// Comparison features phi in {-1,0,+1}^29 and design-matrix assembly per
// (judge, group).

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "preflens/data.hpp"
#include "preflens/properties.hpp"
#include "preflens/ratings.hpp"

namespace preflens {

struct ComparisonFeature {
  std::array<int, kNumProperties> phi{};

  bool operator==(const ComparisonFeature&) const = default;
};

// Strict "fewer than 70%" rule in exact integer arithmetic, so a ratio of
// exactly 0.7 yields 0.
inline int lengthy_slot(long words_a, long words_b) {
  if (words_a > words_b) return 10 * words_b < 7 * words_a ? +1 : 0;
  if (words_b > words_a) return 10 * words_a < 7 * words_b ? -1 : 0;
  return 0;
}

// phi_i = +1 when response A better satisfies property i, -1 when B does,
// 0 on equality or when the slot is inapplicable for either response.
inline ComparisonFeature compare(const PropertyVector& a, const PropertyVector& b) {
  ComparisonFeature f;
  for (std::size_t i = 0; i < kNumProperties; ++i) {
    if (!a.applicable[i] || !b.applicable[i]) {
      f.phi[i] = 0;
      continue;
    }
    const double va = a.values[i];
    const double vb = b.values[i];
    switch (i) {
      case kLengthy:
        f.phi[i] = lengthy_slot(static_cast<long>(va), static_cast<long>(vb));
        break;
      case kRelevant:
        // Signal only the extreme case: exactly one response rated 0.
        if (va > 0.0 && vb == 0.0) f.phi[i] = +1;
        else if (va == 0.0 && vb > 0.0) f.phi[i] = -1;
        else f.phi[i] = 0;
        break;
      case kNoMinorErrors:
      case kNoModerateErrors:
      case kNoSevereErrors:
        // Values are error counts; fewer errors satisfies the property better.
        f.phi[i] = va < vb ? +1 : va > vb ? -1 : 0;
        break;
      default:
        f.phi[i] = va > vb ? +1 : va < vb ? -1 : 0;
    }
  }
  return f;
}

struct DesignMatrix {
  std::vector<ComparisonFeature> rows;
  std::vector<int> labels;  // 1 = A preferred, 0 = B preferred
  std::vector<std::string> sample_ids;

  std::size_t size() const { return rows.size(); }
};

// Handling of samples where either response has error_check = false.
enum class ErrorSamplePolicy {
  zero_error_slots,  // keep the sample; error slots compare to 0 via the mask
  drop               // exclude the sample from the design matrix
};

inline ComparisonFeature sample_feature(const AnnotatedSample& s) {
  return compare(assemble_property_vector(s.resp_a, s.meta),
                 assemble_property_vector(s.resp_b, s.meta));
}

inline DesignMatrix build_design_matrix(
    const std::vector<AnnotatedSample>& samples, const std::string& judge,
    const GroupTag& group,
    ErrorSamplePolicy policy = ErrorSamplePolicy::zero_error_slots) {
  const auto in = filter_group(samples, group);
  if (in.empty())
    throw std::invalid_argument("build_design_matrix: empty group: " + group.name);

  DesignMatrix d;
  for (const auto& s : in) {
    auto it = s.labels.find(judge);
    if (it == s.labels.end()) continue;
    if (policy == ErrorSamplePolicy::drop &&
        (!s.resp_a.error_check || !s.resp_b.error_check))
      continue;
    d.rows.push_back(sample_feature(s));
    d.labels.push_back(it->second == PrefLabel::A ? 1 : 0);
    d.sample_ids.push_back(s.id);
  }
  if (d.rows.empty())
    throw std::invalid_argument("build_design_matrix: judge has no labels in group: " +
                                judge + " / " + group.name);
  return d;
}

// True for columns with at least one nonzero entry; analytics exclude the rest
// from rankings since their weight is a prior artifact.
inline std::array<bool, kNumProperties> informative_columns(const DesignMatrix& d) {
  std::array<bool, kNumProperties> out{};
  for (const auto& row : d.rows)
    for (std::size_t i = 0; i < kNumProperties; ++i)
      if (row.phi[i] != 0) out[i] = true;
  return out;
}

}  // namespace preflens
