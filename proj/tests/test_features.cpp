#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <stdexcept>

#include "helpers.hpp"
#include "preflens/data.hpp"
#include "preflens/features.hpp"
#include "preflens/ratings.hpp"
#include "preflens/rng.hpp"

using namespace preflens;
namespace pt = preflens::testing;

namespace {

PropertyVector uniform_pv(double value) {
  PropertyVector pv;
  pv.values.fill(value);
  pv.applicable.fill(true);
  return pv;
}

}  // namespace

TEST_CASE("the length slot requires a strict 70 percent ratio", "[features]") {
  CHECK(lengthy_slot(346, 102) == +1);
  CHECK(lengthy_slot(102, 346) == -1);
  CHECK(lengthy_slot(100, 70) == 0);   // exactly 0.7: not fewer than 70%
  CHECK(lengthy_slot(70, 100) == 0);
  CHECK(lengthy_slot(100, 69) == +1);
  CHECK(lengthy_slot(69, 100) == -1);
  CHECK(lengthy_slot(150, 150) == 0);
  CHECK(lengthy_slot(0, 0) == 0);
  CHECK(lengthy_slot(1, 0) == +1);     // 0 < 0.7 * 1
}

TEST_CASE("generic slots compare by sign of the difference", "[features]") {
  PropertyVector a = uniform_pv(2.0), b = uniform_pv(2.0);
  a.values[0] = 3.0;
  b.values[1] = 3.0;
  // Keep counts equal so error slots read 0, and lengths equal.
  const ComparisonFeature f = compare(a, b);
  CHECK(f.phi[0] == +1);
  CHECK(f.phi[1] == -1);
  CHECK(f.phi[2] == 0);
}

TEST_CASE("the relevant slot fires only when exactly one side is rated zero",
          "[features]") {
  PropertyVector a = uniform_pv(2.0), b = uniform_pv(2.0);

  a.values[kRelevant] = 3.0;
  b.values[kRelevant] = 1.0;
  CHECK(compare(a, b).phi[kRelevant] == 0);  // both nonzero: no signal

  b.values[kRelevant] = 0.0;
  CHECK(compare(a, b).phi[kRelevant] == +1);
  CHECK(compare(b, a).phi[kRelevant] == -1);

  a.values[kRelevant] = 0.0;
  CHECK(compare(a, b).phi[kRelevant] == 0);  // both zero
}

TEST_CASE("error slots prefer the side with fewer errors", "[features]") {
  PropertyVector a = uniform_pv(2.0), b = uniform_pv(2.0);
  a.values[kNoModerateErrors] = 1.0;
  b.values[kNoModerateErrors] = 4.0;
  const ComparisonFeature f = compare(a, b);
  CHECK(f.phi[kNoModerateErrors] == +1);
  CHECK(f.phi[kNoMinorErrors] == 0);
  CHECK(compare(b, a).phi[kNoModerateErrors] == -1);
}

TEST_CASE("inapplicable slots compare to zero", "[features]") {
  PropertyVector a = uniform_pv(2.0), b = uniform_pv(2.0);
  a.values[kSatisfyConstraints] = 3.0;
  b.values[kSatisfyConstraints] = 0.0;
  b.applicable[kSatisfyConstraints] = false;
  CHECK(compare(a, b).phi[kSatisfyConstraints] == 0);
  a.applicable[kSatisfyConstraints] = false;
  CHECK(compare(a, b).phi[kSatisfyConstraints] == 0);
}

TEST_CASE("comparison features are antisymmetric under response swap",
          "[features]") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    PropertyVector a, b;
    for (std::size_t i = 0; i < kNumProperties; ++i) {
      const bool applicable = rng.uniform01() < 0.8;
      a.applicable[i] = b.applicable[i] = applicable;
      a.values[i] = static_cast<double>(rng.below(5));
      b.values[i] = static_cast<double>(rng.below(5));
    }
    a.values[kLengthy] = static_cast<double>(rng.below(400));
    b.values[kLengthy] = static_cast<double>(rng.below(400));
    const ComparisonFeature fwd = compare(a, b);
    const ComparisonFeature rev = compare(b, a);
    for (std::size_t i = 0; i < kNumProperties; ++i)
      REQUIRE(fwd.phi[i] == -rev.phi[i]);
  }
}

TEST_CASE("the worked itinerary sample produces its known feature vector",
          "[features]") {
  const auto loaded = load_dataset(pt::data_path("annotated-example.ndjson"));
  REQUIRE(loaded.diagnostics.empty());
  REQUIRE(loaded.samples.size() == 1);
  const AnnotatedSample& s = loaded.samples.front();

  const PropertyVector a = assemble_property_vector(s.resp_a, s.meta);
  const PropertyVector b = assemble_property_vector(s.resp_b, s.meta);
  CHECK(a.values[kSatisfyConstraints] == 3.0);
  CHECK(b.values[kSatisfyConstraints] == 2.2);
  CHECK(a.values[kSupportStances] == 3.0);
  CHECK(b.values[kSupportStances] == 1.5);
  CHECK(a.values[kNoMinorErrors] == 0.0);
  CHECK(a.values[kNoModerateErrors] == 1.0);
  CHECK(a.values[kNoSevereErrors] == 0.0);
  CHECK(b.values[kNoMinorErrors] == 1.0);
  CHECK(b.values[kNoModerateErrors] == 4.0);
  CHECK(b.values[kNoSevereErrors] == 1.0);

  const std::array<int, kNumProperties> expected{
      0, +1, 0, +1, 0, 0, 0, +1, 0, 0, -1, 0, 0, 0, 0,
      0, 0,  0, 0,  0, -1, 0, 0, +1, +1, 0, +1, +1, +1};
  CHECK(sample_feature(s).phi == expected);
}

TEST_CASE("design matrices follow judge labels and the group filter",
          "[features]") {
  std::vector<AnnotatedSample> samples;
  samples.push_back(pt::make_minimal_sample());
  samples.push_back(pt::make_minimal_sample());
  samples[1].id = "mini-0002";
  samples[1].labels = {{"human", PrefLabel::B}};
  samples.push_back(pt::make_minimal_sample());
  samples[2].id = "mini-0003";
  samples[2].meta.scenario = GroupTag::scenario("Daily Tasks");

  const GroupTag exam = GroupTag::scenario("Exam Questions");
  const DesignMatrix d = build_design_matrix(samples, "human", exam);
  REQUIRE(d.size() == 2);
  CHECK(d.labels == std::vector<int>{1, 0});
  CHECK(d.sample_ids == std::vector<std::string>{"mini-0001", "mini-0002"});

  // Judge filtering: only the first sample has a GPT-4-Turbo label.
  const DesignMatrix g = build_design_matrix(samples, "GPT-4-Turbo", exam);
  REQUIRE(g.size() == 1);

  CHECK_THROWS_AS(build_design_matrix(samples, "human", GroupTag::unsafe()),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      build_design_matrix(samples, "Nonexistent-Judge", exam),
      std::invalid_argument);
}

TEST_CASE("the drop policy removes unchecked samples; the default keeps them",
          "[features]") {
  std::vector<AnnotatedSample> samples;
  samples.push_back(pt::make_minimal_sample());
  samples.push_back(pt::make_minimal_sample());
  samples[1].id = "mini-0002";
  samples[1].resp_b.error_check = false;
  samples[1].resp_b.errors.clear();

  const GroupTag exam = GroupTag::scenario("Exam Questions");
  const DesignMatrix kept =
      build_design_matrix(samples, "human", exam, ErrorSamplePolicy::zero_error_slots);
  REQUIRE(kept.size() == 2);
  // The masked error slots contribute nothing for the unchecked sample.
  CHECK(kept.rows[1].phi[kNoSevereErrors] == 0);

  const DesignMatrix dropped =
      build_design_matrix(samples, "human", exam, ErrorSamplePolicy::drop);
  REQUIRE(dropped.size() == 1);
  CHECK(dropped.sample_ids.front() == "mini-0001");
}

TEST_CASE("informative columns are those with any signal", "[features]") {
  DesignMatrix d;
  ComparisonFeature r1, r2;
  r1.phi[0] = +1;
  r2.phi[5] = -1;
  d.rows = {r1, r2};
  d.labels = {1, 0};
  d.sample_ids = {"a", "b"};
  const auto cols = informative_columns(d);
  CHECK(cols[0]);
  CHECK(cols[5]);
  int count = 0;
  for (bool c : cols) count += c ? 1 : 0;
  CHECK(count == 2);
}
