#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "preflens/data.hpp"
#include "preflens/features.hpp"
#include "preflens/synth.hpp"

using namespace preflens;
namespace pt = preflens::testing;

TEST_CASE("generation is deterministic in the seed", "[synth]") {
  SynthSpec spec;
  spec.n_samples = 500;
  spec.seed = 42;
  spec.alpha_star[0] = 0.7;
  spec.alpha_star[5] = -0.3;

  const DesignMatrix a = generate(spec);
  const DesignMatrix b = generate(spec);
  REQUIRE(a.size() == 500);
  CHECK(a.rows == b.rows);
  CHECK(a.labels == b.labels);
  CHECK(a.sample_ids == b.sample_ids);

  spec.seed = 43;
  const DesignMatrix c = generate(spec);
  CHECK((a.rows != c.rows || a.labels != c.labels));
}

TEST_CASE("zero weights produce balanced labels", "[synth]") {
  SynthSpec spec;
  spec.n_samples = 10000;
  spec.seed = 7;
  const DesignMatrix d = generate(spec);
  long a_count = 0;
  for (int l : d.labels) a_count += l;
  const double rate = static_cast<double>(a_count) / 10000.0;
  // Bernoulli(1/2): three sigma is 0.015.
  CHECK_THAT(rate, Catch::Matchers::WithinAbs(0.5, 0.02));
}

TEST_CASE("a dominant weight dictates the labels", "[synth]") {
  SynthSpec spec;
  spec.n_samples = 5000;
  spec.feature_sparsity = 1.0;
  spec.seed = 8;
  spec.alpha_star[0] = 10.0;
  const DesignMatrix d = generate(spec);
  long agree = 0;
  for (std::size_t r = 0; r < d.size(); ++r) {
    const int expected = d.rows[r].phi[0] > 0 ? 1 : 0;
    agree += d.labels[r] == expected ? 1 : 0;
  }
  CHECK(static_cast<double>(agree) / static_cast<double>(d.size()) > 0.99);
}

TEST_CASE("feature sparsity controls the nonzero rate", "[synth]") {
  SynthSpec spec;
  spec.n_samples = 2000;
  spec.feature_sparsity = 0.25;
  spec.seed = 9;
  const DesignMatrix d = generate(spec);
  long nonzero = 0;
  for (const auto& row : d.rows)
    for (int v : row.phi) nonzero += v != 0 ? 1 : 0;
  const double rate =
      static_cast<double>(nonzero) / (2000.0 * static_cast<double>(kNumProperties));
  CHECK_THAT(rate, Catch::Matchers::WithinAbs(0.25, 0.01));
}

TEST_CASE("bad synthesis parameters are rejected", "[synth]") {
  SynthSpec spec;
  spec.n_samples = 0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec.n_samples = 10;
  spec.feature_sparsity = 0.0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec.feature_sparsity = 1.5;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}

TEST_CASE("adaptive quadrature reproduces known integrals", "[synth]") {
  const auto sq = [](double x) { return x * x; };
  CHECK_THAT(synth_detail::adaptive_simpson(sq, 0.0, 1.0, 1e-10),
             Catch::Matchers::WithinAbs(1.0 / 3.0, 1e-9));
  const auto s = [](double x) { return std::sin(x); };
  CHECK_THAT(synth_detail::adaptive_simpson(s, 0.0, std::numbers::pi, 1e-10),
             Catch::Matchers::WithinAbs(2.0, 1e-8));
  const auto e = [](double x) { return std::exp(x); };
  CHECK_THAT(synth_detail::adaptive_simpson(e, 0.0, 1.0, 1e-10),
             Catch::Matchers::WithinAbs(std::numbers::e - 1.0, 1e-9));
  const auto bump = [](double x) { return std::exp(-50.0 * x * x); };
  CHECK_THAT(synth_detail::adaptive_simpson(bump, -10.0, 10.0, 1e-12),
             Catch::Matchers::WithinAbs(std::sqrt(std::numbers::pi / 50.0), 1e-9));
}

namespace {

// n_pos rows where the label agrees with the active column, n_neg where it
// disagrees.
DesignMatrix one_column(std::size_t column, int n_pos, int n_neg) {
  DesignMatrix d;
  for (int i = 0; i < n_pos + n_neg; ++i) {
    ComparisonFeature f;
    f.phi[column] = 1;
    d.rows.push_back(f);
    d.labels.push_back(i < n_pos ? 1 : 0);
    d.sample_ids.push_back("row-" + std::to_string(i));
  }
  return d;
}

}  // namespace

TEST_CASE("the exact 1-D posterior is antisymmetric in the data", "[synth]") {
  const double b = 0.1;
  const double plus = exact_posterior_1d(one_column(0, 8, 2), b);
  const double minus = exact_posterior_1d(one_column(0, 2, 8), b);
  CHECK(plus > 0.0);
  CHECK_THAT(minus, Catch::Matchers::WithinAbs(-plus, 1e-6));

  const double balanced = exact_posterior_1d(one_column(3, 5, 5), b);
  CHECK_THAT(balanced, Catch::Matchers::WithinAbs(0.0, 1e-6));
}

TEST_CASE("the prior scale controls shrinkage monotonically", "[synth]") {
  const DesignMatrix d = one_column(0, 7, 3);
  const double tight = exact_posterior_1d(d, 0.01);
  const double standard = exact_posterior_1d(d, 0.1);
  const double loose = exact_posterior_1d(d, 1.0);
  CHECK(tight > 0.0);
  CHECK(tight < standard);
  CHECK(standard < loose);
  // With a loose prior the mean approaches the MLE logit(0.7).
  CHECK(loose < std::log(0.7 / 0.3));
}

TEST_CASE("the 1-D oracle rejects malformed designs", "[synth]") {
  DesignMatrix empty_cols;
  ComparisonFeature zero;
  empty_cols.rows = {zero};
  empty_cols.labels = {1};
  empty_cols.sample_ids = {"x"};
  CHECK_THROWS_AS(exact_posterior_1d(empty_cols, 0.1), std::invalid_argument);

  DesignMatrix two_cols = one_column(0, 2, 2);
  two_cols.rows[1].phi[4] = -1;
  CHECK_THROWS_AS(exact_posterior_1d(two_cols, 0.1), std::invalid_argument);

  CHECK_THROWS_AS(exact_posterior_1d(one_column(0, 2, 2), 0.0),
                  std::invalid_argument);
}

TEST_CASE("synthetic samples reproduce their design rows exactly", "[synth]") {
  SynthSpec spec;
  spec.n_samples = 300;
  spec.feature_sparsity = 0.5;
  spec.seed = 77;
  Rng rng(1234);
  for (auto& v : spec.alpha_star) v = 2.0 * rng.uniform01() - 1.0;
  const DesignMatrix d = generate(spec);

  const auto samples = synthetic_samples(d);
  REQUIRE(samples.size() == d.size());
  for (std::size_t r = 0; r < samples.size(); ++r) {
    REQUIRE(validate_sample(samples[r]).empty());
    REQUIRE(sample_feature(samples[r]).phi == d.rows[r].phi);
    const auto label = samples[r].labels.at("synthetic");
    REQUIRE((label == PrefLabel::A ? 1 : 0) == d.labels[r]);
  }
}

TEST_CASE("synthetic datasets survive file round trips", "[synth]") {
  SynthSpec spec;
  spec.n_samples = 50;
  spec.seed = 5;
  spec.alpha_star[2] = 1.0;
  const DesignMatrix d = generate(spec);
  const auto samples = synthetic_samples(d);

  pt::TempDir tmp;
  const std::string path = tmp.file("synth.ndjson");
  save_dataset(path, samples);
  const auto loaded = load_dataset(path);
  REQUIRE(loaded.diagnostics.empty());
  REQUIRE(loaded.samples == samples);

  const DesignMatrix rebuilt = build_design_matrix(
      loaded.samples, "synthetic", GroupTag::scenario("Others"));
  REQUIRE(rebuilt.size() == d.size());
  CHECK(rebuilt.rows == d.rows);
  CHECK(rebuilt.labels == d.labels);
}
