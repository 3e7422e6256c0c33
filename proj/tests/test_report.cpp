#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "preflens/report.hpp"

using namespace preflens;
namespace pt = preflens::testing;
namespace fs = std::filesystem;

namespace {

std::size_t count_occurrences(const std::string& haystack,
                              const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos;
       pos = haystack.find(needle, pos + needle.size()))
    ++n;
  return n;
}

// A fully hand-built model: no sampler involved, so report tests are instant
// and deterministic.
FittedPreferenceModel make_model(const std::string& judge, const GroupTag& group,
                                 double base) {
  FittedPreferenceModel m;
  m.judge = judge;
  m.group = group;
  for (std::size_t i = 0; i < kNumProperties; ++i) {
    m.alpha[i] = base + 0.05 * static_cast<double>(i);
    m.informative[i] = true;
  }
  m.train_accuracy = 0.75;
  m.dataset_hash = "feedfacefeedface";

  FitDiagnostics d;
  d.chains.push_back({0.9, 0, 0.4});
  d.chains.push_back({0.85, 2, 0.5});
  for (std::size_t i = 0; i < kNumProperties; ++i) {
    d.rhat[i] = 1.0 + 0.001 * static_cast<double>(i);
    d.ess[i] = 400.0 + static_cast<double>(i);
  }
  d.warnings.push_back("2 divergent transitions");
  m.fold_diagnostics.push_back(d);
  m.fold_alphas.push_back(m.alpha);
  return m;
}

ReportInputs make_inputs() {
  ReportInputs inputs;
  // Deliberately unsorted: emitters must order by (judge, group).
  inputs.models.push_back(make_model("zeta", GroupTag::unsafe(), -0.4));
  inputs.models.push_back(make_model("alpha", GroupTag::scenario("Others"), 0.2));
  inputs.dataset_hash = "feedfacefeedface";
  inputs.config_snapshot = {{"chains", 4}, {"seed", 7}};

  SimilarityMatrix sim;
  sim.judges = {"alpha", "zeta"};
  sim.values = {{1.0, 0.25}, {0.25, 1.0}};
  sim.group_set = {GroupTag::scenario("Others")};
  inputs.similarity = sim;
  return inputs;
}

}  // namespace

TEST_CASE("sanitize_filename keeps portable characters only", "[report]") {
  CHECK(sanitize_filename("Unsafe Query") == "Unsafe-Query");
  CHECK(sanitize_filename("GPT-4-Turbo") == "GPT-4-Turbo");
  CHECK(sanitize_filename("a/b\\c:d") == "a-b-c-d");
  CHECK(sanitize_filename("ok_name.v1-2") == "ok_name.v1-2");
  CHECK(sanitize_filename("") == "");
}

TEST_CASE("csv_escape quotes exactly the fields that need it", "[report]") {
  using report_detail::csv_escape;
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("with space") == "with space");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("xml_escape covers the five special characters", "[report]") {
  using report_detail::xml_escape;
  CHECK(xml_escape("complex word & sentence") == "complex word &amp; sentence");
  CHECK(xml_escape("<tag>") == "&lt;tag&gt;");
  CHECK(xml_escape("she said \"no\"") == "she said &quot;no&quot;");
  CHECK(xml_escape("nothing special") == "nothing special");
}

TEST_CASE("profile SVG draws one bar per informative property", "[report]") {
  PreferenceProfile p;
  p.judge = "judge <1>";
  p.group = GroupTag::scenario("Others");
  for (std::size_t i = 0; i < 5; ++i) {
    p.informative[i] = true;
    p.degree[i] = 0.4 + 0.1 * static_cast<double>(i);
  }
  // Also exercise XML escaping in a property label.
  p.informative[13] = true;  // complex word & sentence
  p.degree[13] = 0.6;

  const std::string svg = render_profile_svg(p, "dataset_hash=abc config={}");
  CHECK(count_occurrences(svg, "fill=\"#4477aa\"") == 6);
  CHECK(svg.find("<title>judge &lt;1&gt; on Others</title>") != std::string::npos);
  CHECK(svg.find("<desc>dataset_hash=abc config={}</desc>") != std::string::npos);
  CHECK(svg.find("complex word &amp; sentence") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("50%") != std::string::npos);
  // Uninformative properties stay out of the chart entirely.
  CHECK(svg.find("lengthy") == std::string::npos);
}

TEST_CASE("SVG without provenance has no desc element", "[report]") {
  PreferenceProfile p;
  p.judge = "j";
  p.group = GroupTag::unsafe();
  p.informative[0] = true;
  p.degree[0] = 0.5;
  const std::string svg = render_profile_svg(p);
  CHECK(svg.find("<desc>") == std::string::npos);
  CHECK(count_occurrences(svg, "fill=\"#4477aa\"") == 1);
}

TEST_CASE("emit_report writes every requested format", "[report]") {
  const ReportInputs inputs = make_inputs();
  pt::TempDir tmp;
  const auto written =
      emit_report(inputs, {"json", "csv", "markdown", "svg"}, tmp.file("out"));

  // json + degrees.csv + similarity.csv + report.md + two SVGs.
  REQUIRE(written.size() == 6);
  for (const std::string& path : written) CHECK(fs::exists(path));

  SECTION("JSON payload") {
    const auto j = nlohmann::json::parse(pt::slurp(written[0]));
    CHECK(j.at("schema_version").get<int>() == 1);
    CHECK(j.at("dataset_hash").get<std::string>() == "feedfacefeedface");
    CHECK(j.at("config").at("chains").get<int>() == 4);
    REQUIRE(j.at("models").size() == 2);
    // Sorted by judge name regardless of insertion order.
    CHECK(j["models"][0].at("judge").get<std::string>() == "alpha");
    CHECK(j["models"][1].at("judge").get<std::string>() == "zeta");
    CHECK(j["models"][0].at("group").at("kind").get<std::string>() == "scenario");
    CHECK(j["models"][1].at("group").at("name").get<std::string>() ==
          "Unsafe Query");
    CHECK(j["models"][0].at("alpha").size() == kNumProperties);
    CHECK(j["models"][0].at("top3").size() == 3);
    CHECK(j["models"][0].at("last3").size() == 3);
    CHECK(j["models"][0].at("diagnostics").at("divergences").get<long>() == 2);
    CHECK(j.at("similarity").at("judges").size() == 2);
  }

  SECTION("degrees CSV") {
    const std::string csv = pt::slurp(written[1]);
    CHECK(csv.rfind("# dataset_hash=feedfacefeedface\n", 0) == 0);
    CHECK(csv.find("# config=") != std::string::npos);
    CHECK(csv.find("judge,group,property,weight,degree_percent,informative\n") !=
          std::string::npos);
    // One row per (model, property) pair.
    CHECK(count_occurrences(csv, "\n") == 3 + 2 * kNumProperties);
    CHECK(csv.find("alpha,Others,harmless,") != std::string::npos);
    CHECK(csv.find("zeta,Unsafe Query,") != std::string::npos);
    // The & property name needs no CSV quoting.
    CHECK(csv.find(",complex word & sentence,") != std::string::npos);
  }

  SECTION("markdown summary") {
    const std::string md = pt::slurp(written[3]);
    CHECK(md.rfind("# Preference dissection report\n", 0) == 0);
    CHECK(md.find("## alpha on Others") != std::string::npos);
    CHECK(md.find("## zeta on Unsafe Query") != std::string::npos);
    CHECK(md.find("- Top 3: ") != std::string::npos);
    CHECK(md.find("- Last 3: ") != std::string::npos);
    CHECK(md.find("| property | degree (%) | weight |") != std::string::npos);
    CHECK(md.find("- Warning: 2 divergent transitions") != std::string::npos);
    CHECK(md.find("## Judge similarity") != std::string::npos);
    // Models come before the similarity section, alpha before zeta.
    CHECK(md.find("## alpha on Others") < md.find("## zeta on Unsafe Query"));
  }

  SECTION("SVG files") {
    const fs::path svg_dir = fs::path(tmp.file("out")) / "svg";
    CHECK(fs::exists(svg_dir / "alpha-Others.svg"));
    CHECK(fs::exists(svg_dir / "zeta-Unsafe-Query.svg"));
    const std::string svg = pt::slurp((svg_dir / "alpha-Others.svg").string());
    CHECK(count_occurrences(svg, "fill=\"#4477aa\"") == kNumProperties);
    CHECK(svg.find("dataset_hash=feedfacefeedface") != std::string::npos);
  }
}

TEST_CASE("emit_report can write a single format", "[report]") {
  const ReportInputs inputs = make_inputs();
  pt::TempDir tmp;
  const auto written = emit_report(inputs, {"markdown"}, tmp.file("md-only"));
  REQUIRE(written.size() == 1);
  CHECK(fs::path(written[0]).filename() == "report.md");
  CHECK_FALSE(fs::exists(fs::path(tmp.file("md-only")) / "report.json"));
}

TEST_CASE("emit_report rejects unknown formats", "[report]") {
  const ReportInputs inputs = make_inputs();
  pt::TempDir tmp;
  CHECK_THROWS_AS(emit_report(inputs, {"json", "pdf"}, tmp.file("bad")),
                  std::invalid_argument);
  CHECK_THROWS_AS(emit_report(inputs, {"JSON"}, tmp.file("bad2")),
                  std::invalid_argument);
}

TEST_CASE("reports are byte-identical across reruns", "[report]") {
  const ReportInputs inputs = make_inputs();
  pt::TempDir tmp;
  const auto first =
      emit_report(inputs, {"json", "csv", "markdown", "svg"}, tmp.file("r1"));
  const auto second =
      emit_report(inputs, {"json", "csv", "markdown", "svg"}, tmp.file("r2"));
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(fs::path(first[i]).filename() == fs::path(second[i]).filename());
    CHECK(pt::slurp(first[i]) == pt::slurp(second[i]));
  }
}

TEST_CASE("reports without a similarity matrix omit its outputs", "[report]") {
  ReportInputs inputs = make_inputs();
  inputs.similarity.reset();
  pt::TempDir tmp;
  const auto written =
      emit_report(inputs, {"json", "csv", "markdown"}, tmp.file("nosim"));
  REQUIRE(written.size() == 3);
  const auto j = nlohmann::json::parse(pt::slurp(written[0]));
  CHECK_FALSE(j.contains("similarity"));
  CHECK_FALSE(fs::exists(fs::path(tmp.file("nosim")) / "similarity.csv"));
  const std::string md = pt::slurp(written[2]);
  CHECK(md.find("## Judge similarity") == std::string::npos);
}
