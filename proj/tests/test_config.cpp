#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "helpers.hpp"
#include "preflens/config.hpp"

using namespace preflens;
namespace pt = preflens::testing;

namespace {

RunConfig parse(const std::string& text, RunConfig base = {}) {
  std::istringstream in(text);
  return parse_config(in, std::move(base));
}

}  // namespace

TEST_CASE("every config key parses into its field", "[config]") {
  const RunConfig c = parse(
      "dataset = \"data/prefs.ndjson\"\n"
      "output_dir = \"results\"\n"
      "judges = [\"human\", \"GPT-4-Turbo\"]\n"
      "groups = [\"Others\"]\n"
      "formats = [\"json\", \"svg\"]\n"
      "group_set = [\"Others\", \"Unsafe Query\"]\n"
      "prior_scale = 0.2\n"
      "chains = 2\n"
      "warmup = 100\n"
      "samples = 250\n"
      "folds = 3\n"
      "target_accept = 0.9\n"
      "max_tree_depth = 8\n"
      "seed = 12345\n"
      "error_policy = \"drop\"\n"
      "band_halfwidth = 0.2\n");
  CHECK(c.dataset == "data/prefs.ndjson");
  CHECK(c.output_dir == "results");
  CHECK(c.judges == std::vector<std::string>{"human", "GPT-4-Turbo"});
  CHECK(c.groups == std::vector<std::string>{"Others"});
  CHECK(c.formats == std::vector<std::string>{"json", "svg"});
  CHECK(c.group_set == std::vector<std::string>{"Others", "Unsafe Query"});
  CHECK(c.fit.prior_scale == 0.2);
  CHECK(c.fit.chains == 2);
  CHECK(c.fit.warmup == 100);
  CHECK(c.fit.samples_per_chain == 250);
  CHECK(c.fit.folds == 3);
  CHECK(c.fit.target_accept == 0.9);
  CHECK(c.fit.max_tree_depth == 8);
  CHECK(c.fit.seed == 12345);
  CHECK(c.fit.error_policy == ErrorSamplePolicy::drop);
  CHECK(c.band_halfwidth == 0.2);
}

TEST_CASE("defaults survive an empty config", "[config]") {
  const RunConfig c = parse("");
  CHECK(c.dataset.empty());
  CHECK(c.output_dir == "out");
  CHECK(c.judges.empty());
  CHECK(c.formats ==
        std::vector<std::string>{"json", "csv", "markdown", "svg"});
  CHECK(c.fit.prior_scale == 0.1);
  CHECK(c.fit.chains == 4);
  CHECK(c.fit.warmup == 500);
  CHECK(c.fit.samples_per_chain == 1500);
  CHECK(c.fit.folds == 10);
  CHECK(c.fit.target_accept == 0.8);
  CHECK(c.fit.error_policy == ErrorSamplePolicy::zero_error_slots);
  CHECK(c.band_halfwidth == 0.15);
}

TEST_CASE("unknown keys are rejected with their line number", "[config]") {
  try {
    parse("chains = 2\n\nchain = 4\n");
    FAIL("expected invalid_argument");
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("unknown key: chain") != std::string::npos);
  }
}

TEST_CASE("comments and blank lines are ignored", "[config]") {
  const RunConfig c = parse(
      "# full-line comment\n"
      "\n"
      "chains = 2  # trailing comment\n"
      "   \t  \n"
      "dataset = \"has # inside\"  # but this goes\n");
  CHECK(c.fit.chains == 2);
  CHECK(c.dataset == "has # inside");
}

TEST_CASE("string escapes", "[config]") {
  CHECK(parse("dataset = \"a\\\"b\"\n").dataset == "a\"b");
  CHECK(parse("dataset = \"a\\\\b\"\n").dataset == "a\\b");
  CHECK_THROWS_WITH(parse("dataset = \"a\\qb\"\n"),
                    Catch::Matchers::ContainsSubstring("unsupported escape \\q"));
  CHECK_THROWS_WITH(parse("dataset = unquoted\n"),
                    Catch::Matchers::ContainsSubstring("double-quoted string"));
}

TEST_CASE("arrays parse quoted strings with commas", "[config]") {
  CHECK(parse("judges = []\n").judges.empty());
  CHECK(parse("judges = [\"a\"]\n").judges == std::vector<std::string>{"a"});
  CHECK(parse("judges = [ \"a\" , \"b, c\" ]\n").judges ==
        std::vector<std::string>{"a", "b, c"});
  CHECK_THROWS_AS(parse("judges = [\"a\" \"b\"]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("judges = [a]\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("judges = \"a\"\n"), std::invalid_argument);
}

TEST_CASE("numeric values must parse completely", "[config]") {
  CHECK_THROWS_WITH(parse("chains = abc\n"),
                    Catch::Matchers::ContainsSubstring("expected a number"));
  CHECK_THROWS_AS(parse("chains = 3.5\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("prior_scale = zero\n"), std::invalid_argument);
  CHECK(parse("prior_scale = 1e-2\n").fit.prior_scale == 0.01);
}

TEST_CASE("malformed lines report where they are", "[config]") {
  CHECK_THROWS_WITH(parse("chains\n"),
                    Catch::Matchers::ContainsSubstring("expected key = value"));
  CHECK_THROWS_WITH(parse(" = 3\n"),
                    Catch::Matchers::ContainsSubstring("empty key"));
}

TEST_CASE("error_policy accepts only its two spellings", "[config]") {
  CHECK(parse("error_policy = \"drop\"\n").fit.error_policy ==
        ErrorSamplePolicy::drop);
  CHECK(parse("error_policy = \"zero-error-slots\"\n").fit.error_policy ==
        ErrorSamplePolicy::zero_error_slots);
  CHECK_THROWS_AS(parse("error_policy = \"keep\"\n"), std::runtime_error);
}

TEST_CASE("a parsed file overlays the base configuration", "[config]") {
  RunConfig base;
  base.fit.chains = 8;
  base.fit.seed = 99;
  base.output_dir = "base-out";
  const RunConfig c = parse("chains = 2\n", base);
  CHECK(c.fit.chains == 2);      // overridden
  CHECK(c.fit.seed == 99);       // kept from base
  CHECK(c.output_dir == "base-out");
}

TEST_CASE("apply_config_value is the same gate the parser uses", "[config]") {
  RunConfig c;
  apply_config_value(c, "seed", "42");
  CHECK(c.fit.seed == 42);
  CHECK_THROWS_AS(apply_config_value(c, "sede", "42"), std::invalid_argument);
}

TEST_CASE("the JSON snapshot round-trips the interesting fields", "[config]") {
  RunConfig c;
  c.dataset = "d.ndjson";
  c.judges = {"human"};
  c.fit.chains = 2;
  c.fit.seed = 7;
  c.band_halfwidth = 0.1;
  const nlohmann::json j = run_config_to_json(c);
  CHECK(j.at("dataset").get<std::string>() == "d.ndjson");
  CHECK(j.at("output_dir").get<std::string>() == "out");
  CHECK(j.at("judges").size() == 1);
  CHECK(j.at("fit").at("chains").get<int>() == 2);
  CHECK(j.at("fit").at("seed").get<std::uint64_t>() == 7);
  CHECK(j.at("fit").at("error_policy").get<std::string>() == "zero-error-slots");
  CHECK(j.at("band_halfwidth").get<double>() == 0.1);
}

TEST_CASE("load_config reads files and rejects missing paths", "[config]") {
  pt::TempDir tmp;
  const std::string path = tmp.file("run.conf");
  pt::spit(path, "chains = 3\nseed = 17\n");
  const RunConfig c = load_config(path);
  CHECK(c.fit.chains == 3);
  CHECK(c.fit.seed == 17);
  CHECK_THROWS_AS(load_config(tmp.file("absent.conf")), std::runtime_error);
}
