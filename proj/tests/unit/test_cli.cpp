#include "sph/cli.hpp"
#include "sph/error.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace sph;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, GoldenErrorCodes) {
  const std::vector<std::string> golden = {
      "E_UNSUPPORTED_TYPE", "E_DEGENERATE_INPUT", "E_NOT_DOMINANT", "E_DIM_CAP",      "E_NOT_SUBALGEBRA", "E_NON_NILPOTENT",
      "E_NON_REDUCTIVE",    "E_NOT_ADAPTED",      "E_NO_INTERTWINER", "E_QUATERNIONIC", "E_INCONCLUSIVE",   "E_BAND_LIMIT",
      "E_NON_ORTHONORMAL",  "E_PARSE",            "E_UNKNOWN_SYMBOL", "E_PROVENANCE",   "E_USAGE",          "E_INTERNAL"};
  std::vector<std::string> names;
  for (ErrorCode c : kAllErrorCodes) names.emplace_back(error_code_name(c));
  EXPECT_EQ(names, golden);
}

TEST(Cli, DocumentedExamples) {
  auto r = run({"spherical", "--group", "A2", "--subalgebra", "cartan"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "not_spherical (dimension obstruction 7 < 8)");

  r = run({"mf", "--group", "A1", "--module", "defining+defining", "--degree", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "fails at degree 2, label 2ω, multiplicity 3");

  r = run({"catalog", "run", "--all", "--ids", "a1-cartan,a2-cartan,a1-defining"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find(" 0 disagreements"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"spherical", "--help"}).code, 0);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"spherical"}).code, 2);  // --group is required
  EXPECT_EQ(run({"spherical", "--group", "A2", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"catalog", "run"}).code, 2);  // neither --all nor --checks

  auto r = run({"spherical", "--group", "E8"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("[E_UNSUPPORTED_TYPE]"), std::string::npos);
  r = run({"spherical", "--group", "A2", "--subalgebra", "levi"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("[E_UNKNOWN_SYMBOL]"), std::string::npos);
  r = run({"spherical", "--group", "A1", "--span", "1,0,0;0,0,1"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("[E_NOT_SUBALGEBRA]"), std::string::npos);
  r = run({"involution", "--group", "A2", "--span", "1,0,0,0,0,-1,0,0"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("[E_NOT_ADAPTED]"), std::string::npos) << r.err;
  r = run({"isotypic", "--poly", "x^^2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("[E_PARSE]"), std::string::npos);

  // verification failure: the sign-flipped intertwiner
  EXPECT_EQ(run({"involution", "--group", "A1", "--subalgebra", "cartan", "--module", "char(2)"}).code, 0);
  EXPECT_EQ(run({"involution", "--group", "A1", "--subalgebra", "cartan", "--module", "char(2)", "--flip-sign"}).code, 1);
}

TEST(Cli, CatalogDisagreementExitsOne) {
  const std::string path = ::testing::TempDir() + "sph_cli_catalog.json";
  std::ofstream(path) << R"({"schema_version": 1, "entries": [
    {"id": "wrong", "group": "A2", "subalgebra": "cartan",
     "expected": {"spherical": {"verdict": "spherical", "provenance": "derived_oracle"}}}]})";
  auto r = run({"catalog", "run", "--checks", "spherical", "--path", path});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find(" 1 disagreements"), std::string::npos) << r.out;

  // the environment variable is the fallback for --path
  ::setenv(kCatalogEnv, path.c_str(), 1);
  EXPECT_EQ(run({"catalog", "run", "--checks", "spherical"}).code, 1);
  EXPECT_EQ(run({"catalog", "validate"}).code, 0);
  ::unsetenv(kCatalogEnv);

  std::ofstream(path) << "{ \"schema_version\": 1, \"entries\": [ }";
  r = run({"catalog", "validate", "--path", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("[E_PARSE]"), std::string::npos);
}

TEST(Cli, StructuredOutputIsDeterministic) {
  const std::vector<std::vector<std::string>> cases = {
      {"spherical", "--group", "A2", "--subalgebra", "principal", "--seed", "7", "--format", "json"},
      {"fibration", "--group", "B2", "--subalgebra", "borel", "--format", "json"},
      {"mf", "--group", "A2", "--subalgebra", "cartan", "--degree", "4", "--format", "json"},
      {"involution", "--group", "A2", "--subalgebra", "full", "--module", "defining", "--seed", "3", "--format", "json"},
      {"isotypic", "--torus", "2", "--seed", "5", "--format", "json"},
      {"catalog", "run", "--checks", "spherical,adapted", "--ids", "a1-cartan,a2-borel,b2-cartan", "--format", "json"}};
  for (const auto& args : cases) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args[0] << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << args[0];
    const auto j = nlohmann::json::parse(a.out);
    EXPECT_TRUE(j.contains("seed")) << args[0];
  }
}

TEST(Cli, SphericalWitnessIsExact) {
  const auto r = run({"spherical", "--group", "A2", "--subalgebra", "principal", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "spherical");
  ASSERT_TRUE(j.contains("certificate"));
  EXPECT_EQ(j["certificate"]["reverified_rank"], 8);
  for (const auto& p : j["certificate"]["parameters"]) EXPECT_TRUE(p["t"].is_string());
}
