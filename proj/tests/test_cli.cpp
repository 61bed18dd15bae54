#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "support.hpp"

using namespace es6migrate::testing;
using nlohmann::json;

namespace fs = std::filesystem;

namespace {

std::string shell_quote(const std::string& s) { return "'" + s + "'"; }

std::string root(const std::string& fixture) { return "--root " + shell_quote(fixture_path(fixture)); }

json read_json(const std::string& path) { return json::parse(read_file(path)); }

}  // namespace

TEST(Cli, AnalyzeEmptyDirectory) {
  std::string dir = temp_dir("cli_empty");
  std::string out = temp_dir("cli_empty_out");
  CliRun r = run_cli("analyze --root " + shell_quote(dir) + " --out " + shell_quote(out));
  EXPECT_EQ(r.exit_code, 0) << r.output;
  json mdg = read_json(out + "/mdg.json");
  EXPECT_TRUE(mdg["modules"].empty());
  EXPECT_TRUE(mdg["deps"].empty());
  EXPECT_TRUE(read_json(out + "/violations.json").empty());
}

TEST(Cli, AnalyzeWritesGoldenGraph) {
  std::string out = temp_dir("cli_analyze");
  CliRun r = run_cli("analyze " + root("planck") + " --out " + shell_quote(out));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  json mdg = read_json(out + "/mdg.json");
  std::set<Edge> edges;
  for (const auto& d : mdg["deps"]) {
    edges.insert({d["from"], d["to"], d["feature"].is_null() ? "-" : d["feature"].get<std::string>(), d["usage"]});
  }
  EXPECT_EQ(edges, read_edges(golden_path("mdg/planck.edges")));
}

TEST(Cli, AnalyzeToStdout) {
  CliRun r = run_cli("analyze " + root("mathlib"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("\"deps\""), std::string::npos);
}

TEST(Cli, GlobalConflictAbandons) {
  std::string out = temp_dir("cli_abandon");
  CliRun r = run_cli("analyze " + root("preconditions/global_var") + " --out " + shell_quote(out));
  EXPECT_EQ(r.exit_code, 2) << r.output;
  json violations = read_json(out + "/violations.json");
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_EQ(violations[0]["family"], "GlobalDecls");
  EXPECT_TRUE(read_json(out + "/mdg.json")["modules"].empty());

  std::string refactored = temp_dir("cli_abandon_refactor");
  EXPECT_EQ(run_cli("refactor " + root("preconditions/global_var") + " --out " + shell_quote(refactored)).exit_code, 2);
}

TEST(Cli, MixedFormatsAbortInAutoMode) {
  CliRun r = run_cli("analyze " + root("mixed_formats"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.output.find("mixes AMD"), std::string::npos) << r.output;
}

TEST(Cli, MissingRootIsAnError) {
  EXPECT_NE(run_cli("analyze --root /nonexistent/es6migrate").exit_code, 0);
}

TEST(Cli, ModuleFailureExitsThree) {
  std::string out = temp_dir("cli_failure");
  CliRun r = run_cli("refactor " + root("module_failure") + " --out " + shell_quote(out));
  EXPECT_EQ(r.exit_code, 3) << r.output;
  json report = read_json(out + "/es6migrate-report.json");
  bool failed = false;
  for (const auto& m : report["modules"]) failed = failed || m["status"] == "failed";
  EXPECT_TRUE(failed);
}

TEST(Cli, RefactorNeedsExactlyOneDestination) {
  std::string out = temp_dir("cli_both");
  EXPECT_NE(run_cli("refactor " + root("mathlib") + " --out " + shell_quote(out) + " --in-place").exit_code, 0);
  EXPECT_NE(run_cli("refactor " + root("mathlib")).exit_code, 0);
}

TEST(Cli, RefactorMirrorsTree) {
  std::string out = temp_dir("cli_mirror");
  ASSERT_EQ(run_cli("refactor " + root("hangman") + " --out " + shell_quote(out)).exit_code, 0);
  std::set<std::string> in, written;
  for (const auto& [p, _] : read_tree(fixture_path("hangman"))) in.insert(p);
  for (const auto& [p, _] : read_tree(out)) written.insert(p);
  in.insert("es6migrate-report.json");
  EXPECT_EQ(in, written);
}

TEST(Cli, InPlaceTouchesOnlyScripts) {
  std::string dir = temp_dir("cli_inplace");
  fs::copy(fixture_path("hangman"), dir, fs::copy_options::recursive);
  std::string page = read_file(dir + "/index.html");
  CliRun r = run_cli("refactor --root " + shell_quote(dir) + " --in-place");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(read_file(dir + "/index.html"), page);
  EXPECT_NE(read_file(dir + "/game.js").find("export {"), std::string::npos);
  EXPECT_NE(r.output.find("\"modules\""), std::string::npos);
}

TEST(Cli, RefactorIsDeterministic) {
  std::string a = temp_dir("cli_det_a");
  std::string b = temp_dir("cli_det_b");
  ASSERT_EQ(run_cli("refactor " + root("planck") + " --out " + shell_quote(a)).exit_code, 0);
  ASSERT_EQ(run_cli("refactor " + root("planck") + " --out " + shell_quote(b)).exit_code, 0);
  EXPECT_EQ(read_tree(a), read_tree(b));
}

TEST(Cli, LibraryFlagExportsEverything) {
  std::string out = temp_dir("cli_library");
  ASSERT_EQ(run_cli("refactor " + root("library_api") + " --library --out " + shell_quote(out)).exit_code, 0);
  std::string text = read_file(out + "/strings.js");
  for (const char* f : {"capitalize", "repeat", "reverse"}) EXPECT_NE(text.find(f), std::string::npos);
  EXPECT_NE(text.find("export {capitalize, repeat, reverse};"), std::string::npos) << text;
}

TEST(Cli, LenientNestingWarns) {
  std::string out = temp_dir("cli_lenient");
  CliRun strict = run_cli("refactor " + root("preconditions/nested_require") + " --out " + shell_quote(out));
  EXPECT_EQ(strict.exit_code, 0);
  CliRun lenient =
      run_cli("refactor " + root("preconditions/nested_require") + " --lenient-nesting --out " + shell_quote(out));
  EXPECT_EQ(lenient.exit_code, 0);
  EXPECT_NE(lenient.output.find("warn"), std::string::npos) << lenient.output;
  EXPECT_NE(read_file(out + "/loader.js").find("import"), std::string::npos);
}

TEST(Cli, MetricsInMemoryAndFromTree) {
  CliRun r = run_cli("metrics " + root("narrowed"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  json in_memory = json::parse(r.output);
  EXPECT_LT(in_memory["delta"]["avg_fo"].get<double>(), 0.0);

  std::string after = temp_dir("cli_metrics_after");
  ASSERT_EQ(run_cli("refactor " + root("narrowed") + " --out " + shell_quote(after)).exit_code, 0);
  std::string out = temp_dir("cli_metrics_out");
  ASSERT_EQ(run_cli("metrics " + root("narrowed") + " --after " + shell_quote(after) + " --out " + shell_quote(out)).exit_code, 0);
  EXPECT_EQ(read_json(out + "/metrics.json"), in_memory);
}

TEST(Cli, ClassifyWritesCensusAndCsv) {
  std::string out = temp_dir("cli_classify");
  ASSERT_EQ(run_cli("classify " + root("census_session") + " --out " + shell_quote(out)).exit_code, 0);
  json census = read_json(out + "/census.json");
  EXPECT_EQ(census["classes"]["Factory"]["percent"], "80.0");
  std::string csv = read_file(out + "/formats.csv");
  EXPECT_EQ(csv.rfind("path,format\n", 0), 0u);
  EXPECT_NE(csv.find("index.js,CJS"), std::string::npos) << csv;
}

TEST(Cli, ClassifyEmptyProject) {
  CliRun r = run_cli("classify --root " + shell_quote(temp_dir("cli_classify_empty")));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("\"total\": 0"), std::string::npos) << r.output;
}
