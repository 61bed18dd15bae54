#include <gtest/gtest.h>

#include <fstream>
#include <map>

#include "es6migrate/frontend.hpp"
#include "es6migrate/scope.hpp"
#include "support.hpp"

using namespace es6migrate;
using namespace es6migrate::testing;

namespace {

std::vector<OutputFile> refactor_fixture(const std::string& dir) {
  Project p = load_project(fixture_path(dir));
  ProjectAnalysis a = analyze_project(p);
  RefactorResult r = refactor_project(p, a);
  EXPECT_FALSE(r.any_failed()) << dir;
  return r.files;
}

bool is_script(const std::string& path) { return path.size() > 3 && path.substr(path.size() - 3) == ".js"; }

/// Closed-world check: every named import resolves to an export of a file in
/// the output tree, and no module reads a top-level name of another module
/// without importing it.
void expect_sound(const std::string& dir) {
  std::map<std::string, Program> modules;
  for (const auto& f : refactor_fixture(dir)) {
    if (is_script(f.path)) modules.emplace(f.path, parse(f.text, f.path));
  }
  std::map<std::string, std::set<std::string>> exports, declared;
  for (const auto& [path, program] : modules) {
    for (const auto& s : program.body) {
      if (s->is(NodeKind::ExportNamed)) {
        for (const auto& spec : s->specifiers) exports[path].insert(spec.second);
      }
    }
    ScopeTree scopes(program);
    for (const auto& [name, binding] : scopes.root().bindings) {
      if (binding.kind != BindingKind::Import) declared[path].insert(name);
    }
  }
  for (const auto& [path, program] : modules) {
    std::set<std::string> imported;
    for (const auto& s : program.body) {
      if (!s->is(NodeKind::ImportNamed)) continue;
      std::string target = join_path(parent_directory(path), s->text);
      ASSERT_TRUE(modules.count(target)) << dir << ": " << path << " imports missing " << s->text;
      for (const auto& spec : s->specifiers) {
        EXPECT_TRUE(exports[target].count(spec.first)) << dir << ": " << path << " imports " << spec.first << " from " << target;
        EXPECT_TRUE(imported.insert(spec.second).second) << dir << ": duplicate import " << spec.second;
      }
    }
    ScopeTree scopes(program);
    for (const auto& [name, _] : scopes.free_references()) {
      if (is_builtin_global(name)) continue;
      for (const auto& [other, names] : declared) {
        if (other == path) continue;
        EXPECT_FALSE(names.count(name)) << dir << ": " << path << " reads " << name << " of " << other;
      }
    }
  }
}

std::string in_dir(const std::string& dir, const std::string& command) { return "cd '" + dir + "' && " + command; }

std::string expected_output(const std::string& name) { return read_file(golden_path("behavior/" + name + ".out")); }

}  // namespace

TEST(Behavior, ImportsAndExportsAreSound) {
  for (const char* dir : {"mathlib", "hangman", "write_dependency", "narrowed", "planck", "namespace_function", "namespace_empty_object", "namespace_literal",
                          "vec2_factory", "census_session"}) {
    expect_sound(dir);
  }
}

TEST(Behavior, MathLibraryOutputUnchanged) {
  std::string node = find_node();
  if (node.empty()) GTEST_SKIP() << "node not found; soundness check covers this fixture";
  CliRun before = run_shell(in_dir(fixture_path("mathlib"), "'" + node + "' main.js"));
  ASSERT_EQ(before.exit_code, 0) << before.output;
  EXPECT_EQ(before.output, expected_output("mathlib"));

  std::string out = temp_dir("behavior_mathlib");
  write_module_tree(out, refactor_fixture("mathlib"));
  CliRun after = run_shell(in_dir(out, "'" + node + "' main.js"));
  ASSERT_EQ(after.exit_code, 0) << after.output;
  EXPECT_EQ(after.output, before.output);
}

TEST(Behavior, GlobalStatePagesOutputUnchanged) {
  std::string node = find_node();
  if (node.empty()) GTEST_SKIP() << "node not found; soundness check covers this fixture";
  std::string runner = std::string(ES6MIGRATE_SCRIPTS) + "/run_scripts.cjs";
  CliRun before = run_shell(in_dir(fixture_path("hangman"), "'" + node + "' '" + runner + "' game.js hint.js play.js"));
  ASSERT_EQ(before.exit_code, 0) << before.output;
  EXPECT_EQ(before.output, expected_output("hangman"));

  std::string out = temp_dir("behavior_hangman");
  write_module_tree(out, refactor_fixture("hangman"));
  std::ofstream(out + "/run.mjs") << "import \"./game.js\";\nimport \"./hint.js\";\nimport \"./play.js\";\n";
  CliRun after = run_shell(in_dir(out, "'" + node + "' run.mjs"));
  ASSERT_EQ(after.exit_code, 0) << after.output;
  EXPECT_EQ(after.output, before.output);
}
