#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "es6migrate/frontend.hpp"
#include "support.hpp"

using namespace es6migrate;
using namespace es6migrate::testing;

namespace fs = std::filesystem;

namespace {

std::set<std::string> feature_names(const ModuleAnalysis& m, bool include_generated = false) {
  std::set<std::string> out;
  for (const auto& f : m.features) {
    if (!include_generated && f.kind == FeatureKind::Mutator) continue;
    out.insert(f.name);
  }
  return out;
}

Project fixture(const std::string& name) { return load_project(fixture_path(name)); }

std::optional<ModuleObjectInfo> object_of(const std::string& src, ModuleFormat format) {
  static std::vector<std::unique_ptr<Program>> keep;
  keep.push_back(std::make_unique<Program>(parse(src, "m.js")));
  return identify_module_object(*keep.back(), format);
}

}  // namespace

TEST(Format, Detection) {
  EXPECT_EQ(detect_format(parse("define(['a'], function(a) { return {}; });")), ModuleFormat::AMD);
  EXPECT_EQ(detect_format(parse("require(['main'], function(m) { m.go(); });")), ModuleFormat::AMD);
  EXPECT_EQ(detect_format(parse("var a = require('a');")), ModuleFormat::CJS);
  EXPECT_EQ(detect_format(parse("module.exports = 1;")), ModuleFormat::CJS);
  EXPECT_EQ(detect_format(parse("exports.x = 1;")), ModuleFormat::CJS);
  EXPECT_EQ(detect_format(parse("var board = []; function f() {}")), ModuleFormat::NonModular);
  Program mixed = parse("define([], function() { var x = require('x'); return x; });");
  EXPECT_EQ(detect_format(mixed), ModuleFormat::AMD);
  EXPECT_FALSE(has_mixed_format(parse("var a = require('a');")));
}

TEST(ModuleObject, CjsInstantiationForms) {
  auto decl = object_of("function Q() {} module.exports = Q;", ModuleFormat::CJS);
  ASSERT_TRUE(decl);
  EXPECT_EQ(decl->instantiation, Instantiation::FunctionDecl);
  EXPECT_EQ(decl->name, "Q");

  auto empty = object_of("var u = {}; u.a = 1; module.exports = u;", ModuleFormat::CJS);
  ASSERT_TRUE(empty);
  EXPECT_EQ(empty->instantiation, Instantiation::EmptyObject);
  EXPECT_TRUE(empty->is_namespace);
  ASSERT_EQ(empty->bound_props.size(), 1u);
  EXPECT_EQ(empty->bound_props[0].name, "a");

  auto literal = object_of("module.exports = {a: 1, b: function() {}};", ModuleFormat::CJS);
  ASSERT_TRUE(literal);
  EXPECT_EQ(literal->instantiation, Instantiation::ObjectLiteral);
  EXPECT_EQ(literal->bound_props.size(), 2u);

  auto alias = object_of("exports.a = 1; exports.b = 2;", ModuleFormat::CJS);
  ASSERT_TRUE(alias);
  EXPECT_EQ(alias->expr, nullptr);
  EXPECT_EQ(alias->name, "mod_m");
  EXPECT_EQ(alias->bound_props.size(), 2u);

  auto evaluated = object_of("module.exports = make(1);", ModuleFormat::CJS);
  ASSERT_TRUE(evaluated);
  EXPECT_EQ(evaluated->instantiation, Instantiation::EvaluatedExpression);
  EXPECT_FALSE(evaluated->is_namespace);
}

TEST(ModuleObject, AmdFactoryReturn) {
  auto info = object_of("define([], function() { var api = {}; api.x = 1; return api; });", ModuleFormat::AMD);
  ASSERT_TRUE(info);
  EXPECT_TRUE(info->is_namespace);
  EXPECT_EQ(info->name, "api");
  ASSERT_EQ(info->bound_props.size(), 1u);
}

TEST(ModuleObject, PrototypeBindingsAreNotBoundProperties) {
  auto info = object_of(
      "function V() { this.x = 0; } V.prototype.len = function() {}; V.zero = function() {}; module.exports = V;",
      ModuleFormat::CJS);
  ASSERT_TRUE(info);
  EXPECT_EQ(info->prototype_bindings.size(), 1u);
  ASSERT_EQ(info->bound_props.size(), 1u);
  EXPECT_EQ(info->bound_props[0].name, "zero");
}

TEST(Naming, Helpers) {
  EXPECT_EQ(sanitize_identifier("scope-manager"), "scope_manager");
  EXPECT_EQ(sanitize_identifier("3d"), "_3d");
  EXPECT_EQ(file_stem_identifier("util/scope-manager.js"), "scope_manager");
  EXPECT_EQ(module_object_placeholder("common/Math.js"), "mod_Math");
  EXPECT_EQ(prefix_candidates("src/common/Math.js"), (std::vector<std::string>{"Math", "common", "src"}));
}

TEST(Naming, ChooseNameEscalatesThroughPrefixes) {
  std::set<std::string> taken{"isFinite", "Math_isFinite"};
  auto is_taken = [&](const std::string& n) { return taken.count(n) > 0; };
  RenamePlan free = choose_name("clamp", "common/Math.js", RenameReason::FeatureConflict, is_taken);
  EXPECT_EQ(free.emitted, "clamp");
  EXPECT_TRUE(free.prefix_chain.empty());
  RenamePlan plan = choose_name("isFinite", "common/Math.js", RenameReason::GlobalBuiltinConflict, is_taken);
  EXPECT_EQ(plan.emitted, "common_Math_isFinite");
  EXPECT_EQ(plan.prefix_chain, (std::vector<std::string>{"common", "Math"}));
  taken.insert("common_Math_isFinite");
  EXPECT_EQ(choose_name("isFinite", "common/Math.js", RenameReason::FeatureConflict, is_taken).emitted,
            "common_Math_isFinite_2");
  EXPECT_EQ(choose_name("x", "a.js", RenameReason::ImportConflict, is_taken, true).emitted, "a_x");
}

TEST(Resolution, CommonJsAndAmd) {
  std::set<std::string> paths{"lib/a.js", "lib/b/index.js", "app/main.js", "app/Score.js"};
  EXPECT_EQ(resolve_cjs("lib/x.js", "./a", paths), "lib/a.js");
  EXPECT_EQ(resolve_cjs("lib/x.js", "./a.js", paths), "lib/a.js");
  EXPECT_EQ(resolve_cjs("lib/x.js", "./b", paths), "lib/b/index.js");
  EXPECT_EQ(resolve_cjs("app/main.js", "../lib/a", paths), "lib/a.js");
  EXPECT_FALSE(resolve_cjs("lib/x.js", "fs", paths));
  EXPECT_FALSE(resolve_cjs("lib/x.js", "./missing", paths));
  EXPECT_EQ(resolve_amd("app/main.js", "app/Score", "", paths), "app/Score.js");
  EXPECT_EQ(resolve_amd("app/main.js", "Score", "app", paths), "app/Score.js");
  EXPECT_EQ(resolve_amd("app/main.js", "./Score", "", paths), "app/Score.js");
  EXPECT_FALSE(resolve_amd("app/main.js", "jquery", "", paths));
}

TEST(Globals, CollectsEachKind) {
  Program p = parse(
      "var explicit = 1;\n"
      "function topLevel() { implied = 2; }\n"
      "window.objectProp = 3;\n",
      "g.js");
  GlobalSets g = collect_globals(p, ModuleFormat::NonModular);
  ASSERT_EQ(g.explicit_vars.size(), 1u);
  EXPECT_EQ(g.explicit_vars[0].name, "explicit");
  ASSERT_EQ(g.top_level.size(), 1u);
  EXPECT_EQ(g.top_level[0].name, "topLevel");
  ASSERT_EQ(g.object_props.size(), 1u);
  EXPECT_EQ(g.object_props[0].name, "objectProp");
  ASSERT_EQ(g.implied.size(), 1u);
  EXPECT_EQ(g.implied[0].name, "implied");
}

TEST(Globals, StrictUndeclaredAssignmentsAreNotGlobals) {
  Program p = parse("'use strict';\nfunction f() { oops = 1; }", "s.js");
  GlobalSets g = collect_globals(p, ModuleFormat::NonModular);
  EXPECT_TRUE(g.implied.empty());
  EXPECT_EQ(g.strict_undeclared.size(), 1u);
}

TEST(Globals, ModuleScopeIsNotGlobalInCommonJs) {
  Program p = parse("var local = 1; exports.x = local;", "c.js");
  GlobalSets g = collect_globals(p, ModuleFormat::CJS);
  EXPECT_TRUE(g.explicit_vars.empty());
  EXPECT_TRUE(g.top_level.empty());
}

TEST(Classification, MathUtilsVariantsAreNamespaces) {
  const std::set<std::string> expected{"DEG_TO_RAD", "degFromRad", "radFromDeg"};
  for (const char* dir : {"namespace_function", "namespace_empty_object", "namespace_literal"}) {
    Project project = fixture(dir);
    ProjectAnalysis a = analyze_project(project);
    const ModuleAnalysis* m = a.find("MathUtils.js");
    ASSERT_TRUE(m) << dir;
    ASSERT_TRUE(m->object) << dir;
    EXPECT_TRUE(m->object->is_namespace) << dir;
    EXPECT_EQ(feature_names(*m), expected) << dir;
    for (const auto& f : m->features) EXPECT_NE(f.kind, FeatureKind::ModuleObject) << dir;
  }
}

TEST(Classification, Vec2IsFactoryWithStaticMembers) {
  Project project = fixture("vec2_factory");
  ProjectAnalysis a = analyze_project(project);
  const ModuleAnalysis* m = a.find("Vec2.js");
  ASSERT_TRUE(m && m->object);
  EXPECT_FALSE(m->object->is_namespace);
  std::set<std::string> expected{"Vec2"};
  for (const auto& b : m->object->bound_props) expected.insert(b.name);
  EXPECT_EQ(expected, (std::set<std::string>{"Vec2", "clone", "neo", "zero"}));
  EXPECT_EQ(feature_names(*m), expected);
  EXPECT_EQ(m->feature("Vec2")->kind, FeatureKind::ModuleObject);
}

TEST(Preconditions, RuleFamilies) {
  EXPECT_EQ(family_of(Rule::GlobalVariableRedeclared), ViolationFamily::GlobalDecls);
  EXPECT_EQ(family_of(Rule::TopLevelFunctionConflict), ViolationFamily::GlobalDecls);
  EXPECT_EQ(family_of(Rule::BracketNotationProperty), ViolationFamily::Destructuring);
  EXPECT_EQ(family_of(Rule::ModuleObjectFullyReferenced), ViolationFamily::Destructuring);
  EXPECT_EQ(family_of(Rule::ModuleObjectModified), ViolationFamily::Destructuring);
  EXPECT_EQ(family_of(Rule::NonStrictThis), ViolationFamily::ModuleFormat);
  EXPECT_EQ(family_of(Rule::NestedImportExport), ViolationFamily::ModuleFormat);
}

TEST(Preconditions, GlobalFamilyAbandonsTheProject) {
  for (auto [dir, rule] : {std::pair{"preconditions/global_var", Rule::GlobalVariableRedeclared},
                           std::pair{"preconditions/global_function", Rule::TopLevelFunctionConflict}}) {
    Project project = fixture(dir);
    try {
      analyze_project(project);
      ADD_FAILURE() << dir << " was not abandoned";
    } catch (const RefactoringAbandoned& e) {
      ASSERT_EQ(e.violations().size(), 1u) << dir;
      EXPECT_EQ(e.violations()[0].rule, rule) << dir;
    }
  }
}

TEST(Preconditions, DestructuringFamilyFallsBackToModuleObject) {
  struct Case {
    const char* dir;
    const char* file;
    Rule rule;
    const char* object;
  };
  for (const Case& c : {Case{"preconditions/bracket_property", "util.js", Rule::BracketNotationProperty, "util"},
                        Case{"preconditions/fully_referenced", "store.js", Rule::ModuleObjectFullyReferenced, "store"},
                        Case{"preconditions/object_modified", "config.js", Rule::ModuleObjectModified, "config"}}) {
    Project project = fixture(c.dir);
    ProjectAnalysis a = analyze_project(project);
    ASSERT_EQ(a.violations.size(), 1u) << c.dir;
    EXPECT_EQ(a.violations[0].rule, c.rule) << c.dir;
    EXPECT_EQ(a.violations[0].path, c.file) << c.dir;
    const ModuleAnalysis* m = a.find(c.file);
    ASSERT_TRUE(m);
    EXPECT_TRUE(m->destructuring_failed);
    EXPECT_FALSE(m->abandoned);
    EXPECT_EQ(feature_names(*m), std::set<std::string>{c.object}) << c.dir;
  }
}

TEST(Preconditions, FormatFamilySkipsOnlyTheOffendingFile) {
  for (auto [dir, file, rule] :
       {std::tuple{"preconditions/nonstrict_this", "handler.js", Rule::NonStrictThis},
        std::tuple{"preconditions/nested_require", "loader.js", Rule::NestedImportExport}}) {
    Project project = fixture(dir);
    ProjectAnalysis a = analyze_project(project);
    ASSERT_EQ(a.violations.size(), 1u) << dir;
    EXPECT_EQ(a.violations[0].rule, rule);
    for (const auto& m : a.modules) EXPECT_EQ(m.abandoned, m.id.path == file) << m.id.path;
    EXPECT_FALSE(a.find(file)->skip_reason.empty());
  }
}

TEST(Preconditions, LenientNestingDowngradesToWarning) {
  Project project = fixture("preconditions/nested_require");
  AnalysisOptions options;
  options.lenient_nesting = true;
  ProjectAnalysis a = analyze_project(project, options);
  EXPECT_TRUE(a.violations.empty());
  EXPECT_FALSE(a.find("loader.js")->abandoned);
  bool warned = std::any_of(a.diagnostics.begin(), a.diagnostics.end(), [](const Diagnostic& d) {
    return d.level == Diagnostic::Level::Warning && d.path == "loader.js";
  });
  EXPECT_TRUE(warned);
}

TEST(Preconditions, StrictModeAllowsPlainThis) {
  Program strict = parse("'use strict';\nfunction f() { return this; }\nmodule.exports = f;", "s.js");
  EXPECT_TRUE(check_format_preconditions(strict, ModuleFormat::CJS).empty());
  Program method = parse("module.exports = {m: function() { return this.x; }};", "m.js");
  EXPECT_TRUE(check_format_preconditions(method, ModuleFormat::CJS).empty());
  Program ctor = parse("function C() { this.x = 1; }\nmodule.exports = C;", "c.js");
  EXPECT_TRUE(check_format_preconditions(ctor, ModuleFormat::CJS, {"C"}).empty());
  EXPECT_EQ(check_format_preconditions(ctor, ModuleFormat::CJS, {}).size(), 1u);
}

TEST(Preconditions, AmdNestedReturn) {
  Program p = parse("define([], function() { if (x) { return {a: 1}; } return {b: 2}; });", "n.js");
  auto v = check_format_preconditions(p, ModuleFormat::AMD);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].rule, Rule::NestedImportExport);
}

class MdgGolden : public ::testing::TestWithParam<std::string> {};

TEST_P(MdgGolden, EdgesMatchHandEnumeratedList) {
  std::string name = GetParam();
  std::string dir = name;
  if (dir.rfind("preconditions_", 0) == 0) dir = "preconditions/" + dir.substr(14);
  Project project = fixture(dir);
  ASSERT_LE(project.programs.size(), 5u);
  Mdg mdg = build_mdg(project);
  EXPECT_EQ(edges_of(mdg), read_edges(golden_path("mdg/" + name + ".edges")));
  EXPECT_TRUE(check_invariants(mdg).empty());
  EXPECT_EQ(deserialize(serialize(mdg)), mdg);
}

INSTANTIATE_TEST_SUITE_P(Fixtures, MdgGolden,
                         ::testing::Values("planck", "namespace_function", "namespace_empty_object", "namespace_literal", "vec2_factory", "mathlib", "hangman",
                                           "write_dependency", "narrowed", "preconditions_bracket_property",
                                           "preconditions_fully_referenced", "preconditions_object_modified",
                                           "preconditions_nonstrict_this", "preconditions_nested_require",
                                           "census_session"));

TEST(Mdg, FeaturesAndExportsOfPlanck) {
  Project project = fixture("planck");
  ProjectAnalysis a = analyze_project(project);
  const ModuleAnalysis* math = a.find("common/Math.js");
  ASSERT_TRUE(math);
  EXPECT_EQ(feature_names(*math), (std::set<std::string>{"EPSILON", "assert", "clamp", "invSqrt", "isFinite", "math"}));
  for (const auto& f : math->features) EXPECT_EQ(f.exported, f.name == "isFinite") << f.name;
  EXPECT_EQ(math->feature("isFinite")->emitted_name, "Math_isFinite");
  ASSERT_EQ(math->renames.size(), 1u);
  EXPECT_EQ(math->renames[0].reason, RenameReason::GlobalBuiltinConflict);
}

TEST(Mdg, MutatorsForWrittenFeatures) {
  Project project = fixture("write_dependency");
  ProjectAnalysis a = analyze_project(project);
  const ModuleAnalysis* state = a.find("state.js");
  ASSERT_TRUE(state);
  std::set<std::string> mutators;
  for (const auto& f : state->features) {
    if (f.kind == FeatureKind::Mutator) {
      mutators.insert(f.name);
      EXPECT_EQ(f.name, "set_" + f.mutates);
      EXPECT_TRUE(f.exported);
    }
  }
  EXPECT_EQ(mutators, (std::set<std::string>{"set_lives", "set_score"}));
}

TEST(Mdg, LibraryModeExportsEverything) {
  Project project = fixture("library_api");
  AnalysisOptions options;
  options.library_mode = true;
  ProjectAnalysis a = analyze_project(project, options);
  const ModuleAnalysis* m = a.find("strings.js");
  ASSERT_TRUE(m);
  ASSERT_FALSE(m->features.empty());
  for (const auto& f : m->features) EXPECT_TRUE(f.exported) << f.name;
  ProjectAnalysis plain = analyze_project(project);
  for (const auto& f : plain.find("strings.js")->features) EXPECT_FALSE(f.exported) << f.name;
}

TEST(Mdg, EmptyProject) {
  Project empty;
  Mdg mdg = build_mdg(empty);
  EXPECT_TRUE(mdg.modules.empty());
  EXPECT_TRUE(mdg.deps.empty());
}

TEST(Mdg, SideEffectRequireYieldsFeaturelessEdge) {
  Project project = make_project({{"a.js", "require('./b');\nexports.x = 1;", Origin::JsFile, std::nullopt, {}},
                                  {"b.js", "exports.y = 2;", Origin::JsFile, std::nullopt, {}}});
  Mdg mdg = build_mdg(project);
  EXPECT_EQ(edges_of(mdg), (std::set<Edge>{{"a.js", "b.js", "-", "S"}}));
}

TEST(Mdg, AmdBaseDirectory) {
  Project project = make_project(
      {{"app/main.js", "define(['app/Score'], function(Score) { return {run: function() { Score.add(1); }}; });",
        Origin::JsFile, std::nullopt, {}},
       {"app/Score.js", "define([], function() { var s = {}; s.add = function(n) { return n; }; return s; });",
        Origin::JsFile, std::nullopt, {}}});
  EXPECT_EQ(edges_of(build_mdg(project)), (std::set<Edge>{{"app/main.js", "app/Score.js", "add", "C"}}));
  AnalysisOptions options;
  options.amd_base = "app";
  Project relative = make_project(
      {{"app/main.js", "define(['Score'], function(Score) { return {run: function() { Score.add(1); }}; });",
        Origin::JsFile, std::nullopt, {}},
       {"app/Score.js", "define([], function() { var s = {}; s.add = function(n) { return n; }; return s; });",
        Origin::JsFile, std::nullopt, {}}});
  EXPECT_EQ(edges_of(build_mdg(relative, options)), (std::set<Edge>{{"app/main.js", "app/Score.js", "add", "C"}}));
}

TEST(Loader, GlobMatching) {
  EXPECT_TRUE(matches_glob("node_modules/**", "node_modules/x/y.js"));
  EXPECT_TRUE(matches_glob("**/vendor/**", "vendor/a.js"));
  EXPECT_TRUE(matches_glob("**/vendor/**", "lib/vendor/a.js"));
  EXPECT_FALSE(matches_glob("**/vendor/**", "lib/vendors/a.js"));
  EXPECT_TRUE(matches_glob("*.min.js", "dist/app.min.js"));
  EXPECT_FALSE(matches_glob("node_modules/**", "src/node_modules.js"));
}

TEST(Loader, WalksTreeWithExcludesPagesAndTests) {
  fs::path root = temp_dir("loader");
  auto put = [&](const std::string& rel, const std::string& text) {
    fs::create_directories((root / rel).parent_path());
    std::ofstream(root / rel) << text;
  };
  put("src/a.js", "var a = 1;");
  put("src/b.js", "var b = a;");
  put("node_modules/dep/index.js", "module.exports = 1;");
  put("lib/vendor/jq.js", "var jq = 1;");
  put("broken.js", "var = ;");
  put("index.html", "<script src=\"src/a.js\"></script><script>var inline = a;</script>");
  put("spec/a_test.js", "var t = a;");

  LoadOptions options;
  options.tests_dir = "spec";
  Project p = load_project(root.string(), options);
  std::vector<std::string> paths;
  for (const auto& prog : p.programs) paths.push_back(prog.path());
  EXPECT_EQ(paths, (std::vector<std::string>{"index.inline0.js", "spec/a_test.js", "src/a.js", "src/b.js"}));
  ASSERT_EQ(p.load_errors.size(), 1u);
  EXPECT_EQ(p.load_errors[0].path, "broken.js");
  ASSERT_EQ(p.pages.size(), 1u);
  EXPECT_EQ(p.pages[0].scripts, (std::vector<std::string>{"src/a.js", "index.inline0.js"}));
  EXPECT_EQ(p.test_paths, std::set<std::string>{"spec/a_test.js"});

  options.excludes.push_back("spec/**");
  options.tests_dir.clear();
  EXPECT_EQ(load_project(root.string(), options).programs.size(), 3u);

  LoadOptions outside;
  outside.tests_dir = "../elsewhere";
  EXPECT_THROW(load_project(root.string(), outside), ProjectLoadError);
  EXPECT_THROW(load_project((root / "missing").string()), ProjectLoadError);
  fs::remove_all(root);
}
