#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "es6migrate/ast.hpp"
#include "es6migrate/mdg.hpp"
#include "es6migrate/scope.hpp"

namespace es6migrate {

enum class ModuleFormat { NonModular, AMD, CJS };

const char* to_string(ModuleFormat format);

/// AMD when a top-level `define(...)` (or `require([...], fn)` entry point)
/// exists, else CJS when `require(...)`, `module.exports` or `exports`
/// appear, else NonModular.
ModuleFormat detect_format(const Program& program);
/// True when a program carries both AMD and CJS syntax (AMD wins).
bool has_mixed_format(const Program& program);

enum class Instantiation {
  FunctionDecl,
  FunctionExpr,
  EmptyObject,
  ObjectLiteral,
  EvaluatedExpression,
  Imported,
};

const char* to_string(Instantiation inst);

struct BoundProperty {
  std::string name;
  /// Right-hand side of the binding assignment or the pair value.
  const Node* value = nullptr;
  /// ExpressionStatement holding the assignment, or the PropertyPair.
  const Node* site = nullptr;
};

/// The module object e_i and its bound properties B_i.
struct ModuleObjectInfo {
  /// Function declaration, object literal or exported expression; null for
  /// the alias form (`exports.x = ...` without a whole-object assignment).
  const Node* expr = nullptr;
  Instantiation instantiation = Instantiation::EmptyObject;
  bool is_namespace = false;
  /// Feature name of e_i: its declared identifier when it has one,
  /// otherwise `mod_<file>`.
  std::string name;
  /// Module-scope identifiers bound to e_i.
  std::vector<std::string> aliases;
  /// Declaration of the primary alias (VarDeclarator or FunctionDeclaration).
  const Node* alias_decl = nullptr;
  /// `module.exports = ...` assignments or the AMD factory return.
  std::vector<const Node*> export_sites;
  std::vector<BoundProperty> bound_props;
  /// `X.prototype.m = ...` statements.
  std::vector<const Node*> prototype_bindings;

  const BoundProperty* find(std::string_view prop) const;
};

enum class ViolationFamily { GlobalDecls, Destructuring, ModuleFormat };

enum class Rule {
  GlobalVariableRedeclared,
  TopLevelFunctionConflict,
  BracketNotationProperty,
  ModuleObjectFullyReferenced,
  ModuleObjectModified,
  NonStrictThis,
  NestedImportExport,
};

const char* to_string(ViolationFamily family);
const char* to_string(Rule rule);
ViolationFamily family_of(Rule rule);

struct PreconditionViolation {
  ViolationFamily family;
  Rule rule;
  std::string path;
  Span site;
  std::string message;
};

PreconditionViolation make_violation(Rule rule, std::string path, Span site, std::string message);

struct GlobalDecl {
  std::string name;
  FeatureKind kind = FeatureKind::GlobalVar;
  const Node* site = nullptr;
  Span span;
  /// Function declaration (as opposed to a var).
  bool is_function = false;
};

/// G_i, O_i, T_i and the implied globals of one file.
struct GlobalSets {
  std::vector<GlobalDecl> explicit_vars;
  std::vector<GlobalDecl> object_props;
  std::vector<GlobalDecl> top_level;
  std::vector<GlobalDecl> implied;
  /// Undeclared assignment targets in strict files (probable errors).
  std::vector<GlobalDecl> strict_undeclared;
};

enum class ImportStyle {
  Namespace,   // var v = require(s)
  Named,       // var v = require(s).p
  SideEffect,  // require(s);
  Inline,      // require(s) inside a larger expression
  AmdParam,    // define([s], function(v) {...})
};

struct ImportBinding {
  std::string specifier;
  /// Resolved project path; empty for libraries and abandoned targets.
  std::string target;
  ImportStyle style = ImportStyle::Namespace;
  /// Bound variable or parameter; empty for SideEffect and Inline.
  std::string local;
  std::string property;
  const Node* call = nullptr;
  /// Top-level statement containing the require (null for AMD params).
  const Node* statement = nullptr;
  const Node* declarator = nullptr;
  bool local_written = false;
  bool nested = false;
  bool dynamic = false;
};

/// One use of a foreign feature.
struct FeatureAccess {
  /// Node replaced by the transform: Identifier, MemberAccess (`v.p`,
  /// `window.g`, `require(s).p`) or the inline require Call.
  const Node* node = nullptr;
  std::string target;
  std::string feature;
  Usage usage = Usage::R;
  /// Enclosing Assignment or update expression for writes.
  const Node* write = nullptr;
  /// Index into ModuleAnalysis::imports; npos for global accesses.
  std::size_t import_index = static_cast<std::size_t>(-1);
};

enum class RenameReason { FeatureConflict, GlobalBuiltinConflict, ImportConflict };

const char* to_string(RenameReason reason);

struct RenamePlan {
  std::string original;
  std::string emitted;
  RenameReason reason = RenameReason::FeatureConflict;
  std::vector<std::string> prefix_chain;
};

struct Diagnostic {
  enum class Level { Warning, Error };
  Level level = Level::Warning;
  std::string path;
  std::optional<Span> span;
  std::string message;
};

struct ModuleAnalysis {
  const Program* program = nullptr;
  std::shared_ptr<const ScopeTree> scopes;
  ModuleId id;
  ModuleFormat format = ModuleFormat::NonModular;
  bool is_test = false;
  /// AMD: the `define`/`require` statement and its factory function.
  const Node* amd_statement = nullptr;
  const Node* factory = nullptr;
  std::optional<ModuleObjectInfo> object;
  GlobalSets globals;
  std::vector<PreconditionViolation> violations;
  /// Excluded from M because of a module-format violation.
  bool abandoned = false;
  std::string skip_reason;
  /// Step 1 fallback taken: F = {e_i}.
  bool destructuring_failed = false;
  /// F_i, sorted by name.
  std::vector<ModuleFeature> features;
  std::vector<RenamePlan> renames;
  std::vector<ImportBinding> imports;
  std::vector<FeatureAccess> accesses;
  std::vector<Diagnostic> diagnostics;

  const ModuleFeature* feature(std::string_view name) const;
  /// Distinct imported specifiers (the "number of imports").
  std::size_t import_count() const;
  /// Top-level statements of the module body (factory body for AMD).
  const std::vector<NodePtr>& module_body() const;
  const Scope& module_scope() const;
};

struct HtmlPage {
  std::string path;
  std::string text;
  /// Project paths of the page's scripts in load order (inline scripts
  /// under their synthetic paths).
  std::vector<std::string> scripts;
  std::vector<Span> elements;
};

struct Project {
  std::string root;
  std::vector<Program> programs;
  std::vector<HtmlPage> pages;
  /// Paths of test files that join as clients.
  std::set<std::string> test_paths;
  std::vector<Diagnostic> load_errors;
};

struct LoadOptions {
  std::vector<std::string> excludes = {"node_modules/**", "**/vendor/**"};
  /// Root-relative directory whose files always join as clients.
  std::string tests_dir;
};

class ProjectLoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Loads every .js and .html file under `root` (sorted, root-relative
/// paths). Unparsable files land in `load_errors`. Throws ProjectLoadError
/// when `root` is not a directory or `tests_dir` lies outside it.
Project load_project(const std::string& root, const LoadOptions& options = {});
/// Builds a project from in-memory sources (tests and tooling).
Project make_project(const std::vector<SourceFile>& files);
/// Glob match where `*` also crosses `/`; `**/x` matches `x` at the root.
bool matches_glob(std::string_view pattern, std::string_view path);

struct AnalysisOptions {
  std::optional<ModuleFormat> forced_format;
  /// Project-relative base directory for AMD ids ("" = root).
  std::string amd_base;
  bool lenient_nesting = false;
  bool library_mode = false;
};

struct ProjectAnalysis {
  /// Sorted by path; includes abandoned files.
  std::vector<ModuleAnalysis> modules;
  Mdg mdg;
  std::vector<PreconditionViolation> violations;
  std::vector<Diagnostic> diagnostics;

  const ModuleAnalysis* find(std::string_view path) const;
};

class RefactoringAbandoned : public std::runtime_error {
 public:
  explicit RefactoringAbandoned(std::vector<PreconditionViolation> violations);
  const std::vector<PreconditionViolation>& violations() const { return violations_; }

 private:
  std::vector<PreconditionViolation> violations_;
};

// Per-file operations. `scopes` must be built over `program`.

std::optional<ModuleObjectInfo> identify_module_object(const Program& program, ModuleFormat format);
std::optional<ModuleObjectInfo> identify_module_object(const Program& program, ModuleFormat format,
                                                       const ScopeTree& scopes);
std::vector<BoundProperty> collect_bound_properties(const ModuleObjectInfo& info, const Program& program,
                                                    ModuleFormat format, const ScopeTree& scopes);
std::vector<PreconditionViolation> check_destructuring_preconditions(const ModuleObjectInfo& info,
                                                                     const Program& program,
                                                                     ModuleFormat format,
                                                                     const ScopeTree& scopes);
/// F_i from the module object alone (Steps 1-3), before globals.
std::vector<ModuleFeature> resolve_module_structure(const ModuleObjectInfo* info, bool preconditions_failed);
GlobalSets collect_globals(const Program& program, ModuleFormat format, const ScopeTree& scopes);
GlobalSets collect_globals(const Program& program, ModuleFormat format);
std::vector<PreconditionViolation> check_global_preconditions(const std::vector<ModuleAnalysis>& modules);
/// Adds G, T and allocated O/implied globals to each module's features.
/// Throws RefactoringAbandoned when global preconditions fail.
void resolve_global_features(std::vector<ModuleAnalysis>& modules);
/// `constructors` lists names used as `new` targets anywhere in the project.
std::vector<PreconditionViolation> check_format_preconditions(
    const Program& program, ModuleFormat format, const std::set<std::string>& constructors = {},
    bool lenient_nesting = false, std::vector<Diagnostic>* warnings = nullptr);

/// Names used as `new` targets or extended through `X.prototype`.
std::set<std::string> constructor_names(const Project& project);

/// Whole-project analysis: M, D, violations and per-module details.
/// Throws RefactoringAbandoned on global-precondition violations.
ProjectAnalysis analyze_project(const Project& project, const AnalysisOptions& options = {});
Mdg build_mdg(const Project& project, const AnalysisOptions& options = {});

// Naming helpers shared with the transform.

/// Replaces non-identifier characters with `_`; prefixes `_` before a
/// leading digit.
std::string sanitize_identifier(std::string_view text);
/// Sanitized file name without extension: "util/scope-manager.js" ->
/// "scope_manager".
std::string file_stem_identifier(std::string_view path);
/// `mod_<file>`.
std::string module_object_placeholder(std::string_view path);
/// Prefix candidates: file stem, then parent folders innermost first.
std::vector<std::string> prefix_candidates(std::string_view path);
/// Picks `original` or the first prefixed variant for which `taken` is
/// false, escalating through `prefix_candidates(path)` and finally numeric
/// suffixes.
RenamePlan choose_name(const std::string& original, std::string_view path, RenameReason reason,
                       const std::function<bool(const std::string&)>& taken,
                       bool force_prefix = false);

/// Resolves a CJS specifier from `from_path`; nullopt for libraries.
std::optional<std::string> resolve_cjs(const std::string& from_path, const std::string& specifier,
                                       const std::set<std::string>& project_paths);
/// Resolves an AMD id against `base`; relative ids ("./x") resolve against
/// the requiring module.
std::optional<std::string> resolve_amd(const std::string& from_path, const std::string& id,
                                       const std::string& base, const std::set<std::string>& project_paths);

}  // namespace es6migrate
