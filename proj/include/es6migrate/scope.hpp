#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "es6migrate/ast.hpp"

namespace es6migrate {

enum class ScopeKind { Program, Function, Catch };

enum class BindingKind { Var, Function, Param, CatchParam, FunctionName, Import };

struct Scope;

struct Binding {
  std::string name;
  BindingKind kind;
  /// VarDeclarator, function node, Try node, or import statement.
  const Node* decl = nullptr;
  const Scope* scope = nullptr;
};

struct Scope {
  ScopeKind kind = ScopeKind::Program;
  /// Function node or Try node; null for the program scope.
  const Node* node = nullptr;
  const Scope* parent = nullptr;
  std::map<std::string, Binding, std::less<>> bindings;
  std::vector<const Scope*> children;

  const Binding* own(std::string_view name) const;
  const Binding* lookup(std::string_view name) const;
  /// Nearest enclosing function or program scope (skips catch scopes).
  const Scope& function_scope() const;
};

/// ES5 function-level scopes with hoisting, plus module-level import
/// bindings for ES6 output. Also records each node's parent so analyses can
/// inspect the syntactic context of a reference.
class ScopeTree {
 public:
  explicit ScopeTree(const Program& program);
  ScopeTree(const ScopeTree&) = delete;
  ScopeTree& operator=(const ScopeTree&) = delete;

  const Scope& root() const { return *scopes_.front(); }
  /// Scope owned by a function or Try node, if any.
  const Scope* scope_of(const Node* owner) const;
  /// Innermost scope in which `node` occurs.
  const Scope& enclosing(const Node* node) const;
  /// Binding an Identifier reference resolves to; null when free.
  const Binding* resolve(const Node* identifier) const;
  const Node* parent(const Node* node) const;
  /// Nearest enclosing function node; null at program level.
  const Node* enclosing_function(const Node* node) const;

  /// Every Identifier reference in source order.
  const std::vector<const Node*>& references() const { return references_; }
  /// Identifier references resolving to `binding`.
  std::vector<const Node*> references_to(const Binding* binding) const;
  /// Identifier references with no binding, by name.
  const std::map<std::string, std::vector<const Node*>, std::less<>>& free_references() const {
    return free_;
  }
  /// Names bound anywhere in the program (any scope).
  const std::set<std::string, std::less<>>& all_bound_names() const { return all_names_; }

 private:
  void declare(Scope& scope, std::string name, BindingKind kind, const Node* decl);
  void hoist(Scope& scope, const Node& node);
  void build(Scope& scope, const Node& node, const Node* parent);
  Scope& new_scope(ScopeKind kind, const Node* owner, Scope* parent);

  std::vector<std::unique_ptr<Scope>> scopes_;
  std::unordered_map<const Node*, Scope*> owned_;
  std::unordered_map<const Node*, const Scope*> node_scope_;
  std::unordered_map<const Node*, const Node*> parents_;
  std::unordered_map<const Node*, const Binding*> resolved_;
  std::vector<const Node*> references_;
  std::map<std::string, std::vector<const Node*>, std::less<>> free_;
  std::set<std::string, std::less<>> all_names_;
};

/// JavaScript reserved words and literal names that can never be bindings.
bool is_reserved_word(std::string_view name);

/// Standard ES5/ES6 global names (Math, isFinite, JSON, ...) plus common
/// host globals (window, document, console, require, module, ...).
bool is_builtin_global(std::string_view name);

}  // namespace es6migrate
