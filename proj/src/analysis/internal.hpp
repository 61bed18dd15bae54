#pragma once

#include <optional>
#include <string>
#include <vector>

#include "es6migrate/analysis.hpp"

namespace es6migrate::detail {

/// A top-level `define(...)` or `require([...], fn)` statement.
struct AmdDefinition {
  const Node* statement = nullptr;
  const Node* call = nullptr;
  /// Dependency array, when present.
  const Node* deps = nullptr;
  /// Factory function, when present.
  const Node* factory = nullptr;
  /// Non-function definition value (`define({...})`).
  const Node* value = nullptr;
  bool is_require_entry = false;
};

std::optional<AmdDefinition> find_amd_definition(const Program& program);

/// `require(<arg>)` with a single non-array argument.
bool is_require_call(const Node& node);
/// `module.exports`.
bool is_module_exports(const Node& node);
/// Free `window`/`global`/`globalThis`/`self` identifier.
bool is_global_object(const Node& node, const ScopeTree& scopes);

/// Usage implied by the syntactic position of an expression.
Usage usage_of(const ScopeTree& scopes, const Node* expr);
/// The assignment or update expression writing `expr`, if any.
const Node* write_of(const ScopeTree& scopes, const Node* expr);

/// Statements forming the module body and the scope they live in.
const std::vector<NodePtr>& module_body(const Program& program, const Node* factory);
const Scope& module_scope(const ScopeTree& scopes, const Node* factory);

/// `this` used directly in `fn` (not inside nested functions).
bool uses_this(const Node& fn);

/// Inside a function or compound statement below the module top level
/// (`top` is the AMD factory, or null).
bool is_nested(const ScopeTree& scopes, const Node* node, const Node* top);

/// Empty body, or body of only empty statements.
bool has_empty_body(const Node& fn);

}  // namespace es6migrate::detail
