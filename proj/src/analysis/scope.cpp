#include "es6migrate/scope.hpp"

#include <algorithm>
#include <array>

namespace es6migrate {

const Binding* Scope::own(std::string_view name) const {
  auto it = bindings.find(name);
  return it == bindings.end() ? nullptr : &it->second;
}

const Binding* Scope::lookup(std::string_view name) const {
  for (const Scope* s = this; s; s = s->parent) {
    if (const Binding* b = s->own(name)) return b;
  }
  return nullptr;
}

const Scope& Scope::function_scope() const {
  const Scope* s = this;
  while (s->kind == ScopeKind::Catch && s->parent) s = s->parent;
  return *s;
}

ScopeTree::ScopeTree(const Program& program) {
  Scope& root = new_scope(ScopeKind::Program, nullptr, nullptr);
  for (const auto& stmt : program.body) hoist(root, *stmt);
  for (const auto& stmt : program.body) build(root, *stmt, nullptr);
}

Scope& ScopeTree::new_scope(ScopeKind kind, const Node* owner, Scope* parent) {
  scopes_.push_back(std::make_unique<Scope>());
  Scope& s = *scopes_.back();
  s.kind = kind;
  s.node = owner;
  s.parent = parent;
  if (parent) parent->children.push_back(&s);
  if (owner) owned_[owner] = &s;
  return s;
}

void ScopeTree::declare(Scope& scope, std::string name, BindingKind kind, const Node* decl) {
  all_names_.insert(name);
  auto it = scope.bindings.find(name);
  if (it == scope.bindings.end()) {
    scope.bindings.emplace(name, Binding{name, kind, decl, &scope});
    return;
  }
  Binding& existing = it->second;
  // Function declarations win over vars and the function's own name;
  // parameters win over the function's own name.
  bool replace = (kind == BindingKind::Function &&
                  (existing.kind == BindingKind::Var || existing.kind == BindingKind::FunctionName)) ||
                 (kind == BindingKind::Param && existing.kind == BindingKind::FunctionName);
  if (replace) existing = Binding{std::move(name), kind, decl, &scope};
}

void ScopeTree::hoist(Scope& scope, const Node& node) {
  switch (node.kind) {
    case NodeKind::VarDeclarator:
      declare(scope, node.text, BindingKind::Var, &node);
      break;
    case NodeKind::FunctionDeclaration:
      declare(scope, node.text, BindingKind::Function, &node);
      return;
    case NodeKind::FunctionExpression:
      return;
    case NodeKind::ImportNamed:
    case NodeKind::ImportDefault:
    case NodeKind::ImportNamespace:
      for (const auto& s : node.specifiers) declare(scope, s.second, BindingKind::Import, &node);
      return;
    default:
      break;
  }
  for (const auto& c : node.children) {
    if (c) hoist(scope, *c);
  }
}

void ScopeTree::build(Scope& scope, const Node& node, const Node* parent) {
  parents_[&node] = parent;
  node_scope_[&node] = &scope;
  if (node.is_function()) {
    Scope& fn = new_scope(ScopeKind::Function, &node, &scope);
    if (node.is(NodeKind::FunctionExpression) && !node.text.empty()) {
      declare(fn, node.text, BindingKind::FunctionName, &node);
    }
    for (const auto& p : node.params) declare(fn, p, BindingKind::Param, &node);
    for (const auto& c : node.children) hoist(fn, *c);
    for (const auto& c : node.children) build(fn, *c, &node);
    return;
  }
  if (node.is(NodeKind::Try)) {
    if (node.child(0)) build(scope, *node.child(0), &node);
    if (const Node* handler = node.child(1)) {
      Scope& c = new_scope(ScopeKind::Catch, &node, &scope);
      declare(c, node.text, BindingKind::CatchParam, &node);
      build(c, *handler, &node);
    }
    if (node.child(2)) build(scope, *node.child(2), &node);
    return;
  }
  if (node.is(NodeKind::Identifier)) {
    references_.push_back(&node);
    if (const Binding* b = scope.lookup(node.text)) {
      resolved_[&node] = b;
    } else {
      free_[node.text].push_back(&node);
    }
    return;
  }
  for (const auto& c : node.children) {
    if (c) build(scope, *c, &node);
  }
}

const Scope* ScopeTree::scope_of(const Node* owner) const {
  auto it = owned_.find(owner);
  return it == owned_.end() ? nullptr : it->second;
}

const Scope& ScopeTree::enclosing(const Node* node) const {
  auto it = node_scope_.find(node);
  return it == node_scope_.end() ? root() : *it->second;
}

const Binding* ScopeTree::resolve(const Node* identifier) const {
  auto it = resolved_.find(identifier);
  return it == resolved_.end() ? nullptr : it->second;
}

const Node* ScopeTree::parent(const Node* node) const {
  auto it = parents_.find(node);
  return it == parents_.end() ? nullptr : it->second;
}

const Node* ScopeTree::enclosing_function(const Node* node) const {
  for (const Node* p = parent(node); p; p = parent(p)) {
    if (p->is_function()) return p;
  }
  return nullptr;
}

std::vector<const Node*> ScopeTree::references_to(const Binding* binding) const {
  std::vector<const Node*> out;
  for (const Node* ref : references_) {
    if (resolve(ref) == binding) out.push_back(ref);
  }
  return out;
}

namespace {

constexpr std::array<std::string_view, 46> kReserved = {
    "break",  "case",     "catch",   "class",     "const",   "continue", "debugger", "default",
    "delete", "do",       "else",    "enum",      "export",  "extends",  "false",    "finally",
    "for",    "function", "if",      "import",    "in",      "instanceof", "new",    "null",
    "return", "super",    "switch",  "this",      "throw",   "true",     "try",      "typeof",
    "var",    "void",     "while",   "with",      "yield",   "let",      "static",   "implements",
    "interface", "package", "private", "protected", "public", "await"};

constexpr std::array<std::string_view, 53> kBuiltins = {
    "Array",      "Boolean",   "Date",         "Error",       "EvalError",   "Function",
    "Infinity",   "JSON",      "Map",          "Math",        "NaN",         "Number",
    "Object",     "Promise",   "Proxy",        "RangeError",  "ReferenceError", "Reflect",
    "RegExp",     "Set",       "String",       "Symbol",      "SyntaxError", "TypeError",
    "URIError",   "WeakMap",   "WeakSet",      "arguments",   "decodeURI",   "decodeURIComponent",
    "encodeURI",  "encodeURIComponent", "escape", "eval",     "isFinite",    "isNaN",
    "parseFloat", "parseInt",  "undefined",    "unescape",    "console",     "window",
    "document",   "global",    "globalThis",   "self",        "setTimeout",  "setInterval",
    "clearTimeout", "clearInterval", "require", "module",     "exports"};

}  // namespace

bool is_reserved_word(std::string_view name) {
  return std::find(kReserved.begin(), kReserved.end(), name) != kReserved.end();
}

bool is_builtin_global(std::string_view name) {
  return std::find(kBuiltins.begin(), kBuiltins.end(), name) != kBuiltins.end() || name == "define" ||
         name == "process" || name == "navigator" || name == "location" || name == "alert";
}

}  // namespace es6migrate
