#include <algorithm>

#include "internal.hpp"

namespace es6migrate {

namespace detail {

bool is_require_call(const Node& node) {
  return node.is(NodeKind::Call) && node.children.size() == 2 && node.child(0)->is_identifier("require") &&
         !node.child(1)->is(NodeKind::Array);
}

bool is_module_exports(const Node& node) {
  return node.is_dot_member("exports") && node.child(0)->is_identifier("module");
}

bool is_global_object(const Node& node, const ScopeTree& scopes) {
  if (!node.is(NodeKind::Identifier)) return false;
  if (node.text != "window" && node.text != "global" && node.text != "globalThis" && node.text != "self") {
    return false;
  }
  return scopes.resolve(&node) == nullptr;
}

std::optional<AmdDefinition> find_amd_definition(const Program& program) {
  for (const auto& stmt : program.body) {
    if (!stmt->is(NodeKind::ExpressionStatement)) continue;
    const Node* call = stmt->child(0);
    if (!call->is(NodeKind::Call)) continue;
    const Node* callee = call->child(0);
    bool is_define = callee->is_identifier("define");
    bool is_require = callee->is_identifier("require") || callee->is_identifier("requirejs");
    if (!is_define && !is_require) continue;
    AmdDefinition def;
    def.statement = stmt.get();
    def.call = call;
    std::size_t i = 1;
    // Named modules: define("id", [...], fn).
    if (is_define && i < call->children.size() && call->child(i)->is_string_literal() &&
        call->children.size() > 2) {
      ++i;
    }
    if (i < call->children.size() && call->child(i)->is(NodeKind::Array)) def.deps = call->child(i++);
    if (is_require) {
      if (!def.deps) continue;
      def.is_require_entry = true;
    }
    if (i < call->children.size()) {
      const Node* last = call->child(i);
      if (last->is(NodeKind::FunctionExpression)) {
        def.factory = last;
      } else {
        def.value = last;
      }
    }
    if (is_define && !def.factory && !def.value) continue;
    return def;
  }
  return std::nullopt;
}

Usage usage_of(const ScopeTree& scopes, const Node* expr) {
  if (write_of(scopes, expr)) return Usage::W;
  const Node* p = scopes.parent(expr);
  if (p && (p->is(NodeKind::Call) || p->is(NodeKind::New)) && p->child(0) == expr) return Usage::C;
  return Usage::R;
}

const Node* write_of(const ScopeTree& scopes, const Node* expr) {
  const Node* p = scopes.parent(expr);
  if (!p) return nullptr;
  if (p->is(NodeKind::Assignment) && p->child(0) == expr) return p;
  if (p->is(NodeKind::Unary) && (p->text == "++" || p->text == "--" || p->text == "delete")) return p;
  return nullptr;
}

const std::vector<NodePtr>& module_body(const Program& program, const Node* factory) {
  return factory ? factory->children : program.body;
}

const Scope& module_scope(const ScopeTree& scopes, const Node* factory) {
  if (factory) {
    if (const Scope* s = scopes.scope_of(factory)) return *s;
  }
  return scopes.root();
}

bool uses_this(const Node& fn) {
  bool found = false;
  for (const auto& c : fn.children) {
    visit(*c, [&](const Node& n) {
      if (n.is(NodeKind::ThisExpression)) found = true;
      return !found && !n.is_function();
    });
  }
  return found;
}

bool has_empty_body(const Node& fn) {
  return std::all_of(fn.children.begin(), fn.children.end(),
                     [](const NodePtr& s) { return s->is(NodeKind::Empty); });
}

}  // namespace detail

const char* to_string(ModuleFormat format) {
  switch (format) {
    case ModuleFormat::NonModular: return "NonModular";
    case ModuleFormat::AMD: return "AMD";
    case ModuleFormat::CJS: return "CJS";
  }
  return "?";
}

namespace {

bool has_cjs_syntax(const Program& program) {
  bool found = false;
  visit(program, [&](const Node& n) {
    if (detail::is_require_call(n) || detail::is_module_exports(n) || n.is_identifier("exports")) {
      found = true;
    }
    return !found;
  });
  return found;
}

}  // namespace

ModuleFormat detect_format(const Program& program) {
  if (detail::find_amd_definition(program)) return ModuleFormat::AMD;
  if (has_cjs_syntax(program)) return ModuleFormat::CJS;
  return ModuleFormat::NonModular;
}

bool has_mixed_format(const Program& program) {
  return detail::find_amd_definition(program) && has_cjs_syntax(program);
}

}  // namespace es6migrate
