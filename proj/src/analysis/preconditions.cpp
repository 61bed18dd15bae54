#include "internal.hpp"

namespace es6migrate {

const char* to_string(ViolationFamily family) {
  switch (family) {
    case ViolationFamily::GlobalDecls: return "GlobalDecls";
    case ViolationFamily::Destructuring: return "Destructuring";
    case ViolationFamily::ModuleFormat: return "ModuleFormat";
  }
  return "?";
}

const char* to_string(Rule rule) {
  switch (rule) {
    case Rule::GlobalVariableRedeclared: return "GlobalVariableRedeclared";
    case Rule::TopLevelFunctionConflict: return "TopLevelFunctionConflict";
    case Rule::BracketNotationProperty: return "BracketNotationProperty";
    case Rule::ModuleObjectFullyReferenced: return "ModuleObjectFullyReferenced";
    case Rule::ModuleObjectModified: return "ModuleObjectModified";
    case Rule::NonStrictThis: return "NonStrictThis";
    case Rule::NestedImportExport: return "NestedImportExport";
  }
  return "?";
}

ViolationFamily family_of(Rule rule) {
  switch (rule) {
    case Rule::GlobalVariableRedeclared:
    case Rule::TopLevelFunctionConflict:
      return ViolationFamily::GlobalDecls;
    case Rule::BracketNotationProperty:
    case Rule::ModuleObjectFullyReferenced:
    case Rule::ModuleObjectModified:
      return ViolationFamily::Destructuring;
    case Rule::NonStrictThis:
    case Rule::NestedImportExport:
      return ViolationFamily::ModuleFormat;
  }
  return ViolationFamily::ModuleFormat;
}

PreconditionViolation make_violation(Rule rule, std::string path, Span site, std::string message) {
  return {family_of(rule), rule, std::move(path), site, std::move(message)};
}

namespace detail {

bool is_statement_kind(NodeKind k) {
  switch (k) {
    case NodeKind::Block:
    case NodeKind::If:
    case NodeKind::For:
    case NodeKind::ForIn:
    case NodeKind::While:
    case NodeKind::DoWhile:
    case NodeKind::Try:
    case NodeKind::Switch:
    case NodeKind::SwitchCase:
    case NodeKind::Labeled:
      return true;
    default:
      return false;
  }
}

/// True when `node` sits inside a function or a compound statement below
/// the module top level (`top` is the factory for AMD, null otherwise).
bool is_nested(const ScopeTree& scopes, const Node* node, const Node* top) {
  for (const Node* p = scopes.parent(node); p && p != top; p = scopes.parent(p)) {
    if (p->is_function() || is_statement_kind(p->kind)) return true;
  }
  return false;
}

}  // namespace detail

namespace {

bool is_method_or_constructor(const ScopeTree& scopes, const Node& fn, const std::set<std::string>& constructors) {
  if (!fn.text.empty() && constructors.count(fn.text)) return true;
  const Node* p = scopes.parent(&fn);
  if (!p) return false;
  if (p->is(NodeKind::PropertyPair)) return true;
  if (p->is(NodeKind::Assignment) && p->child(1) == &fn) {
    const Node* t = p->child(0);
    if (t->is(NodeKind::MemberAccess)) return true;
    if (t->is(NodeKind::Identifier) && constructors.count(t->text)) return true;
  }
  if (p->is(NodeKind::VarDeclarator) && constructors.count(p->text)) return true;
  return false;
}

}  // namespace

std::vector<PreconditionViolation> check_format_preconditions(const Program& program, ModuleFormat format,
                                                              const std::set<std::string>& constructors,
                                                              bool lenient_nesting,
                                                              std::vector<Diagnostic>* warnings) {
  std::vector<PreconditionViolation> out;
  ScopeTree scopes(program);
  const std::string& path = program.path();
  auto span_of = [](const Node& n) { return n.span ? *n.span : Span{}; };

  if (!program.strict_mode()) {
    visit(program, [&](const Node& n) {
      if (n.is_function() && detail::uses_this(n) && !is_method_or_constructor(scopes, n, constructors)) {
        std::string name = n.text.empty() ? "anonymous function" : "function " + n.text;
        out.push_back(make_violation(Rule::NonStrictThis, path, span_of(n),
                                     name + " uses `this` in non-strict code and is neither a method nor a constructor"));
      }
      return true;
    });
  }

  if (format == ModuleFormat::CJS) {
    visit(program, [&](const Node& n) {
      if (!detail::is_require_call(n) || scopes.resolve(n.child(0))) return true;
      if (!detail::is_nested(scopes, &n, nullptr)) return true;
      std::string message = "require call is not in the module's top-level scope";
      if (lenient_nesting) {
        if (warnings) {
          warnings->push_back({Diagnostic::Level::Warning, path, n.span, message + "; hoisted (lenient nesting)"});
        }
      } else {
        out.push_back(make_violation(Rule::NestedImportExport, path, span_of(n), message));
      }
      return true;
    });
  } else if (format == ModuleFormat::AMD) {
    auto def = detail::find_amd_definition(program);
    if (def && def->factory) {
      for (const auto& stmt : def->factory->children) {
        visit(*stmt, [&](const Node& n) {
          if (n.is_function()) return false;
          if (n.is(NodeKind::Return) && detail::is_nested(scopes, &n, def->factory)) {
            out.push_back(make_violation(Rule::NestedImportExport, path, span_of(n),
                                         "factory return statement is nested in a block"));
          }
          return true;
        });
      }
    }
  }
  return out;
}

}  // namespace es6migrate
