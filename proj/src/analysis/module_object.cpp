#include <algorithm>
#include <set>

#include "es6migrate/frontend.hpp"
#include "internal.hpp"

namespace es6migrate {

using detail::is_module_exports;

namespace {

bool is_valid_identifier(const std::string& s) {
  return !s.empty() && sanitize_identifier(s) == s && !is_reserved_word(s);
}

const Node* factory_of(const Program& program, ModuleFormat format) {
  if (format != ModuleFormat::AMD) return nullptr;
  auto def = detail::find_amd_definition(program);
  return def ? def->factory : nullptr;
}

/// Recognizes references to the module object: its module-scope aliases
/// and, in CJS, `exports` / `module.exports`.
struct ObjectRefs {
  std::set<const Binding*> aliases;
  bool cjs = false;
  const ScopeTree* scopes = nullptr;

  ObjectRefs(const ModuleObjectInfo& info, ModuleFormat format, const ScopeTree& s, const Node* factory)
      : cjs(format == ModuleFormat::CJS), scopes(&s) {
    const Scope& ms = detail::module_scope(s, factory);
    for (const auto& a : info.aliases) {
      if (const Binding* b = ms.own(a)) aliases.insert(b);
    }
  }

  bool is_ref(const Node& n) const {
    if (n.is(NodeKind::Identifier)) {
      const Binding* b = scopes->resolve(&n);
      if (b) return aliases.count(b) > 0;
      return cjs && n.text == "exports";
    }
    return cjs && is_module_exports(n) && !scopes->resolve(n.child(0));
  }

  std::vector<const Node*> all(const Program& program) const {
    std::vector<const Node*> out;
    visit(program, [&](const Node& n) {
      if (is_ref(n)) {
        out.push_back(&n);
        return false;
      }
      return true;
    });
    return out;
  }
};

Instantiation classify_expression(const Node& e) {
  if (e.is(NodeKind::FunctionExpression)) return Instantiation::FunctionExpr;
  if (e.is(NodeKind::ObjectLiteral)) {
    return e.children.empty() ? Instantiation::EmptyObject : Instantiation::ObjectLiteral;
  }
  if (detail::is_require_call(e)) return Instantiation::Imported;
  if (e.is(NodeKind::MemberAccess) && e.child(0) && detail::is_require_call(*e.child(0))) {
    return Instantiation::Imported;
  }
  return Instantiation::EvaluatedExpression;
}

/// Single module-level `name = <expr>` assignment, used for `var X; X = ...`.
const Node* sole_assignment(const std::vector<NodePtr>& body, const std::string& name) {
  const Node* found = nullptr;
  for (const auto& stmt : body) {
    if (!stmt->is(NodeKind::ExpressionStatement)) continue;
    const Node* e = stmt->child(0);
    if (e->is(NodeKind::Assignment) && e->text == "=" && e->child(0)->is_identifier(name)) {
      if (found) return nullptr;
      found = e->child(1);
    }
  }
  return found;
}

std::vector<const Node*> prototype_statements(const ModuleObjectInfo& info, const Program& program,
                                              ModuleFormat format, const ScopeTree& scopes) {
  const Node* factory = factory_of(program, format);
  ObjectRefs refs(info, format, scopes, factory);
  std::vector<const Node*> out;
  for (const auto& stmt : detail::module_body(program, factory)) {
    if (!stmt->is(NodeKind::ExpressionStatement)) continue;
    const Node* e = stmt->child(0);
    if (!e->is(NodeKind::Assignment)) continue;
    const Node* t = e->child(0);
    if (!t->is(NodeKind::MemberAccess)) continue;
    if (t->is_dot_member("prototype") && refs.is_ref(*t->child(0))) {
      out.push_back(stmt.get());
    } else if (t->child(0)->is_dot_member("prototype") && refs.is_ref(*t->child(0)->child(0))) {
      out.push_back(stmt.get());
    }
  }
  return out;
}

}  // namespace

const char* to_string(Instantiation inst) {
  switch (inst) {
    case Instantiation::FunctionDecl: return "FunctionDecl";
    case Instantiation::FunctionExpr: return "FunctionExpr";
    case Instantiation::EmptyObject: return "EmptyObject";
    case Instantiation::ObjectLiteral: return "ObjectLiteral";
    case Instantiation::EvaluatedExpression: return "EvaluatedExpression";
    case Instantiation::Imported: return "Imported";
  }
  return "?";
}

const BoundProperty* ModuleObjectInfo::find(std::string_view prop) const {
  for (const auto& b : bound_props) {
    if (b.name == prop) return &b;
  }
  return nullptr;
}

std::optional<ModuleObjectInfo> identify_module_object(const Program& program, ModuleFormat format) {
  ScopeTree scopes(program);
  return identify_module_object(program, format, scopes);
}

std::optional<ModuleObjectInfo> identify_module_object(const Program& program, ModuleFormat format,
                                                       const ScopeTree& scopes) {
  if (format == ModuleFormat::NonModular) return std::nullopt;
  ModuleObjectInfo info;
  const Node* factory = nullptr;
  const Node* value = nullptr;
  std::vector<std::string> declared_aliases;

  if (format == ModuleFormat::AMD) {
    auto def = detail::find_amd_definition(program);
    if (!def || def->is_require_entry) return std::nullopt;
    if (def->value) {
      value = def->value;
      info.export_sites.push_back(def->call);
    } else {
      factory = def->factory;
      for (const auto& stmt : factory->children) {
        visit(*stmt, [&](const Node& n) {
          if (n.is(NodeKind::Return) && n.child(0)) info.export_sites.push_back(&n);
          return !n.is_function();
        });
      }
      if (info.export_sites.empty()) return std::nullopt;
      value = info.export_sites.front()->child(0);
    }
  } else {
    bool alias_form = false;
    visit(program, [&](const Node& n) {
      if (n.is(NodeKind::Assignment) && n.text == "=") {
        const Node* t = n.child(0);
        bool exports_ident = t->is_identifier("exports") && !scopes.resolve(t);
        bool chained = std::find(info.export_sites.begin(), info.export_sites.end(), scopes.parent(&n)) !=
                       info.export_sites.end();
        if (((is_module_exports(*t) && !scopes.resolve(t->child(0))) || exports_ident) && !chained) {
          info.export_sites.push_back(&n);
        } else if (t->is(NodeKind::MemberAccess)) {
          const Node* o = t->child(0);
          if ((o->is_identifier("exports") && !scopes.resolve(o)) || is_module_exports(*o)) alias_form = true;
        }
      }
      return true;
    });
    if (info.export_sites.empty()) {
      if (!alias_form) return std::nullopt;
      info.instantiation = Instantiation::EmptyObject;
      info.is_namespace = true;
      info.name = module_object_placeholder(program.path());
      info.bound_props = collect_bound_properties(info, program, format, scopes);
      return info;
    }
    const Node* primary = info.export_sites.front();
    value = primary->child(1);
    while (value->is(NodeKind::Assignment) && value->text == "=") {
      if (value->child(0)->is(NodeKind::Identifier)) declared_aliases.push_back(value->child(0)->text);
      value = value->child(1);
    }
    // `var math = module.exports = ...` and `math = module.exports = ...`.
    for (const Node* p = scopes.parent(primary); p; p = scopes.parent(p)) {
      if (p->is(NodeKind::VarDeclarator)) {
        declared_aliases.push_back(p->text);
        break;
      }
      if (p->is(NodeKind::Assignment) && p->text == "=" && p->child(0)->is(NodeKind::Identifier)) {
        declared_aliases.push_back(p->child(0)->text);
        continue;
      }
      break;
    }
  }

  const Scope& ms = detail::module_scope(scopes, factory);
  const auto& body = detail::module_body(program, factory);
  info.expr = value;
  info.instantiation = classify_expression(*value);
  if (value->is(NodeKind::Identifier)) {
    const Binding* b = scopes.resolve(value);
    info.instantiation = Instantiation::EvaluatedExpression;
    if (b && b->scope == &ms) {
      info.aliases.push_back(b->name);
      info.alias_decl = b->decl;
      if (b->kind == BindingKind::Function) {
        info.expr = b->decl;
        info.instantiation = Instantiation::FunctionDecl;
      } else if (b->kind == BindingKind::Var) {
        const Node* init = b->decl->child(0);
        while (init && init->is(NodeKind::Assignment) && init->text == "=") init = init->child(1);
        if (!init) init = sole_assignment(body, b->name);
        if (init) {
          info.expr = init;
          info.instantiation = classify_expression(*init);
        }
      } else if (b->kind == BindingKind::Param) {
        info.instantiation = Instantiation::Imported;
      }
    }
  }
  for (const auto& a : declared_aliases) {
    const Binding* b = ms.own(a);
    if (b && std::find(info.aliases.begin(), info.aliases.end(), a) == info.aliases.end()) {
      info.aliases.push_back(a);
      if (!info.alias_decl) info.alias_decl = b->decl;
    }
  }
  switch (info.instantiation) {
    case Instantiation::EmptyObject:
    case Instantiation::ObjectLiteral:
      info.is_namespace = true;
      break;
    case Instantiation::FunctionDecl:
    case Instantiation::FunctionExpr:
      info.is_namespace = detail::has_empty_body(*info.expr);
      break;
    default:
      info.is_namespace = false;
  }
  info.name = info.aliases.empty() ? module_object_placeholder(program.path()) : info.aliases.front();
  info.bound_props = collect_bound_properties(info, program, format, scopes);
  info.prototype_bindings = prototype_statements(info, program, format, scopes);
  return info;
}

std::vector<BoundProperty> collect_bound_properties(const ModuleObjectInfo& info, const Program& program,
                                                    ModuleFormat format, const ScopeTree& scopes) {
  const Node* factory = factory_of(program, format);
  ObjectRefs refs(info, format, scopes, factory);
  std::vector<BoundProperty> out;
  auto add = [&](BoundProperty b) {
    if (std::none_of(out.begin(), out.end(), [&](const BoundProperty& x) { return x.name == b.name; })) {
      out.push_back(std::move(b));
    }
  };
  if (info.expr && info.expr->is(NodeKind::ObjectLiteral)) {
    for (const auto& pair : info.expr->children) {
      if (pair->key_style == KeyStyle::Number || !is_valid_identifier(pair->text)) continue;
      add({pair->text, pair->child(0), pair.get()});
    }
  }
  for (const auto& stmt : detail::module_body(program, factory)) {
    if (!stmt->is(NodeKind::ExpressionStatement)) continue;
    const Node* e = stmt->child(0);
    if (!e->is(NodeKind::Assignment) || e->text != "=") continue;
    const Node* t = e->child(0);
    if (!t->is(NodeKind::MemberAccess) || t->notation != Notation::Dot) continue;
    if (!refs.is_ref(*t->child(0)) || t->text == "prototype") continue;
    add({t->text, e->child(1), stmt.get()});
  }
  return out;
}


std::vector<PreconditionViolation> check_destructuring_preconditions(const ModuleObjectInfo& info,
                                                                     const Program& program,
                                                                     ModuleFormat format,
                                                                     const ScopeTree& scopes) {
  std::vector<PreconditionViolation> out;
  const std::string& path = program.path();
  const Node* factory = factory_of(program, format);
  ObjectRefs refs(info, format, scopes, factory);
  auto report = [&](Rule rule, const Node* site, std::string message) {
    Span span = site && site->span ? *site->span : Span{};
    for (const auto& v : out) {
      if (v.rule == rule && v.site == span) return;
    }
    out.push_back(make_violation(rule, path, span, std::move(message)));
  };
  const std::string& obj = info.name;
  std::set<const Node*> export_sites(info.export_sites.begin(), info.export_sites.end());

  if (format == ModuleFormat::CJS && info.export_sites.size() > 1) {
    report(Rule::ModuleObjectModified, info.export_sites[1],
           "module object of " + path + " is assigned more than once");
  }
  if (info.expr && info.expr->is(NodeKind::ObjectLiteral)) {
    for (const auto& pair : info.expr->children) {
      if (pair->key_style == KeyStyle::Number || !is_valid_identifier(pair->text)) {
        report(Rule::BracketNotationProperty, pair.get(),
               "property '" + pair->text + "' of " + obj + " is not an identifier name");
      }
    }
  }
  for (const auto& b : info.bound_props) {
    if (b.value && b.value->is(NodeKind::FunctionExpression) && detail::uses_this(*b.value)) {
      report(Rule::ModuleObjectFullyReferenced, b.site,
             obj + "." + b.name + " uses `this`, which refers to the whole module object");
    }
  }

  for (const Node* r : refs.all(program)) {
    const Node* p = scopes.parent(r);
    if (!p) continue;
    // Export sites: `module.exports = X`, `return X`, `var a = module.exports = ...`.
    if (p->is(NodeKind::Assignment) && export_sites.count(p)) continue;
    if (p->is(NodeKind::Return) && export_sites.count(p)) continue;
    if (p->is(NodeKind::Assignment) && p->text == "=") {
      // `var a = module.exports = X` chains hand the object to an alias.
      const Node* pp = scopes.parent(p);
      if (pp && export_sites.count(pp)) continue;
    }
    if (p->is(NodeKind::MemberAccess) && p->child(0) == r) {
      const Node* w = detail::write_of(scopes, p);
      if (p->notation == Notation::Bracket) {
        if (w && w->is(NodeKind::Assignment)) {
          report(Rule::BracketNotationProperty, w, "property of " + obj + " defined with bracket notation");
        } else {
          report(Rule::ModuleObjectFullyReferenced, p, obj + " accessed with a computed property");
        }
        continue;
      }
      if (p->text == "prototype") {
        if (info.is_namespace) {
          report(Rule::ModuleObjectFullyReferenced, p, "prototype of namespace object " + obj + " is used");
        }
        continue;
      }
      bool bound = info.find(p->text) != nullptr;
      if (w && w->is(NodeKind::Unary) && w->text == "delete") {
        report(Rule::ModuleObjectModified, w, "property " + p->text + " deleted from " + obj);
      } else if (w && !bound) {
        report(Rule::ModuleObjectModified, w, "property " + p->text + " of " + obj + " created at runtime");
      } else if (!w && !bound && info.is_namespace) {
        report(Rule::ModuleObjectFullyReferenced, p,
               obj + "." + p->text + " is not a bound property of the namespace object");
      }
      continue;
    }
    if (const Node* w = detail::write_of(scopes, r)) {
      report(Rule::ModuleObjectModified, w, "module object " + obj + " is reassigned");
      continue;
    }
    bool harmless = false;
    if ((p->is(NodeKind::Call) || p->is(NodeKind::New)) && p->child(0) == r) harmless = true;
    if (p->is(NodeKind::Binary) && (p->text == "instanceof" || p->text == "==" || p->text == "===" ||
                                    p->text == "!=" || p->text == "!==")) {
      harmless = true;
    }
    if (p->is(NodeKind::Unary) && p->text == "typeof") harmless = true;
    if (harmless && !info.is_namespace) continue;
    report(Rule::ModuleObjectFullyReferenced, r, "module object " + obj + " is referenced as a whole");
  }
  return out;
}

std::vector<ModuleFeature> resolve_module_structure(const ModuleObjectInfo* info, bool preconditions_failed) {
  std::vector<ModuleFeature> out;
  if (!info) return out;
  auto object_feature = [&] {
    ModuleFeature f;
    f.name = info->name;
    f.kind = FeatureKind::ModuleObject;
    const Node* site = info->alias_decl ? info->alias_decl : info->expr;
    if (site) f.decl_site = site->span;
    f.emitted_name = f.name;
    return f;
  };
  if (preconditions_failed) {
    out.push_back(object_feature());
    return out;
  }
  for (const auto& b : info->bound_props) {
    if (b.name == info->name) continue;
    ModuleFeature f;
    f.name = b.name;
    f.kind = FeatureKind::ExtractedProperty;
    if (b.site) f.decl_site = b.site->span;
    f.emitted_name = b.name;
    out.push_back(std::move(f));
  }
  if (!info->is_namespace) out.push_back(object_feature());
  std::sort(out.begin(), out.end(), [](const ModuleFeature& a, const ModuleFeature& b) { return a.name < b.name; });
  return out;
}

}  // namespace es6migrate
