#include <algorithm>
#include <map>

#include "internal.hpp"

namespace es6migrate {

namespace {

bool contains(const std::vector<GlobalDecl>& v, const std::string& name) {
  return std::any_of(v.begin(), v.end(), [&](const GlobalDecl& g) { return g.name == name; });
}

Span span_of(const Node* n) { return n && n->span ? *n->span : Span{}; }

}  // namespace

GlobalSets collect_globals(const Program& program, ModuleFormat format) {
  ScopeTree scopes(program);
  return collect_globals(program, format, scopes);
}

GlobalSets collect_globals(const Program& program, ModuleFormat format, const ScopeTree& scopes) {
  GlobalSets g;
  if (format != ModuleFormat::CJS) {
    for (const auto& [name, b] : scopes.root().bindings) {
      if (b.kind == BindingKind::Var) {
        g.explicit_vars.push_back({name, FeatureKind::GlobalVar, b.decl, span_of(b.decl), false});
      } else if (b.kind == BindingKind::Function) {
        if (format == ModuleFormat::NonModular) {
          g.top_level.push_back({name, FeatureKind::TopLevelDecl, b.decl, span_of(b.decl), true});
        } else {
          g.explicit_vars.push_back({name, FeatureKind::GlobalVar, b.decl, span_of(b.decl), true});
        }
      }
    }
  }
  auto declared = [&](const std::string& name) {
    return contains(g.explicit_vars, name) || contains(g.top_level, name) || contains(g.object_props, name);
  };
  visit(program, [&](const Node& n) {
    if (!n.is(NodeKind::Assignment) || n.text != "=") return true;
    const Node* t = n.child(0);
    if (t->is(NodeKind::MemberAccess) && t->notation == Notation::Dot && detail::is_global_object(*t->child(0), scopes)) {
      if (!declared(t->text)) {
        g.object_props.push_back({t->text, FeatureKind::GlobalObjectProperty, &n, span_of(&n), false});
      }
    }
    return true;
  });
  visit(program, [&](const Node& n) {
    if (!n.is(NodeKind::Assignment) || n.text != "=") return true;
    const Node* t = n.child(0);
    if (!t->is(NodeKind::Identifier) || scopes.resolve(t) || is_builtin_global(t->text)) return true;
    if (declared(t->text)) return true;
    auto& target = program.strict_mode() ? g.strict_undeclared : g.implied;
    if (!contains(target, t->text)) {
      target.push_back({t->text, FeatureKind::ImpliedGlobal, &n, span_of(&n), false});
    }
    return true;
  });
  return g;
}

std::vector<PreconditionViolation> check_global_preconditions(const std::vector<ModuleAnalysis>& modules) {
  struct Site {
    const ModuleAnalysis* module;
    const GlobalDecl* decl;
  };
  std::map<std::string, std::vector<Site>> by_name;
  for (const auto& m : modules) {
    for (const auto* set : {&m.globals.explicit_vars, &m.globals.top_level}) {
      for (const auto& d : *set) {
        auto& sites = by_name[d.name];
        if (std::none_of(sites.begin(), sites.end(), [&](const Site& s) { return s.module == &m; })) {
          sites.push_back({&m, &d});
        }
      }
    }
  }
  std::vector<PreconditionViolation> out;
  for (const auto& [name, sites] : by_name) {
    if (sites.size() < 2) continue;
    bool all_functions = std::all_of(sites.begin(), sites.end(), [](const Site& s) { return s.decl->is_function; });
    std::string listing;
    for (const auto& s : sites) {
      if (!listing.empty()) listing += ", ";
      listing += s.module->id.path + " [" + std::to_string(s.decl->span.begin) + "," +
                 std::to_string(s.decl->span.end) + "]";
    }
    Rule rule = all_functions ? Rule::TopLevelFunctionConflict : Rule::GlobalVariableRedeclared;
    std::string what = all_functions ? "top-level function " : "global variable ";
    out.push_back(make_violation(rule, sites[1].module->id.path, sites[1].decl->span,
                                 what + name + " is declared in more than one file: " + listing));
  }
  return out;
}

void resolve_global_features(std::vector<ModuleAnalysis>& modules) {
  auto violations = check_global_preconditions(modules);
  if (!violations.empty()) throw RefactoringAbandoned(std::move(violations));

  auto add_feature = [](ModuleAnalysis& m, const GlobalDecl& d) {
    if (m.feature(d.name)) {
      m.diagnostics.push_back({Diagnostic::Level::Warning, m.id.path, d.span,
                               "global " + d.name + " clashes with a module feature of the same name"});
      return;
    }
    ModuleFeature f;
    f.name = d.name;
    f.kind = d.kind;
    f.decl_site = d.span;
    f.emitted_name = d.name;
    auto it = std::lower_bound(m.features.begin(), m.features.end(), f.name,
                               [](const ModuleFeature& a, const std::string& n) { return a.name < n; });
    m.features.insert(it, std::move(f));
  };

  std::map<std::string, std::string> explicit_owner;
  for (auto& m : modules) {
    for (const auto* set : {&m.globals.explicit_vars, &m.globals.top_level}) {
      for (const auto& d : *set) explicit_owner.emplace(d.name, m.id.path);
    }
    if (m.abandoned) continue;
    for (const auto& d : m.globals.explicit_vars) add_feature(m, d);
    for (const auto& d : m.globals.top_level) add_feature(m, d);
  }

  // Soft introductions (window.x = ..., implied globals) go to the module
  // with the fewest imports, ties broken by path.
  std::map<std::string, std::vector<std::pair<ModuleAnalysis*, const GlobalDecl*>>> soft;
  for (auto& m : modules) {
    if (m.abandoned) continue;
    for (const auto* set : {&m.globals.object_props, &m.globals.implied}) {
      for (const auto& d : *set) soft[d.name].push_back({&m, &d});
    }
  }
  for (const auto& [name, intros] : soft) {
    if (explicit_owner.count(name)) continue;
    auto best = std::min_element(intros.begin(), intros.end(), [](const auto& a, const auto& b) {
      std::size_t ia = a.first->import_count(), ib = b.first->import_count();
      if (ia != ib) return ia < ib;
      return a.first->id.path < b.first->id.path;
    });
    add_feature(*best->first, *best->second);
  }
}

}  // namespace es6migrate
