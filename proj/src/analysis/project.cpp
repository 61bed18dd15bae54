#include <algorithm>
#include <map>

#include <spdlog/spdlog.h>

#include "internal.hpp"

namespace es6migrate {

using detail::usage_of;
using detail::write_of;

RefactoringAbandoned::RefactoringAbandoned(std::vector<PreconditionViolation> violations)
    : std::runtime_error("refactoring abandoned: " + std::to_string(violations.size()) +
                         " global declaration precondition violation(s)"),
      violations_(std::move(violations)) {}

const char* to_string(RenameReason reason) {
  switch (reason) {
    case RenameReason::FeatureConflict: return "FeatureConflict";
    case RenameReason::GlobalBuiltinConflict: return "GlobalBuiltinConflict";
    case RenameReason::ImportConflict: return "ImportConflict";
  }
  return "?";
}

const ModuleFeature* ModuleAnalysis::feature(std::string_view name) const {
  for (const auto& f : features) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::size_t ModuleAnalysis::import_count() const {
  std::set<std::string> distinct;
  for (const auto& i : imports) distinct.insert(i.target.empty() ? i.specifier : i.target);
  return distinct.size();
}

const std::vector<NodePtr>& ModuleAnalysis::module_body() const {
  return detail::module_body(*program, factory);
}

const Scope& ModuleAnalysis::module_scope() const { return detail::module_scope(*scopes, factory); }

const ModuleAnalysis* ProjectAnalysis::find(std::string_view path) const {
  for (const auto& m : modules) {
    if (m.id.path == path) return &m;
  }
  return nullptr;
}

std::set<std::string> constructor_names(const Project& project) {
  std::set<std::string> out;
  for (const auto& p : project.programs) {
    visit(p, [&](const Node& n) {
      if (n.is(NodeKind::New)) {
        const Node* callee = n.child(0);
        if (callee->is(NodeKind::Identifier)) out.insert(callee->text);
        if (callee->is(NodeKind::MemberAccess) && callee->notation == Notation::Dot) out.insert(callee->text);
      }
      // `X.prototype` marks X as a constructor even when `new X` is elsewhere.
      if (n.is_dot_member("prototype")) {
        const Node* object = n.child(0);
        if (object->is(NodeKind::Identifier)) out.insert(object->text);
        if (object->is(NodeKind::MemberAccess) && object->notation == Notation::Dot) out.insert(object->text);
      }
      return true;
    });
  }
  return out;
}

namespace {

std::string strip_js(const std::string& path) {
  return path.size() > 3 && path.compare(path.size() - 3, 3, ".js") == 0 ? path.substr(0, path.size() - 3) : path;
}

std::string module_name(const std::string& path, ModuleFormat format, const std::string& amd_base) {
  switch (format) {
    case ModuleFormat::AMD:
      if (!amd_base.empty() && amd_base != "." && path.rfind(amd_base + "/", 0) == 0) {
        return strip_js(path.substr(amd_base.size() + 1));
      }
      return strip_js(path);
    case ModuleFormat::CJS:
      return strip_js(path);
    case ModuleFormat::NonModular:
      break;
  }
  return path;
}

const Binding* binding_of(const ModuleAnalysis& m, const ImportBinding& b) {
  if (b.local.empty()) return nullptr;
  if (b.style == ImportStyle::AmdParam) {
    const Scope* s = m.scopes->scope_of(m.factory);
    return s ? s->own(b.local) : nullptr;
  }
  if (b.declarator) return m.scopes->enclosing(b.declarator).lookup(b.local);
  return nullptr;
}

std::vector<const Node*> binding_refs(const ModuleAnalysis& m, const ImportBinding& b) {
  const Binding* bind = binding_of(m, b);
  return bind ? m.scopes->references_to(bind) : std::vector<const Node*>{};
}

bool is_written(const ModuleAnalysis& m, const ImportBinding& b) {
  for (const Node* r : binding_refs(m, b)) {
    if (write_of(*m.scopes, r)) return true;
  }
  return false;
}

bool is_dot_object(const ScopeTree& scopes, const Node* r) {
  const Node* p = scopes.parent(r);
  return p && p->is(NodeKind::MemberAccess) && p->notation == Notation::Dot && p->child(0) == r;
}

void discover_imports(ModuleAnalysis& m, const AnalysisOptions& options, const std::set<std::string>& paths) {
  const ScopeTree& scopes = *m.scopes;
  const std::string& path = m.id.path;
  if (m.format == ModuleFormat::CJS) {
    visit(*m.program, [&](const Node& n) {
      if (!detail::is_require_call(n) || scopes.resolve(n.child(0))) return true;
      ImportBinding b;
      b.call = &n;
      const Node* arg = n.child(1);
      if (arg->is_string_literal()) {
        b.specifier = arg->text;
      } else {
        b.dynamic = true;
        b.specifier = "<dynamic>";
      }
      const Node* p = scopes.parent(&n);
      const Node* pp = p ? scopes.parent(p) : nullptr;
      if (p && p->is(NodeKind::VarDeclarator)) {
        b.style = ImportStyle::Namespace;
        b.local = p->text;
        b.declarator = p;
        b.statement = pp;
      } else if (p && p->is(NodeKind::MemberAccess) && p->notation == Notation::Dot && pp &&
                 pp->is(NodeKind::VarDeclarator) && pp->child(0) == p) {
        b.style = ImportStyle::Named;
        b.property = p->text;
        b.local = pp->text;
        b.declarator = pp;
        b.statement = scopes.parent(pp);
      } else if (p && p->is(NodeKind::ExpressionStatement)) {
        b.style = ImportStyle::SideEffect;
        b.statement = p;
      } else {
        b.style = ImportStyle::Inline;
      }
      b.nested = detail::is_nested(scopes, &n, nullptr);
      if (!b.dynamic) {
        if (auto t = resolve_cjs(path, b.specifier, paths)) b.target = *t;
      }
      m.imports.push_back(std::move(b));
      return true;
    });
  } else if (m.format == ModuleFormat::AMD) {
    auto def = detail::find_amd_definition(*m.program);
    if (!def || !def->deps) return;
    for (std::size_t i = 0; i < def->deps->children.size(); ++i) {
      const Node* el = def->deps->child(i);
      if (!el) continue;
      ImportBinding b;
      b.call = el;
      b.statement = def->statement;
      if (el->is_string_literal()) {
        b.specifier = el->text;
      } else {
        b.dynamic = true;
        b.specifier = "<dynamic>";
      }
      if (b.specifier == "require" || b.specifier == "exports" || b.specifier == "module") continue;
      if (def->factory && i < def->factory->params.size()) {
        b.style = ImportStyle::AmdParam;
        b.local = def->factory->params[i];
      } else {
        b.style = ImportStyle::SideEffect;
      }
      if (!b.dynamic) {
        if (auto t = resolve_amd(path, b.specifier, options.amd_base, paths)) b.target = *t;
      }
      m.imports.push_back(std::move(b));
    }
  }
  for (auto& b : m.imports) {
    if (b.target == path) b.target.clear();
    b.local_written = is_written(m, b);
  }
}

/// A client use of an imported namespace object other than `v.p`, or a
/// client write creating a property the namespace does not bind.
const Node* namespace_whole_use(const ModuleAnalysis& client, const ImportBinding& b, const ModuleObjectInfo& target) {
  const ScopeTree& scopes = *client.scopes;
  auto check = [&](const Node* r) -> const Node* {
    if (!is_dot_object(scopes, r)) return r;
    const Node* member = scopes.parent(r);
    if (write_of(scopes, member) && !target.find(member->text)) return member;
    return nullptr;
  };
  switch (b.style) {
    case ImportStyle::Namespace:
    case ImportStyle::AmdParam:
      if (b.local_written) return b.declarator ? b.declarator : b.call;
      for (const Node* r : binding_refs(client, b)) {
        if (const Node* bad = check(r)) return bad;
      }
      return nullptr;
    case ImportStyle::Inline:
      return check(b.call);
    default:
      return nullptr;
  }
}

struct EdgeAcc {
  bool any_write = false;
  bool all_calls = true;
};

class ProjectAnalyzer {
 public:
  ProjectAnalyzer(const Project& project, const AnalysisOptions& options) : project_(project), options_(options) {}

  ProjectAnalysis run() {
    std::vector<const Program*> programs;
    for (const auto& p : project_.programs) {
      programs.push_back(&p);
      paths_.insert(p.path());
    }
    std::sort(programs.begin(), programs.end(), [](const Program* a, const Program* b) { return a->path() < b->path(); });
    auto constructors = constructor_names(project_);

    for (const Program* p : programs) result_.modules.push_back(init_module(*p, constructors));
    for (auto& m : result_.modules) index_[m.id.path] = &m;
    for (auto& m : result_.modules) {
      if (!m.abandoned) discover_imports(m, options_, paths_);
      for (auto& b : m.imports) {
        auto it = index_.find(b.target);
        if (it != index_.end() && it->second->abandoned) {
          m.diagnostics.push_back({Diagnostic::Level::Warning, m.id.path, b.call->span,
                                   "import of skipped module " + b.target + " kept as a library import"});
          b.target.clear();
        }
      }
    }
    check_namespace_clients();
    for (auto& m : result_.modules) m.globals = collect_globals(*m.program, m.format, *m.scopes);
    resolve_global_features(result_.modules);
    for (auto& m : result_.modules) {
      if (m.abandoned) continue;
      for (const auto& f : m.features) {
        if (f.kind == FeatureKind::GlobalVar || f.kind == FeatureKind::TopLevelDecl ||
            f.kind == FeatureKind::GlobalObjectProperty || f.kind == FeatureKind::ImpliedGlobal) {
          global_owner_.emplace(f.name, m.id.path);
        }
      }
    }
    for (auto& m : result_.modules) {
      if (!m.abandoned) compute_accesses(m);
    }
    add_mutators();
    mark_exports();
    for (auto& m : result_.modules) {
      if (!m.abandoned) plan_renames(m);
    }
    assemble();
    return std::move(result_);
  }

 private:
  ModuleAnalysis init_module(const Program& program, const std::set<std::string>& constructors) {
    ModuleAnalysis m;
    m.program = &program;
    m.scopes = std::make_shared<ScopeTree>(program);
    m.id.path = program.path();
    m.is_test = project_.test_paths.count(m.id.path) > 0;
    m.format = options_.forced_format ? *options_.forced_format : detect_format(program);
    if (m.format == ModuleFormat::AMD) {
      auto def = detail::find_amd_definition(program);
      if (def) {
        m.amd_statement = def->statement;
        m.factory = def->factory;
      } else {
        m.format = ModuleFormat::NonModular;
      }
    }
    if (!options_.forced_format && has_mixed_format(program)) {
      m.diagnostics.push_back({Diagnostic::Level::Warning, m.id.path, std::nullopt,
                               "file uses both AMD and CommonJS syntax; treated as AMD"});
    }
    m.id.name = module_name(m.id.path, m.format, options_.amd_base);

    auto format_violations =
        check_format_preconditions(program, m.format, constructors, options_.lenient_nesting, &m.diagnostics);
    if (!format_violations.empty()) {
      m.abandoned = true;
      m.skip_reason = std::string("module-format precondition violated (") + to_string(format_violations[0].rule) +
                      "): " + format_violations[0].message;
      m.violations = std::move(format_violations);
      return m;
    }
    if (m.format != ModuleFormat::NonModular) {
      m.object = identify_module_object(program, m.format, *m.scopes);
      if (m.object) {
        auto dv = check_destructuring_preconditions(*m.object, program, m.format, *m.scopes);
        m.destructuring_failed = !dv.empty();
        m.violations.insert(m.violations.end(), dv.begin(), dv.end());
        m.features = resolve_module_structure(&*m.object, m.destructuring_failed);
      }
    }
    return m;
  }

  void check_namespace_clients() {
    for (auto& client : result_.modules) {
      if (client.abandoned) continue;
      for (const auto& b : client.imports) {
        auto it = index_.find(b.target);
        if (it == index_.end()) continue;
        ModuleAnalysis& t = *it->second;
        if (!t.object || !t.object->is_namespace || t.destructuring_failed) continue;
        if (const Node* site = namespace_whole_use(client, b, *t.object)) {
          t.violations.push_back(make_violation(
              Rule::ModuleObjectFullyReferenced, client.id.path, site->span ? *site->span : Span{},
              "namespace object of " + t.id.path + " is referenced as a whole by " + client.id.path));
          t.destructuring_failed = true;
          t.features = resolve_module_structure(&*t.object, true);
        }
      }
    }
  }

  void record(ModuleAnalysis& m, FeatureAccess a) {
    if (a.target == m.id.path) {
      m.accesses.push_back(std::move(a));
      return;
    }
    auto& acc = edges_[{m.id.path, a.target, a.feature}];
    acc.any_write = acc.any_write || a.usage == Usage::W;
    acc.all_calls = acc.all_calls && a.usage == Usage::C;
    m.accesses.push_back(std::move(a));
  }

  void compute_accesses(ModuleAnalysis& m) {
    const ScopeTree& scopes = *m.scopes;
    for (std::size_t i = 0; i < m.imports.size(); ++i) {
      const ImportBinding& b = m.imports[i];
      if (b.dynamic) {
        library_edges_.insert({m.id.path, "<dynamic>"});
        m.diagnostics.push_back({Diagnostic::Level::Error, m.id.path, b.call->span,
                                 "dynamic require cannot be converted to an ES6 import"});
        continue;
      }
      if (b.target.empty()) {
        library_edges_.insert({m.id.path, b.specifier});
        continue;
      }
      const ModuleAnalysis& t = *index_.at(b.target);
      const ModuleFeature* object = t.object ? t.feature(t.object->name) : nullptr;
      std::size_t before = m.accesses.size();
      auto access = [&](const Node* node, const std::string& feature, Usage usage) {
        record(m, {node, b.target, feature, usage, usage == Usage::W ? write_of(scopes, node) : nullptr, i});
      };
      auto unresolved = [&](const Node* at, const std::string& what) {
        m.diagnostics.push_back({Diagnostic::Level::Error, m.id.path, at->span,
                                 "unresolved feature " + what + " of " + b.target});
      };
      auto member_or_object = [&](const Node* member, const Node* object_node) {
        const std::string& q = member->text;
        const ModuleFeature* f = t.feature(q);
        if (f && f->kind != FeatureKind::Mutator) {
          access(member, q, usage_of(scopes, member));
        } else if (object) {
          access(object_node, object->name, Usage::R);
        } else {
          unresolved(member, q);
        }
      };
      auto whole = [&](const Node* node) {
        if (object) {
          Usage u = usage_of(scopes, node);
          access(node, object->name, u == Usage::W ? Usage::R : u);
        } else {
          unresolved(node, "module object");
        }
      };
      switch (b.style) {
        case ImportStyle::Namespace:
        case ImportStyle::AmdParam:
          if (b.local_written) {
            whole(b.call);
            break;
          }
          for (const Node* r : binding_refs(m, b)) {
            if (is_dot_object(scopes, r)) {
              member_or_object(scopes.parent(r), r);
            } else {
              whole(r);
            }
          }
          break;
        case ImportStyle::Named: {
          const Node* member = scopes.parent(b.call);
          const ModuleFeature* f = t.feature(b.property);
          if (f && f->kind != FeatureKind::Mutator) {
            Usage u = Usage::R;
            if (!b.local_written) {
              auto refs = binding_refs(m, b);
              bool calls = !refs.empty() && std::all_of(refs.begin(), refs.end(), [&](const Node* r) {
                return usage_of(scopes, r) == Usage::C;
              });
              if (calls) u = Usage::C;
            }
            access(member, b.property, u);
          } else if (object) {
            access(b.call, object->name, Usage::R);
          } else {
            unresolved(member, b.property);
          }
          break;
        }
        case ImportStyle::Inline:
          if (is_dot_object(scopes, b.call)) {
            member_or_object(scopes.parent(b.call), b.call);
          } else {
            whole(b.call);
          }
          break;
        case ImportStyle::SideEffect:
          break;
      }
      if (m.accesses.size() == before) side_effect_edges_.insert({m.id.path, b.target});
    }

    // Globals owned by other modules: free identifiers and window.g.
    for (const auto& [name, refs] : scopes.free_references()) {
      auto it = global_owner_.find(name);
      if (it == global_owner_.end() || it->second == m.id.path) continue;
      for (const Node* r : refs) {
        Usage u = usage_of(scopes, r);
        record(m, {r, it->second, name, u, u == Usage::W ? write_of(scopes, r) : nullptr});
      }
    }
    visit(*m.program, [&](const Node& n) {
      if (n.is(NodeKind::MemberAccess) && n.notation == Notation::Dot && detail::is_global_object(*n.child(0), scopes)) {
        auto it = global_owner_.find(n.text);
        if (it != global_owner_.end()) {
          Usage u = usage_of(scopes, &n);
          record(m, {&n, it->second, n.text, u, u == Usage::W ? write_of(scopes, &n) : nullptr});
        }
      }
      return true;
    });
  }

  void add_mutators() {
    for (const auto& [key, acc] : edges_) {
      if (!acc.any_write) continue;
      ModuleAnalysis& t = *index_.at(std::get<1>(key));
      const std::string& feature = std::get<2>(key);
      std::string name = "set_" + feature;
      if (const ModuleFeature* existing = t.feature(name)) {
        if (existing->kind != FeatureKind::Mutator) {
          t.diagnostics.push_back({Diagnostic::Level::Warning, t.id.path, existing->decl_site,
                                   "mutator name " + name + " collides with a feature"});
        }
        continue;
      }
      ModuleFeature f;
      f.name = name;
      f.kind = FeatureKind::Mutator;
      f.mutates = feature;
      f.emitted_name = name;
      auto it = std::lower_bound(t.features.begin(), t.features.end(), name,
                                 [](const ModuleFeature& a, const std::string& n) { return a.name < n; });
      t.features.insert(it, std::move(f));
    }
  }

  void mark_exports() {
    for (auto& m : result_.modules) {
      for (auto& f : m.features) f.exported = options_.library_mode;
    }
    for (const auto& [key, acc] : edges_) {
      ModuleAnalysis& t = *index_.at(std::get<1>(key));
      for (auto& f : t.features) {
        if (f.name == std::get<2>(key)) f.exported = true;
        if (acc.any_write && f.kind == FeatureKind::Mutator && f.mutates == std::get<2>(key)) f.exported = true;
      }
    }
  }

  void plan_renames(ModuleAnalysis& m) {
    const ScopeTree& scopes = *m.scopes;
    std::string placeholder = module_object_placeholder(m.id.path);
    for (auto& f : m.features) {
      if (f.kind != FeatureKind::ExtractedProperty) continue;
      const BoundProperty* bp = m.object ? m.object->find(f.name) : nullptr;
      // `A.f = f;` where f is already a module-level binding: reuse it.
      if (bp && bp->value && bp->value->is_identifier(f.name) &&
          scopes.resolve(bp->value) && scopes.resolve(bp->value)->scope == &m.module_scope()) {
        continue;
      }
      bool builtin_conflict = false;
      auto taken = [&](const std::string& c) {
        if (is_builtin_global(c) || scopes.free_references().count(c)) {
          builtin_conflict = builtin_conflict || c == f.name;
          return true;
        }
        if (is_reserved_word(c) || scopes.all_bound_names().count(c) || c == placeholder) return true;
        for (const auto& other : m.features) {
          if (&other != &f && (other.name == c || other.emitted_name == c)) return true;
        }
        return false;
      };
      RenamePlan plan = choose_name(f.name, m.id.path, RenameReason::FeatureConflict, taken);
      if (plan.emitted == f.name) continue;
      if (builtin_conflict) plan.reason = RenameReason::GlobalBuiltinConflict;
      f.emitted_name = plan.emitted;
      m.renames.push_back(std::move(plan));
    }
    // `window.x` and implied globals become module-level vars; rename when a
    // local binding would capture them.
    for (auto& f : m.features) {
      if (f.kind != FeatureKind::GlobalObjectProperty && f.kind != FeatureKind::ImpliedGlobal) continue;
      auto taken = [&](const std::string& c) {
        if (is_reserved_word(c) || scopes.all_bound_names().count(c) || c == placeholder) return true;
        if (c != f.name && scopes.free_references().count(c)) return true;
        for (const auto& other : m.features) {
          if (&other != &f && (other.name == c || other.emitted_name == c)) return true;
        }
        return false;
      };
      RenamePlan plan = choose_name(f.name, m.id.path, RenameReason::FeatureConflict, taken);
      if (plan.emitted == f.name) continue;
      f.emitted_name = plan.emitted;
      m.renames.push_back(std::move(plan));
    }
    for (auto& f : m.features) {
      if (f.kind != FeatureKind::Mutator) continue;
      const ModuleFeature* target = m.feature(f.mutates);
      std::string wanted = "set_" + (target ? target->emitted_name : f.mutates);
      auto taken = [&](const std::string& c) {
        if (is_builtin_global(c) || scopes.free_references().count(c) || scopes.all_bound_names().count(c)) return true;
        for (const auto& other : m.features) {
          if (&other != &f && other.emitted_name == c) return true;
        }
        return false;
      };
      f.emitted_name = choose_name(wanted, m.id.path, RenameReason::FeatureConflict, taken).emitted;
    }
  }

  void assemble() {
    Mdg& mdg = result_.mdg;
    for (const auto& m : result_.modules) {
      if (m.abandoned) continue;
      mdg.add_module({m.id, m.features});
    }
    for (const auto& [key, acc] : edges_) {
      const auto& [from, to, feature] = key;
      Usage u = acc.any_write ? Usage::W : acc.all_calls ? Usage::C : Usage::R;
      mdg.add_dependency({index_.at(from)->id, index_.at(to)->id, feature, u});
    }
    for (const auto& [from, to] : side_effect_edges_) {
      mdg.add_dependency({index_.at(from)->id, index_.at(to)->id, std::nullopt, Usage::S});
    }
    for (const auto& [from, spec] : library_edges_) {
      ModuleId lib{spec, spec};
      mdg.add_library(lib);
      mdg.add_dependency({index_.at(from)->id, lib, std::nullopt, Usage::L});
    }
    for (const auto& m : result_.modules) {
      result_.violations.insert(result_.violations.end(), m.violations.begin(), m.violations.end());
      result_.diagnostics.insert(result_.diagnostics.end(), m.diagnostics.begin(), m.diagnostics.end());
    }
    std::stable_sort(result_.violations.begin(), result_.violations.end(),
                     [](const PreconditionViolation& a, const PreconditionViolation& b) {
                       return std::tie(a.path, a.site.begin) < std::tie(b.path, b.site.begin);
                     });
    for (const auto& d : result_.diagnostics) {
      if (d.level == Diagnostic::Level::Error) {
        spdlog::error("{}: {}", d.path, d.message);
      } else {
        spdlog::warn("{}: {}", d.path, d.message);
      }
    }
  }

  const Project& project_;
  const AnalysisOptions& options_;
  std::set<std::string> paths_;
  ProjectAnalysis result_;
  std::map<std::string, ModuleAnalysis*> index_;
  std::map<std::string, std::string> global_owner_;
  std::map<std::tuple<std::string, std::string, std::string>, EdgeAcc> edges_;
  std::set<std::pair<std::string, std::string>> side_effect_edges_;
  std::set<std::pair<std::string, std::string>> library_edges_;
};

}  // namespace

ProjectAnalysis analyze_project(const Project& project, const AnalysisOptions& options) {
  return ProjectAnalyzer(project, options).run();
}

Mdg build_mdg(const Project& project, const AnalysisOptions& options) {
  return analyze_project(project, options).mdg;
}

}  // namespace es6migrate
