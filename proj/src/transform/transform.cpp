#include "es6migrate/transform.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <regex>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "analysis/internal.hpp"
#include "es6migrate/frontend.hpp"

namespace es6migrate {

namespace {

using json = nlohmann::ordered_json;
constexpr std::size_t kNoImport = static_cast<std::size_t>(-1);

NodePtr shallow_copy(const Node& n) {
  auto c = std::make_unique<Node>(n.kind);
  c->span = n.span;
  c->text = n.text;
  c->literal = n.literal;
  c->notation = n.notation;
  c->key_style = n.key_style;
  c->prefix = n.prefix;
  c->params = n.params;
  c->specifiers = n.specifiers;
  return c;
}

/// Child slots that hold a variable-length list (dropping is allowed).
bool is_list_slot(const Node& parent, std::size_t i) {
  switch (parent.kind) {
    case NodeKind::Block:
    case NodeKind::FunctionDeclaration:
    case NodeKind::FunctionExpression:
    case NodeKind::VarDeclaration:
    case NodeKind::ObjectLiteral:
      return true;
    case NodeKind::SwitchCase:
      return i >= 1;
    default:
      return false;
  }
}

bool is_directive(const Node& stmt) {
  return stmt.is(NodeKind::ExpressionStatement) && stmt.child(0)->is_string_literal();
}

struct ImportGroup {
  std::string specifier;
  std::vector<Specifier> named;
  std::vector<std::string> defaults;
};

class ModuleRewriter {
 public:
  ModuleRewriter(const ProjectAnalysis& analysis, const ModuleAnalysis& m)
      : analysis_(analysis),
        m_(m),
        scopes_(*m.scopes),
        placeholder_(module_object_placeholder(m.id.path)) {}

  Program run() {
    for (const auto& d : m_.diagnostics) {
      if (d.level == Diagnostic::Level::Error) fail(d.message);
    }
    count_bindings(scopes_.root());
    plan_module_object();
    plan_globals();
    plan_imports();
    return assemble();
  }

  std::vector<std::string> steps;

 private:
  [[noreturn]] void fail(const std::string& message) const { throw TransformError(m_.id.path, message); }

  const Node* top_statement(const Node* n) const {
    for (;;) {
      const Node* p = scopes_.parent(n);
      if (!p || p == m_.factory) return n;
      n = p;
    }
  }

  void count_bindings(const Scope& s) {
    for (const auto& [name, b] : s.bindings) ++binding_count_[name];
    for (const Scope* c : s.children) count_bindings(*c);
  }

  // ---- module object: wrapper removal and destructuring ----

  bool is_object_ref(const Node& n) const {
    const ModuleObjectInfo& info = *m_.object;
    bool cjs = m_.format == ModuleFormat::CJS;
    if (n.is(NodeKind::Identifier)) {
      const Binding* b = scopes_.resolve(&n);
      if (!b) return cjs && n.text == "exports";
      return b->scope == &m_.module_scope() &&
             std::find(info.aliases.begin(), info.aliases.end(), b->name) != info.aliases.end();
    }
    return cjs && detail::is_module_exports(n) && !scopes_.resolve(n.child(0));
  }

  bool is_alias_identifier(const Node* n) const {
    return n && n->is(NodeKind::Identifier) && scopes_.resolve(n) && is_object_ref(*n);
  }

  void drop_declaration(const Node* decl) {
    if (!decl) return;
    if (decl->is(NodeKind::VarDeclarator) || decl->is(NodeKind::FunctionDeclaration)) drop_.insert(decl);
  }

  void plan_module_object() {
    if (m_.format == ModuleFormat::AMD) {
      steps.push_back("step1_clear_amd");
      plan_amd_params();
    } else if (m_.format == ModuleFormat::CJS && m_.object) {
      steps.push_back("step2_clear_cjs");
    }
    if (!m_.object) return;
    const ModuleObjectInfo& info = *m_.object;
    eliminated_ = info.is_namespace && !m_.destructuring_failed;
    const std::string& P = placeholder_;

    if (m_.format == ModuleFormat::CJS) {
      visit(*m_.program, [&](const Node& n) {
        bool exports_ident = n.is_identifier("exports") && !scopes_.resolve(&n);
        bool module_exports = detail::is_module_exports(n) && !scopes_.resolve(n.child(0));
        if (exports_ident || module_exports) {
          replace_[&n] = [&P] { return make::identifier(P); };
          return false;
        }
        return true;
      });
      for (std::size_t k = 0; k < info.export_sites.size(); ++k) {
        const Node* site = info.export_sites[k];
        const Node* stmt = scopes_.parent(site);
        bool top_level_stmt = stmt && stmt->is(NodeKind::ExpressionStatement) && top_statement(stmt) == stmt;
        if (!top_level_stmt) continue;
        const Node* value = site->child(1);
        if (eliminated_ || is_alias_identifier(value)) {
          drop_.insert(stmt);
        } else if (k == 0 && info.aliases.empty() && !value->is(NodeKind::Assignment)) {
          replace_[stmt] = [this, value, &P] { return make::var(P, rebuild(value)); };
        }
      }
    } else if (m_.format == ModuleFormat::AMD) {
      for (const Node* site : info.export_sites) {
        if (site->is(NodeKind::Return)) {
          const Node* value = site->child(0);
          if (eliminated_ || is_alias_identifier(value)) {
            drop_.insert(site);
          } else {
            replace_[site] = [this, value, &P] { return make::var(P, rebuild(value)); };
          }
        } else {
          // define(<value>)
          auto def = detail::find_amd_definition(*m_.program);
          const Node* value = def->value;
          if (eliminated_) {
            drop_.insert(m_.amd_statement);
          } else {
            replace_[m_.amd_statement] = [this, value, &P] { return make::var(P, rebuild(value)); };
          }
        }
      }
    }

    if (eliminated_) {
      drop_declaration(info.alias_decl);
      if (info.expr && !info.expr->is(NodeKind::FunctionDeclaration)) {
        const Node* p = scopes_.parent(info.expr);
        if (p && p->is(NodeKind::VarDeclarator)) {
          drop_.insert(p);
        } else if (p && p->is(NodeKind::Assignment) && scopes_.parent(p) &&
                   scopes_.parent(p)->is(NodeKind::ExpressionStatement)) {
          drop_.insert(scopes_.parent(p));
        }
      }
      if (info.expr && info.expr->is(NodeKind::ObjectLiteral)) {
        for (const auto& pair : info.expr->children) {
          if (!info.find(pair->text) || info.find(pair->text)->site != pair.get()) {
            fail("object literal key '" + pair->text + "' cannot be extracted into a variable");
          }
        }
      }
    }

    if (m_.destructuring_failed) return;
    std::map<std::string, std::string> extracted;
    for (const auto& f : m_.features) {
      if (f.kind != FeatureKind::ExtractedProperty) continue;
      const BoundProperty* bp = info.find(f.name);
      if (!bp) continue;
      extracted[f.name] = f.emitted_name;
      const std::string emitted = f.emitted_name;
      const Node* value = bp->value;
      bool reuse = value && value->is_identifier(f.name) && scopes_.resolve(value) &&
                   scopes_.resolve(value)->scope == &m_.module_scope();
      if (bp->site->is(NodeKind::PropertyPair)) {
        drop_.insert(bp->site);
        if (!reuse) hoisted_[top_statement(bp->site)].push_back({emitted, value});
      } else {
        if (reuse) {
          drop_.insert(bp->site);
        } else {
          replace_[bp->site] = [this, emitted, value] { return make::var(emitted, rebuild(value)); };
        }
      }
    }
    if (extracted.empty()) return;
    steps.push_back("step3_destructure");
    visit(*m_.program, [&](const Node& n) {
      if (n.is(NodeKind::MemberAccess) && n.notation == Notation::Dot && is_object_ref(*n.child(0))) {
        auto it = extracted.find(n.text);
        if (it != extracted.end()) {
          std::string name = it->second;
          replace_[&n] = [name] { return make::identifier(name); };
          return false;
        }
      }
      return true;
    });
  }

  void plan_amd_params() {
    if (!m_.factory) return;
    auto def = detail::find_amd_definition(*m_.program);
    const Scope* fs = scopes_.scope_of(m_.factory);
    std::size_t ndeps = def && def->deps ? def->deps->children.size() : 0;
    for (std::size_t k = 0; k < m_.factory->params.size(); ++k) {
      const std::string& p = m_.factory->params[k];
      if (k >= ndeps) {
        prelude_.push_back(make::var(p, nullptr));
        continue;
      }
      const Node* dep = def->deps->child(k);
      if (dep && dep->is_string_literal() &&
          (dep->text == "require" || dep->text == "exports" || dep->text == "module")) {
        const Binding* b = fs ? fs->own(p) : nullptr;
        if (b && !scopes_.references_to(b).empty()) {
          fail("AMD factory uses the CommonJS wrapper dependency '" + dep->text + "'");
        }
      }
      ++removed_[p];
    }
  }

  // ---- globals owned by this module ----

  void plan_globals() {
    for (const auto& f : m_.features) {
      if (f.kind != FeatureKind::GlobalObjectProperty && f.kind != FeatureKind::ImpliedGlobal) continue;
      top_decls_.push_back(make::var(f.emitted_name, nullptr));
      if (f.emitted_name == f.name) continue;
      auto it = scopes_.free_references().find(f.name);
      if (it == scopes_.free_references().end()) continue;
      std::string name = f.emitted_name;
      for (const Node* r : it->second) replace_[r] = [name] { return make::identifier(name); };
    }
  }

  // ---- imports ----

  /// Skipped project files are imported by their relative file path.
  std::string library_specifier(const std::string& specifier) const {
    if (specifier.rfind("./", 0) != 0 && specifier.rfind("../", 0) != 0) return specifier;
    std::set<std::string> paths;
    for (const auto& m : analysis_.modules) paths.insert(m.id.path);
    auto target = resolve_cjs(m_.id.path, specifier, paths);
    return target ? relative_specifier(m_.id.path, *target) : specifier;
  }

  ImportGroup& group(const std::string& specifier, std::size_t order) {
    auto it = group_index_.find(specifier);
    if (it != group_index_.end()) return groups_[it->second].second;
    group_index_[specifier] = groups_.size();
    groups_.push_back({order, ImportGroup{specifier, {}, {}}});
    return groups_.back().second;
  }

  bool taken(const std::string& c) const {
    if (is_reserved_word(c) || is_builtin_global(c) || c == placeholder_) return true;
    auto bc = binding_count_.find(c);
    auto rc = removed_.find(c);
    if (bc != binding_count_.end() && bc->second > (rc == removed_.end() ? 0 : rc->second)) return true;
    if (scopes_.free_references().count(c) && !imported_globals_.count(c)) return true;
    for (const auto& f : m_.features) {
      if (f.emitted_name == c) return true;
    }
    return used_locals_.count(c) > 0;
  }

  std::string pick_local(const std::string& preferred, const std::string& target_path) {
    std::string local = choose_name(preferred, target_path, RenameReason::ImportConflict,
                                    [this](const std::string& c) { return taken(c); })
                            .emitted;
    used_locals_.insert(local);
    return local;
  }

  std::string local_for(const std::string& target, const std::string& feature, std::size_t order) {
    auto key = std::make_pair(target, feature);
    auto it = locals_.find(key);
    if (it != locals_.end()) return it->second;
    std::string local = pick_local(feature, target);
    locals_[key] = local;
    group(relative_specifier(m_.id.path, target), order).named.push_back({feature, local});
    return local;
  }

  std::string mutator_for(const std::string& target, const std::string& feature, std::size_t order) {
    std::string name = "set_" + feature;
    const ModuleAnalysis* t = analysis_.find(target);
    const ModuleFeature* mf = t ? t->feature(name) : nullptr;
    if (!mf || mf->kind != FeatureKind::Mutator) fail("missing mutator " + name + " in " + target);
    std::string base = local_for(target, feature, order);
    auto key = std::make_pair(target, name);
    auto it = locals_.find(key);
    if (it != locals_.end()) return it->second;
    std::string local = pick_local("set_" + base, target);
    locals_[key] = local;
    group(relative_specifier(m_.id.path, target), order).named.push_back({name, local});
    return local;
  }

  const Binding* import_binding(const ImportBinding& b) const {
    if (b.local.empty()) return nullptr;
    if (b.style == ImportStyle::AmdParam) {
      const Scope* s = scopes_.scope_of(m_.factory);
      return s ? s->own(b.local) : nullptr;
    }
    return b.declarator ? scopes_.enclosing(b.declarator).lookup(b.local) : nullptr;
  }

  void plan_imports() {
    std::vector<bool> named_direct(m_.imports.size(), false);
    std::vector<bool> has_access(m_.imports.size(), false);
    for (const auto& a : m_.accesses) {
      if (a.import_index != kNoImport) has_access[a.import_index] = true;
      if (a.import_index == kNoImport && a.target != m_.id.path) imported_globals_.insert(a.feature);
    }

    // Bindings that disappear with the require statement.
    for (std::size_t i = 0; i < m_.imports.size(); ++i) {
      const ImportBinding& b = m_.imports[i];
      if (b.dynamic) fail("dynamic require cannot be converted to an import");
      if (b.local_written) continue;
      bool library = b.target.empty();
      if (b.style == ImportStyle::Namespace) {
        drop_.insert(b.declarator);
        ++removed_[b.local];
      } else if (b.style == ImportStyle::Named && !library) {
        const ModuleAnalysis* t = analysis_.find(b.target);
        const ModuleFeature* f = t ? t->feature(b.property) : nullptr;
        if (f && f->kind != FeatureKind::Mutator) {
          drop_.insert(b.declarator);
          ++removed_[b.local];
          named_direct[i] = true;
        }
      }
    }

    for (std::size_t i = 0; i < m_.imports.size(); ++i) {
      const ImportBinding& b = m_.imports[i];
      if (!b.target.empty()) {
        if (b.target == m_.id.path) continue;
        std::string spec = relative_specifier(m_.id.path, b.target);
        ImportGroup& g = group(spec, i);
        if (b.style == ImportStyle::SideEffect && b.statement) drop_.insert(b.statement);
        if (named_direct[i]) {
          if (taken(b.local)) {
            fail("import name " + b.local + " is shadowed elsewhere in the module");
          }
          used_locals_.insert(b.local);
          g.named.push_back({b.property, b.local});
        } else if (b.local_written && b.style == ImportStyle::AmdParam) {
          const ModuleAnalysis* t = analysis_.find(b.target);
          if (!t || !t->object) fail("module " + b.target + " has no module object to bind to " + b.local);
          std::string local = local_for(b.target, t->object->name, i);
          prelude_.push_back(make::var(b.local, make::identifier(local)));
          --removed_[b.local];
        }
        continue;
      }
      // Library imports keep default-import semantics.
      ImportGroup& g = group(library_specifier(b.specifier), i);
      bool removable = !b.local_written && (b.style == ImportStyle::Namespace || b.style == ImportStyle::AmdParam);
      if (removable) {
        if (b.nested && taken(b.local)) fail("cannot hoist nested require of " + b.specifier);
        used_locals_.insert(b.local);
        if (std::find(g.defaults.begin(), g.defaults.end(), b.local) == g.defaults.end()) g.defaults.push_back(b.local);
      } else if (b.style == ImportStyle::SideEffect) {
        if (b.statement) drop_.insert(b.statement);
      } else {
        std::string local;
        if (g.defaults.empty()) {
          local = pick_local(sanitize_identifier(file_stem_identifier(b.specifier)), b.specifier);
          g.defaults.push_back(local);
        } else {
          local = g.defaults.front();
        }
        if (b.style == ImportStyle::AmdParam) {
          prelude_.push_back(make::var(b.local, make::identifier(local)));
          --removed_[b.local];
        } else {
          replace_[b.call] = [local] { return make::identifier(local); };
        }
      }
    }

    // Feature accesses become references to imported bindings.
    for (const auto& a : m_.accesses) {
      if (a.target == m_.id.path) {
        const ModuleFeature* f = m_.feature(a.feature);
        if (!f) continue;
        std::string name = f->emitted_name;
        replace_[a.node] = [name] { return make::identifier(name); };
        continue;
      }
      std::size_t order = a.import_index == kNoImport ? m_.imports.size() : a.import_index;
      if (a.import_index != kNoImport && named_direct[a.import_index]) continue;
      std::string local = local_for(a.target, a.feature, order);
      if (a.usage == Usage::W && a.write) {
        std::string setter = mutator_for(a.target, a.feature, order);
        const Node* w = a.write;
        if (w->is(NodeKind::Unary) && w->text == "delete") fail("cannot delete imported feature " + a.feature);
        replace_[w] = [this, w, setter, local] {
          NodePtr value;
          if (w->is(NodeKind::Assignment)) {
            if (w->text == "=") {
              value = rebuild(w->child(1));
            } else {
              std::string op = w->text.substr(0, w->text.size() - 1);
              value = make::binary(op, make::identifier(local), rebuild(w->child(1)));
            }
          } else {
            value = make::binary(w->text == "++" ? "+" : "-", make::identifier(local), make::number("1"));
          }
          std::vector<NodePtr> args;
          args.push_back(std::move(value));
          return make::call(make::identifier(setter), std::move(args));
        };
      } else {
        replace_[a.node] = [local] { return make::identifier(local); };
      }
    }
    if (!m_.imports.empty() || !groups_.empty()) steps.push_back("step5_imports");
  }

  // ---- assembly ----

  NodePtr rebuild(const Node* n) {
    if (!n) return nullptr;
    auto it = replace_.find(n);
    if (it != replace_.end()) return it->second();
    NodePtr c = shallow_copy(*n);
    for (std::size_t i = 0; i < n->children.size(); ++i) {
      const Node* ch = n->child(i);
      bool list = is_list_slot(*n, i);
      NodePtr r = (ch && drop_.count(ch)) ? nullptr : rebuild(ch);
      bool empty_decl = r && r->is(NodeKind::VarDeclaration) && r->children.empty();
      if (ch && (!r || empty_decl)) {
        if (list) continue;
        if (n->is(NodeKind::For) || n->is(NodeKind::ForIn)) {
          c->children.push_back(nullptr);
        } else {
          c->children.push_back(std::make_unique<Node>(NodeKind::Empty));
        }
        continue;
      }
      c->children.push_back(std::move(r));
    }
    return c;
  }

  void emit_statement(const Node* s, std::vector<NodePtr>& out) {
    auto h = hoisted_.find(s);
    if (h != hoisted_.end()) {
      auto hoisted = h->second;
      std::sort(hoisted.begin(), hoisted.end(), [](const auto& a, const auto& b) {
        return a.second->span->begin < b.second->span->begin;
      });
      for (const auto& [name, value] : hoisted) out.push_back(make::var(name, rebuild(value)));
    }
    if (drop_.count(s)) return;
    NodePtr r = rebuild(s);
    if (!r || (r->is(NodeKind::VarDeclaration) && r->children.empty())) return;
    out.push_back(std::move(r));
  }

  Program assemble() {
    std::vector<NodePtr> body;
    for (const auto& stmt : m_.program->body) {
      if (stmt.get() == m_.amd_statement && m_.factory) {
        bool prologue = true;
        for (const auto& inner : m_.factory->children) {
          if (prologue && is_directive(*inner)) continue;
          prologue = false;
          emit_statement(inner.get(), body);
        }
        continue;
      }
      emit_statement(stmt.get(), body);
    }

    std::vector<NodePtr> mutators;
    std::vector<Specifier> exports;
    for (const auto& f : m_.features) {
      if (f.kind == FeatureKind::Mutator) {
        const ModuleFeature* target = m_.feature(f.mutates);
        std::string var = target ? target->emitted_name : f.mutates;
        std::string param = var == "value" ? "value_" : "value";
        std::vector<NodePtr> fbody;
        fbody.push_back(make::expression_statement(make::assign(make::identifier(var), make::identifier(param))));
        mutators.push_back(make::function_declaration(f.emitted_name, {param}, std::move(fbody)));
      }
      if (f.exported) exports.push_back({f.emitted_name, f.name});
    }
    if (!exports.empty()) steps.push_back("step4_exports");

    // Placeholder: kept only while something still refers to it.
    bool referenced = std::any_of(exports.begin(), exports.end(),
                                  [&](const Specifier& s) { return s.first == placeholder_; });
    bool declared = false;
    auto scan = [&](const Node& n) {
      if (n.is_identifier(placeholder_)) referenced = true;
      return true;
    };
    for (const auto& s : body) {
      visit(*s, scan);
      if (s->is(NodeKind::VarDeclaration)) {
        for (const auto& d : s->children) declared = declared || d->text == placeholder_;
      }
    }
    for (const auto& s : prelude_) visit(*s, scan);
    std::vector<NodePtr> head;
    if (m_.object && referenced && !declared) {
      bool alias_form = m_.format == ModuleFormat::CJS && !m_.object->expr;
      head.push_back(make::var(placeholder_, alias_form ? std::make_unique<Node>(NodeKind::ObjectLiteral) : make::null()));
    } else if (m_.object && !referenced && (m_.format == ModuleFormat::CJS || eliminated_)) {
      steps.push_back("cleanup");
    }

    Program out;
    out.file = m_.program->file;
    out.directives = m_.program->directives;
    std::stable_sort(groups_.begin(), groups_.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [order, g] : groups_) {
      for (const auto& d : g.defaults) out.body.push_back(make::import_default(d, g.specifier));
      if (!g.named.empty()) {
        std::sort(g.named.begin(), g.named.end(), [](const Specifier& a, const Specifier& b) {
          return std::tie(a.first, a.second) < std::tie(b.first, b.second);
        });
        out.body.push_back(make::import_named(g.named, g.specifier));
      }
      if (g.defaults.empty() && g.named.empty()) out.body.push_back(make::import_side_effect(g.specifier));
    }
    for (auto& s : head) out.body.push_back(std::move(s));
    for (auto& s : top_decls_) out.body.push_back(std::move(s));
    for (auto& s : prelude_) out.body.push_back(std::move(s));
    for (auto& s : body) out.body.push_back(std::move(s));
    for (auto& s : mutators) out.body.push_back(std::move(s));
    if (!exports.empty()) out.body.push_back(make::export_named(std::move(exports)));
    return out;
  }

  const ProjectAnalysis& analysis_;
  const ModuleAnalysis& m_;
  const ScopeTree& scopes_;
  std::string placeholder_;
  bool eliminated_ = false;

  std::unordered_map<const Node*, std::function<NodePtr()>> replace_;
  std::unordered_set<const Node*> drop_;
  std::unordered_map<const Node*, std::vector<std::pair<std::string, const Node*>>> hoisted_;
  std::vector<NodePtr> top_decls_;
  std::vector<NodePtr> prelude_;

  std::map<std::string, int> binding_count_;
  std::map<std::string, int> removed_;
  std::set<std::string> imported_globals_;
  std::set<std::string> used_locals_;
  std::map<std::pair<std::string, std::string>, std::string> locals_;
  std::vector<std::pair<std::size_t, ImportGroup>> groups_;
  std::map<std::string, std::size_t> group_index_;
};

std::vector<std::string> split_path(std::string_view p) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : p) {
    if (c == '/') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

const std::regex& type_attribute() {
  static const std::regex re(R"(\s+type\s*=\s*("[^"]*"|'[^']*'|[^\s>]+))", std::regex::icase);
  return re;
}

std::string rewrite_page(const HtmlPage& page, const std::map<std::string, ModuleStatus>& status,
                         const std::set<std::string>& inline_paths) {
  std::string text = page.text;
  for (std::size_t k = page.scripts.size(); k-- > 0;) {
    const std::string& path = page.scripts[k];
    auto it = status.find(path);
    if (it == status.end() || it->second != ModuleStatus::Refactored) continue;
    Span span = page.elements[k];
    std::string element = text.substr(span.begin, span.end - span.begin);
    std::string replacement;
    if (inline_paths.count(path)) {
      replacement = "<script type=\"module\" src=\"" + relative_specifier(page.path, path) + "\"></script>";
    } else {
      std::size_t tag_end = element.find('>');
      std::string open = element.substr(0, tag_end);
      open = std::regex_replace(open, type_attribute(), "");
      replacement = "<script type=\"module\"" + open.substr(7) + element.substr(tag_end);
    }
    text.replace(span.begin, span.end - span.begin, replacement);
  }
  return text;
}

json span_json(const Span& s) { return json::array({s.begin, s.end}); }

json violation_json(const PreconditionViolation& v) {
  return {{"family", to_string(v.family)},
          {"rule", to_string(v.rule)},
          {"path", v.path},
          {"span", span_json(v.site)},
          {"message", v.message}};
}

}  // namespace

std::string relative_specifier(std::string_view from_path, std::string_view to_path) {
  auto from = split_path(from_path);
  auto to = split_path(to_path);
  if (!from.empty()) from.pop_back();
  std::size_t k = 0;
  while (k < from.size() && k + 1 < to.size() && from[k] == to[k]) ++k;
  std::string out;
  for (std::size_t i = k; i < from.size(); ++i) out += "../";
  if (out.empty()) out = "./";
  for (std::size_t i = k; i < to.size(); ++i) {
    out += to[i];
    if (i + 1 < to.size()) out += "/";
  }
  return out;
}

Program transform_module(const ProjectAnalysis& analysis, const ModuleAnalysis& module) {
  if (module.abandoned) throw TransformError(module.id.path, "module was excluded from refactoring");
  return ModuleRewriter(analysis, module).run();
}

const char* to_string(ModuleStatus status) {
  switch (status) {
    case ModuleStatus::Refactored: return "refactored";
    case ModuleStatus::Skipped: return "skipped";
    case ModuleStatus::Failed: return "failed";
  }
  return "?";
}

bool RefactorResult::any_failed() const {
  return std::any_of(modules.begin(), modules.end(),
                     [](const ModuleReport& r) { return r.status == ModuleStatus::Failed; });
}

RefactorResult refactor_project(const Project& project, const ProjectAnalysis& analysis) {
  RefactorResult result;
  std::map<std::string, ModuleStatus> status;
  std::set<std::string> inline_paths;
  for (const auto& m : analysis.modules) {
    ModuleReport report;
    report.path = m.id.path;
    report.renames = m.renames;
    report.violations = m.violations;
    const SourceFile& source = *m.program->file;
    std::string text = source.text;
    if (source.origin == Origin::HtmlInline) inline_paths.insert(m.id.path);
    if (m.abandoned) {
      report.status = ModuleStatus::Skipped;
      report.message = m.skip_reason;
    } else {
      try {
        ModuleRewriter rewriter(analysis, m);
        Program out = rewriter.run();
        text = print(out);
        report.steps = rewriter.steps;
        std::sort(report.steps.begin(), report.steps.end(), [](const std::string& a, const std::string& b) {
          return (a == "cleanup") == (b == "cleanup") ? a < b : b == "cleanup";
        });
      } catch (const TransformError& e) {
        report.status = ModuleStatus::Failed;
        report.message = e.message();
      } catch (const PrintError& e) {
        report.status = ModuleStatus::Failed;
        report.message = e.what();
      }
    }
    status[m.id.path] = report.status;
    if (source.origin != Origin::HtmlInline || report.status == ModuleStatus::Refactored) {
      result.files.push_back({m.id.path, std::move(text)});
    }
    result.modules.push_back(std::move(report));
  }
  for (const auto& page : project.pages) {
    result.files.push_back({page.path, rewrite_page(page, status, inline_paths)});
  }
  std::sort(result.files.begin(), result.files.end(),
            [](const OutputFile& a, const OutputFile& b) { return a.path < b.path; });
  return result;
}

std::string report_json(const RefactorResult& result) {
  json modules = json::array();
  for (const auto& r : result.modules) {
    json renames = json::array();
    for (const auto& p : r.renames) {
      renames.push_back({{"original", p.original},
                         {"emitted", p.emitted},
                         {"reason", to_string(p.reason)},
                         {"prefix_chain", p.prefix_chain}});
    }
    json violations = json::array();
    for (const auto& v : r.violations) violations.push_back(violation_json(v));
    modules.push_back({{"path", r.path},
                       {"status", to_string(r.status)},
                       {"steps", r.steps},
                       {"renames", renames},
                       {"violations", violations},
                       {"message", r.message}});
  }
  return json{{"modules", modules}}.dump(2) + "\n";
}

std::string violations_json(const std::vector<PreconditionViolation>& violations) {
  json out = json::array();
  for (const auto& v : violations) out.push_back(violation_json(v));
  return out.dump(2) + "\n";
}

}  // namespace es6migrate
