#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

#include "es6migrate/metrics.hpp"

namespace es6migrate {

namespace {

using json = nlohmann::ordered_json;

/// Direct statements of `fn`, not descending into nested functions.
void visit_body(const Node& fn, const std::function<void(const Node&)>& f) {
  for (const auto& stmt : fn.children) {
    visit(*stmt, [&](const Node& n) {
      f(n);
      return !n.is_function();
    });
  }
}

bool binds_this(const Node& fn) {
  bool found = false;
  visit_body(fn, [&](const Node& n) {
    if (n.is(NodeKind::Assignment) && n.child(0)->is(NodeKind::MemberAccess) &&
        n.child(0)->child(0)->is(NodeKind::ThisExpression)) {
      found = true;
    }
  });
  return found;
}

bool is_instance_expression(const Node* e) {
  if (!e) return false;
  if (e->is(NodeKind::New) || e->is(NodeKind::ObjectLiteral)) return true;
  return e->is(NodeKind::Call) && e->child(0)->is_dot_member("create") && e->child(0)->child(0)->is_identifier("Object");
}

/// Returns a fresh instance: `return new X(...)`, `return {...}`, or a
/// local initialized that way.
bool returns_instance(const Node& fn) {
  std::map<std::string, const Node*> inits;
  visit_body(fn, [&](const Node& n) {
    if (n.is(NodeKind::VarDeclarator) && n.child(0)) inits[n.text] = n.child(0);
  });
  bool found = false;
  visit_body(fn, [&](const Node& n) {
    if (!n.is(NodeKind::Return) || !n.child(0)) return;
    const Node* v = n.child(0);
    if (v->is(NodeKind::Identifier)) {
      auto it = inits.find(v->text);
      v = it == inits.end() ? nullptr : it->second;
    }
    if (is_instance_expression(v)) found = true;
  });
  return found;
}

std::string percent(std::size_t n, std::size_t total) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << (total ? 100.0 * static_cast<double>(n) / static_cast<double>(total) : 0.0);
  return s.str();
}

}  // namespace

const char* to_string(PatternClass c) {
  switch (c) {
    case PatternClass::Factory: return "Factory";
    case PatternClass::Namespace: return "Namespace";
    case PatternClass::Utility: return "Utility";
  }
  return "?";
}

PatternClass classify_module_object(const ModuleObjectInfo& info, const Program& program,
                                    const std::set<std::string>& constructors) {
  const Node* fn = info.expr && info.expr->is_function() ? info.expr : nullptr;
  if (!fn) return info.is_namespace ? PatternClass::Namespace : PatternClass::Utility;
  if (binds_this(*fn) || !info.prototype_bindings.empty() || returns_instance(*fn)) return PatternClass::Factory;
  std::set<std::string> names(info.aliases.begin(), info.aliases.end());
  if (!fn->text.empty()) names.insert(fn->text);
  bool constructed = false;
  visit(program, [&](const Node& n) {
    if (n.is(NodeKind::New) && n.child(0)->is(NodeKind::Identifier) && names.count(n.child(0)->text)) {
      constructed = true;
    }
    return !constructed;
  });
  for (const auto& name : names) constructed = constructed || constructors.count(name) > 0;
  if (constructed) return PatternClass::Factory;
  return info.is_namespace ? PatternClass::Namespace : PatternClass::Utility;
}

Census census(const Project& project, std::optional<ModuleFormat> forced_format) {
  Census c;
  auto constructors = constructor_names(project);
  std::vector<const Program*> programs;
  for (const auto& p : project.programs) programs.push_back(&p);
  std::sort(programs.begin(), programs.end(), [](const Program* a, const Program* b) { return a->path() < b->path(); });
  for (const Program* p : programs) {
    ModuleFormat format = forced_format ? *forced_format : detect_format(*p);
    if (format == ModuleFormat::NonModular) continue;
    ScopeTree scopes(*p);
    auto info = identify_module_object(*p, format, scopes);
    if (!info) continue;
    PatternClass cls = classify_module_object(*info, *p, constructors);
    c.entries.push_back({p->path(), info->name, cls});
    switch (cls) {
      case PatternClass::Factory: ++c.factory; break;
      case PatternClass::Namespace: ++c.namespace_; break;
      case PatternClass::Utility: ++c.utility; break;
    }
  }
  return c;
}

std::string census_json(const Census& c) {
  json objects = json::array();
  for (const auto& e : c.entries) objects.push_back({{"path", e.path}, {"object", e.object}, {"class", to_string(e.cls)}});
  std::size_t total = c.total();
  json counts = {
      {"Factory", {{"count", c.factory}, {"percent", percent(c.factory, total)}}},
      {"Namespace", {{"count", c.namespace_}, {"percent", percent(c.namespace_, total)}}},
      {"Utility", {{"count", c.utility}, {"percent", percent(c.utility, total)}}},
  };
  json out = {{"total", total}, {"classes", counts}, {"objects", objects}};
  return out.dump(2) + "\n";
}

}  // namespace es6migrate
