#include <cmath>
#include <numeric>

#include <json.hpp>

#include "es6migrate/metrics.hpp"

namespace es6migrate {

namespace {

using json = nlohmann::ordered_json;

bool is_object_feature(FeatureKind k) {
  return k == FeatureKind::ExtractedProperty || k == FeatureKind::ModuleObject;
}

/// Innermost feature of `m` whose declaration encloses `node`.
const ModuleFeature* enclosing_feature(const ModuleAnalysis& m, const Node* node) {
  if (!node || !node->span) return nullptr;
  const ModuleFeature* best = nullptr;
  for (const auto& f : m.features) {
    if (!f.decl_site || !f.decl_site->contains(*node->span)) continue;
    if (!best || best->decl_site->contains(*f.decl_site)) best = &f;
  }
  return best;
}

/// Name declared by the top-level statement enclosing `node`, if any.
std::optional<std::string> enclosing_declaration(const ScopeTree& scopes, const Node* node) {
  const Node* child = node;
  const Node* p = scopes.parent(node);
  while (p && scopes.parent(p)) {
    child = p;
    p = scopes.parent(p);
  }
  const Node* top = p ? p : child;
  if (top->is(NodeKind::FunctionDeclaration)) return top->text;
  if (top->is(NodeKind::VarDeclaration)) {
    for (const Node* q = node; q; q = scopes.parent(q)) {
      if (q->is(NodeKind::VarDeclarator) && scopes.parent(q) == top) return q->text;
    }
  }
  return std::nullopt;
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mu = mean(v), acc = 0.0;
  for (double x : v) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

}  // namespace

CouplingGraph es5_coupling(const ProjectAnalysis& analysis) {
  CouplingGraph g;
  for (const auto& m : analysis.modules) g.modules.insert(m.id.path);
  for (const auto& m : analysis.modules) {
    if (m.abandoned) continue;
    auto& out = g.imports[m.id.path];
    for (const auto& b : m.imports) {
      if (b.target.empty() || b.style == ImportStyle::SideEffect) continue;
      const ModuleAnalysis* t = analysis.find(b.target);
      for (const auto& f : t->features) {
        if (is_object_feature(f.kind)) out.insert({t->id.path, f.name});
      }
    }
    for (const auto& a : m.accesses) {
      if (a.target == m.id.path) continue;
      if (a.import_index == static_cast<std::size_t>(-1)) out.insert({a.target, a.feature});

      std::vector<const Node*> sites{a.node};
      if (a.import_index != static_cast<std::size_t>(-1)) {
        const ImportBinding& b = m.imports[a.import_index];
        if (b.style == ImportStyle::Named && b.declarator) {
          if (const Binding* bind = m.scopes->enclosing(b.declarator).lookup(b.local)) {
            for (const Node* r : m.scopes->references_to(bind)) sites.push_back(r);
          }
        }
      }
      for (const Node* site : sites) {
        if (const ModuleFeature* f = enclosing_feature(m, site)) g.referenced_by[a.target].insert({m.id.path, f->name});
      }
    }
  }
  return g;
}

CouplingGraph es6_coupling(const Project& project) {
  CouplingGraph g;
  std::set<std::string> paths;
  for (const auto& p : project.programs) {
    paths.insert(p.path());
    g.modules.insert(p.path());
  }
  for (const auto& p : project.programs) {
    ScopeTree scopes(p);
    std::map<std::string, FeatureRef> locals;
    auto& out = g.imports[p.path()];
    for (const auto& stmt : p.body) {
      if (!stmt->is(NodeKind::ImportNamed)) continue;
      auto target = resolve_cjs(p.path(), stmt->text, paths);
      if (!target) continue;
      std::set<std::string> names;
      for (const auto& s : stmt->specifiers) names.insert(s.first);
      for (const auto& s : stmt->specifiers) {
        // Mutators travel with their feature and do not add coupling.
        if (s.first.rfind("set_", 0) == 0 && names.count(s.first.substr(4))) continue;
        out.insert({*target, s.first});
        locals[s.second] = {*target, s.first};
      }
    }
    for (const Node* r : scopes.references()) {
      const Binding* b = scopes.resolve(r);
      if (!b || b->kind != BindingKind::Import) continue;
      auto it = locals.find(r->text);
      if (it == locals.end()) continue;
      if (auto decl = enclosing_declaration(scopes, r)) {
        g.referenced_by[it->second.first].insert({p.path(), *decl});
      }
    }
  }
  return g;
}

Ratio make_ratio(long num, long den) {
  long d = std::gcd(num, den);
  if (d == 0) d = 1;
  return {num / d, den / d};
}

ModuleMetrics compute_module_metrics(const CouplingGraph& graph, const std::string& path) {
  if (!graph.modules.count(path)) throw UnknownModule(path);
  ModuleMetrics m;
  m.path = path;
  if (auto it = graph.imports.find(path); it != graph.imports.end()) m.f_out = it->second;
  if (auto it = graph.referenced_by.find(path); it != graph.referenced_by.end()) m.f_in = it->second;
  m.fan_out = m.f_out.size();
  m.fan_in = m.f_in.size();
  if (m.fan_out + m.fan_in > 0) {
    m.instability = make_ratio(static_cast<long>(m.fan_out), static_cast<long>(m.fan_out + m.fan_in));
  }
  for (const auto& f : m.f_in) m.fi_clients.insert(f.first);
  return m;
}

ProjectMetrics compute_project_metrics(const CouplingGraph& graph) {
  ProjectMetrics pm;
  std::vector<double> fo, fi, in;
  for (const auto& path : graph.modules) {
    pm.modules.push_back(compute_module_metrics(graph, path));
    const auto& m = pm.modules.back();
    fo.push_back(static_cast<double>(m.fan_out));
    fi.push_back(static_cast<double>(m.fan_in));
    if (m.instability) in.push_back(m.instability->value());
  }
  pm.avg_fo = mean(fo);
  pm.sd_fo = sample_sd(fo);
  pm.avg_fi = mean(fi);
  pm.sd_fi = sample_sd(fi);
  pm.avg_i = mean(in);
  pm.sd_i = sample_sd(in);
  pm.defined_i = in.size();
  return pm;
}

MetricsDelta compare_snapshots(const ProjectMetrics& before, const ProjectMetrics& after) {
  std::map<std::string, const ModuleMetrics*> a;
  for (const auto& m : after.modules) a[m.path] = &m;
  if (a.size() != before.modules.size()) throw MismatchedModuleSets("snapshots cover different module sets");
  std::vector<double> pct;
  for (const auto& b : before.modules) {
    auto it = a.find(b.path);
    if (it == a.end()) throw MismatchedModuleSets("module " + b.path + " is missing from the second snapshot");
    const ModuleMetrics& m = *it->second;
    if (b.instability && m.instability && b.instability->num > 0) {
      double ib = b.instability->value(), ia = m.instability->value();
      pct.push_back((ib - ia) / ib * 100.0);
    }
  }
  MetricsDelta d;
  d.d_avg_fo = after.avg_fo - before.avg_fo;
  d.d_avg_fi = after.avg_fi - before.avg_fi;
  d.d_avg_i = after.avg_i - before.avg_i;
  if (!pct.empty()) d.delta_i_pct = mean(pct);
  return d;
}

namespace {

json snapshot_json(const ProjectMetrics& pm, const char* granularity) {
  json modules = json::array();
  for (const auto& m : pm.modules) {
    json inst = m.instability ? json(m.instability->value()) : json(nullptr);
    json exact = m.instability ? json(std::to_string(m.instability->num) + "/" + std::to_string(m.instability->den))
                               : json(nullptr);
    modules.push_back(
        {{"path", m.path}, {"fo", m.fan_out}, {"fi", m.fan_in}, {"instability", inst}, {"instability_exact", exact}});
  }
  return {{"granularity", granularity},
          {"modules", modules},
          {"avg_fo", pm.avg_fo},
          {"sd_fo", pm.sd_fo},
          {"avg_fi", pm.avg_fi},
          {"sd_fi", pm.sd_fi},
          {"avg_i", pm.avg_i},
          {"sd_i", pm.sd_i}};
}

}  // namespace

std::string metrics_json(const ProjectMetrics& before, const ProjectMetrics& after, const MetricsDelta& delta) {
  json d = {{"avg_fo", delta.d_avg_fo},
            {"avg_fi", delta.d_avg_fi},
            {"avg_i", delta.d_avg_i},
            {"delta_i_pct", delta.delta_i_pct ? json(*delta.delta_i_pct) : json(nullptr)}};
  json out = {{"before", snapshot_json(before, "module-object")},
              {"after", snapshot_json(after, "feature")},
              {"delta", d}};
  return out.dump(2) + "\n";
}

}  // namespace es6migrate
