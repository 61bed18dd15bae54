#include "es6migrate/mdg.hpp"

#include <algorithm>
#include <array>
#include <tuple>

#include <json.hpp>

namespace es6migrate {

using json = nlohmann::ordered_json;

namespace {

constexpr std::array<std::pair<FeatureKind, const char*>, 7> kFeatureKinds = {{
    {FeatureKind::ExtractedProperty, "ExtractedProperty"},
    {FeatureKind::ModuleObject, "ModuleObject"},
    {FeatureKind::GlobalVar, "GlobalVar"},
    {FeatureKind::ImpliedGlobal, "ImpliedGlobal"},
    {FeatureKind::GlobalObjectProperty, "GlobalObjectProperty"},
    {FeatureKind::TopLevelDecl, "TopLevelDecl"},
    {FeatureKind::Mutator, "Mutator"},
}};

constexpr std::array<std::pair<Usage, const char*>, 5> kUsages = {{
    {Usage::R, "R"}, {Usage::W, "W"}, {Usage::C, "C"}, {Usage::L, "L"}, {Usage::S, "S"},
}};

auto dep_key(const Dependency& d) {
  return std::tie(d.from.path, d.feature, d.to.path, d.usage, d.from.name, d.to.name);
}

template <typename Node>
auto find_node(Node& modules, std::string_view path) -> decltype(&modules.front()) {
  auto it = std::lower_bound(modules.begin(), modules.end(), path,
                             [](const ModuleNode& n, std::string_view p) { return n.id.path < p; });
  if (it == modules.end() || it->id.path != path) return nullptr;
  return &*it;
}

template <typename Feature>
auto find_feature(Feature& features, std::string_view name) -> decltype(&features.front()) {
  auto it = std::lower_bound(features.begin(), features.end(), name,
                             [](const ModuleFeature& f, std::string_view n) { return f.name < n; });
  if (it == features.end() || it->name != name) return nullptr;
  return &*it;
}

[[noreturn]] void schema_fail(const std::string& msg) { throw SchemaError("malformed MDG JSON: " + msg); }

const json& field(const json& obj, const char* key, json::value_t type) {
  if (!obj.is_object()) schema_fail("expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(std::string("missing key '") + key + "'");
  bool ok = it->type() == type ||
            (type == json::value_t::number_unsigned && it->type() == json::value_t::number_integer &&
             it->get<long long>() >= 0);
  if (!ok) schema_fail(std::string("key '") + key + "' has the wrong type");
  return *it;
}

}  // namespace

const char* to_string(FeatureKind kind) {
  for (const auto& [k, s] : kFeatureKinds) {
    if (k == kind) return s;
  }
  return "?";
}

std::optional<FeatureKind> feature_kind_from_string(std::string_view s) {
  for (const auto& [k, name] : kFeatureKinds) {
    if (s == name) return k;
  }
  return std::nullopt;
}

const char* to_string(Usage usage) {
  for (const auto& [u, s] : kUsages) {
    if (u == usage) return s;
  }
  return "?";
}

std::optional<Usage> usage_from_string(std::string_view s) {
  for (const auto& [u, name] : kUsages) {
    if (s == name) return u;
  }
  return std::nullopt;
}

bool operator<(const Dependency& a, const Dependency& b) { return dep_key(a) < dep_key(b); }

const ModuleFeature* ModuleNode::find(std::string_view feature) const {
  return find_feature(features, feature);
}

ModuleFeature* ModuleNode::find(std::string_view feature) { return find_feature(features, feature); }

const ModuleNode* Mdg::find(std::string_view path) const { return find_node(modules, path); }

ModuleNode* Mdg::find(std::string_view path) { return find_node(modules, path); }

bool Mdg::is_library(std::string_view path) const {
  return std::any_of(libraries.begin(), libraries.end(),
                     [&](const ModuleId& l) { return l.path == path; });
}

ModuleNode& Mdg::add_module(ModuleNode node) {
  std::sort(node.features.begin(), node.features.end(),
            [](const ModuleFeature& a, const ModuleFeature& b) { return a.name < b.name; });
  node.features.erase(std::unique(node.features.begin(), node.features.end(),
                                  [](const ModuleFeature& a, const ModuleFeature& b) {
                                    return a.name == b.name;
                                  }),
                      node.features.end());
  auto it = std::lower_bound(modules.begin(), modules.end(), node.id.path,
                             [](const ModuleNode& n, const std::string& p) { return n.id.path < p; });
  if (it != modules.end() && it->id.path == node.id.path) {
    *it = std::move(node);
    return *it;
  }
  return *modules.insert(it, std::move(node));
}

bool Mdg::add_dependency(Dependency dep) {
  if (dep.from.path == dep.to.path) return false;
  auto it = std::lower_bound(deps.begin(), deps.end(), dep);
  if (it != deps.end() && *it == dep) return false;
  deps.insert(it, std::move(dep));
  return true;
}

void Mdg::add_library(ModuleId id) {
  auto it = std::lower_bound(libraries.begin(), libraries.end(), id);
  if (it != libraries.end() && *it == id) return;
  libraries.insert(it, std::move(id));
}

std::vector<Dependency> incoming(const Mdg& mdg, const ModuleId& m) {
  if (!mdg.find(m.path) && !mdg.is_library(m.path)) throw UnknownModule(m.path);
  std::vector<Dependency> out;
  for (const auto& d : mdg.deps) {
    if (d.to.path == m.path) out.push_back(d);
  }
  return out;
}

std::vector<Dependency> outgoing(const Mdg& mdg, const ModuleId& m) {
  if (!mdg.find(m.path) && !mdg.is_library(m.path)) throw UnknownModule(m.path);
  std::vector<Dependency> out;
  for (const auto& d : mdg.deps) {
    if (d.from.path == m.path) out.push_back(d);
  }
  return out;
}

std::vector<std::string> check_invariants(const Mdg& mdg) {
  std::vector<std::string> problems;
  for (const auto& node : mdg.modules) {
    for (const auto& f : node.features) {
      if (f.kind != FeatureKind::Mutator) continue;
      const ModuleFeature* target = node.find(f.mutates);
      if (!target || target->kind == FeatureKind::Mutator) {
        problems.push_back(node.id.path + ": mutator " + f.name + " does not reference a feature");
      }
    }
  }
  for (std::size_t i = 0; i < mdg.deps.size(); ++i) {
    const Dependency& d = mdg.deps[i];
    std::string edge = d.from.path + " -> " + d.to.path;
    if (i && mdg.deps[i - 1] == d) problems.push_back("duplicate edge " + edge);
    if (d.from.path == d.to.path) problems.push_back("self edge " + edge);
    if (!mdg.find(d.from.path)) problems.push_back("edge source not a module: " + edge);
    const ModuleNode* target = mdg.find(d.to.path);
    bool library = mdg.is_library(d.to.path);
    if (!target && !library) problems.push_back("edge target unknown: " + edge);
    if (d.feature.has_value() == is_featureless(d.usage)) {
      problems.push_back("feature/usage mismatch on " + edge);
    }
    if (d.usage == Usage::L && !library) problems.push_back("L edge to project module: " + edge);
    if (d.usage != Usage::L && library) problems.push_back("non-L edge to library: " + edge);
    if (d.feature && target && !target->find(*d.feature)) {
      problems.push_back("edge feature " + *d.feature + " not in target: " + edge);
    }
  }
  return problems;
}

std::string serialize(const Mdg& mdg, int indent) {
  json modules = json::array();
  for (const auto& node : mdg.modules) {
    json features = json::array();
    for (const auto& f : node.features) {
      json jf;
      jf["name"] = f.name;
      jf["kind"] = to_string(f.kind);
      jf["exported"] = f.exported;
      jf["emitted_name"] = f.emitted_name;
      jf["decl_site"] = f.decl_site ? json::array({f.decl_site->begin, f.decl_site->end}) : json(nullptr);
      if (f.kind == FeatureKind::Mutator) jf["mutates"] = f.mutates;
      features.push_back(std::move(jf));
    }
    json jm;
    jm["name"] = node.id.name;
    jm["path"] = node.id.path;
    jm["features"] = std::move(features);
    modules.push_back(std::move(jm));
  }
  json deps = json::array();
  for (const auto& d : mdg.deps) {
    json jd;
    jd["from"] = d.from.path;
    jd["to"] = d.to.path;
    jd["feature"] = d.feature ? json(*d.feature) : json(nullptr);
    jd["usage"] = to_string(d.usage);
    deps.push_back(std::move(jd));
  }
  json libraries = json::array();
  for (const auto& l : mdg.libraries) libraries.push_back(l.path);

  json root;
  root["modules"] = std::move(modules);
  root["deps"] = std::move(deps);
  root["libraries"] = std::move(libraries);
  return root.dump(indent);
}

Mdg deserialize(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema_fail(e.what());
  }
  Mdg mdg;
  for (const auto& jl : field(root, "libraries", json::value_t::array)) {
    if (!jl.is_string()) schema_fail("library entries must be strings");
    std::string p = jl.get<std::string>();
    mdg.add_library({p, p});
  }
  for (const auto& jm : field(root, "modules", json::value_t::array)) {
    ModuleNode node;
    node.id.name = field(jm, "name", json::value_t::string).get<std::string>();
    node.id.path = field(jm, "path", json::value_t::string).get<std::string>();
    if (mdg.find(node.id.path)) schema_fail("duplicate module path '" + node.id.path + "'");
    for (const auto& jf : field(jm, "features", json::value_t::array)) {
      ModuleFeature f;
      f.name = field(jf, "name", json::value_t::string).get<std::string>();
      auto kind = feature_kind_from_string(field(jf, "kind", json::value_t::string).get<std::string>());
      if (!kind) schema_fail("unknown feature kind for '" + f.name + "'");
      f.kind = *kind;
      f.exported = field(jf, "exported", json::value_t::boolean).get<bool>();
      f.emitted_name = field(jf, "emitted_name", json::value_t::string).get<std::string>();
      if (auto it = jf.find("decl_site"); it != jf.end() && !it->is_null()) {
        if (!it->is_array() || it->size() != 2 || !(*it)[0].is_number_unsigned() ||
            !(*it)[1].is_number_unsigned()) {
          schema_fail("decl_site must be [begin, end]");
        }
        f.decl_site = Span{(*it)[0].get<std::size_t>(), (*it)[1].get<std::size_t>()};
      }
      if (f.kind == FeatureKind::Mutator) {
        f.mutates = field(jf, "mutates", json::value_t::string).get<std::string>();
      }
      node.features.push_back(std::move(f));
    }
    mdg.add_module(std::move(node));
  }
  auto resolve = [&](const std::string& path) -> ModuleId {
    if (const ModuleNode* n = mdg.find(path)) return n->id;
    if (mdg.is_library(path)) return {path, path};
    schema_fail("edge endpoint '" + path + "' is neither a module nor a library");
  };
  for (const auto& jd : field(root, "deps", json::value_t::array)) {
    Dependency d;
    d.from = resolve(field(jd, "from", json::value_t::string).get<std::string>());
    d.to = resolve(field(jd, "to", json::value_t::string).get<std::string>());
    auto it = jd.find("feature");
    if (it == jd.end()) schema_fail("missing key 'feature'");
    if (it->is_string()) {
      d.feature = it->get<std::string>();
    } else if (!it->is_null()) {
      schema_fail("feature must be a string or null");
    }
    auto usage = usage_from_string(field(jd, "usage", json::value_t::string).get<std::string>());
    if (!usage) schema_fail("unknown usage");
    d.usage = *usage;
    if (d.feature.has_value() == is_featureless(d.usage)) schema_fail("feature/usage mismatch");
    if (!mdg.add_dependency(std::move(d))) schema_fail("duplicate or self edge");
  }
  return mdg;
}

}  // namespace es6migrate
