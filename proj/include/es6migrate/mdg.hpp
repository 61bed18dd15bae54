#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "es6migrate/source.hpp"

namespace es6migrate {

/// Module identity: `name` is the AMD/CJS module name (or the path for
/// non-modular scripts), `path` the canonical project-relative file path.
/// Library modules use the import specifier for both.
struct ModuleId {
  std::string name;
  std::string path;

  friend bool operator==(const ModuleId&, const ModuleId&) = default;
  friend auto operator<=>(const ModuleId& a, const ModuleId& b) {
    if (auto c = a.path <=> b.path; c != 0) return c;
    return a.name <=> b.name;
  }
};

enum class FeatureKind {
  ExtractedProperty,
  ModuleObject,
  GlobalVar,
  ImpliedGlobal,
  GlobalObjectProperty,
  TopLevelDecl,
  Mutator,
};

const char* to_string(FeatureKind kind);
std::optional<FeatureKind> feature_kind_from_string(std::string_view s);

/// R read, W write, C call, L library, S side-effect import (no bindings).
enum class Usage { R, W, C, L, S };

const char* to_string(Usage usage);
std::optional<Usage> usage_from_string(std::string_view s);

/// True for usages whose edges carry no feature.
inline bool is_featureless(Usage u) { return u == Usage::L || u == Usage::S; }

struct ModuleFeature {
  std::string name;
  FeatureKind kind = FeatureKind::ExtractedProperty;
  std::optional<Span> decl_site;
  std::string emitted_name;
  bool exported = false;
  /// For mutators: the feature they assign.
  std::string mutates;

  friend bool operator==(const ModuleFeature&, const ModuleFeature&) = default;
};

struct ModuleNode {
  ModuleId id;
  /// Sorted by name, unique names.
  std::vector<ModuleFeature> features;

  const ModuleFeature* find(std::string_view feature) const;
  ModuleFeature* find(std::string_view feature);

  friend bool operator==(const ModuleNode&, const ModuleNode&) = default;
};

struct Dependency {
  ModuleId from;
  ModuleId to;
  std::optional<std::string> feature;
  Usage usage = Usage::R;

  friend bool operator==(const Dependency&, const Dependency&) = default;
};

bool operator<(const Dependency& a, const Dependency& b);

class UnknownModule : public std::runtime_error {
 public:
  explicit UnknownModule(const std::string& path)
      : std::runtime_error("unknown module '" + path + "'") {}
};

class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Module Dependence Graph (M, D) plus the external libraries that are
/// targets of L edges. Containers are kept sorted so that iteration order
/// and serialization are deterministic.
struct Mdg {
  std::vector<ModuleNode> modules;
  std::vector<Dependency> deps;
  std::vector<ModuleId> libraries;

  const ModuleNode* find(std::string_view path) const;
  ModuleNode* find(std::string_view path);
  bool is_library(std::string_view path) const;

  /// Inserts or replaces the node with the same path.
  ModuleNode& add_module(ModuleNode node);
  /// Returns false for duplicates and self-edges.
  bool add_dependency(Dependency dep);
  void add_library(ModuleId id);

  friend bool operator==(const Mdg&, const Mdg&) = default;
};

/// Edges targeting / leaving `m`, ordered by (from.path, feature).
/// `m` may be a project module or a library.
std::vector<Dependency> incoming(const Mdg& mdg, const ModuleId& m);
std::vector<Dependency> outgoing(const Mdg& mdg, const ModuleId& m);

/// Invariant violations (dangling endpoints, self-edges, missing features,
/// feature/usage mismatches). Empty for a well-formed graph.
std::vector<std::string> check_invariants(const Mdg& mdg);

/// Compact by default; `indent >= 0` pretty-prints.
std::string serialize(const Mdg& mdg, int indent = -1);
Mdg deserialize(std::string_view json_text);

}  // namespace es6migrate
