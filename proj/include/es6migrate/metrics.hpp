#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "es6migrate/analysis.hpp"

namespace es6migrate {

/// (module path, feature name).
using FeatureRef = std::pair<std::string, std::string>;

/// Feature-level coupling between the modules of one snapshot.
struct CouplingGraph {
  std::set<std::string> modules;
  /// Module -> project features it imports (libraries excluded).
  std::map<std::string, std::set<FeatureRef>> imports;
  /// Module -> foreign features whose declarations reference its features.
  std::map<std::string, std::set<FeatureRef>> referenced_by;
};

/// ES5 snapshot: importing a module object brings in all of its
/// features (namespace-import granularity); global accesses count per
/// feature.
CouplingGraph es5_coupling(const ProjectAnalysis& analysis);
/// ES6 snapshot: named imports only, parsed from the output modules.
CouplingGraph es6_coupling(const Project& project);

/// Exact fraction in lowest terms.
struct Ratio {
  long num = 0;
  long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

Ratio make_ratio(long num, long den);

struct ModuleMetrics {
  std::string path;
  std::size_t fan_out = 0;
  std::size_t fan_in = 0;
  /// FO / (FO + FI); nullopt when both are zero.
  std::optional<Ratio> instability;
  std::set<FeatureRef> f_out;
  std::set<FeatureRef> f_in;
  /// Modules owning a feature in f_in.
  std::set<std::string> fi_clients;
};

ModuleMetrics compute_module_metrics(const CouplingGraph& graph, const std::string& path);

struct ProjectMetrics {
  std::vector<ModuleMetrics> modules;
  double avg_fo = 0, sd_fo = 0;
  double avg_fi = 0, sd_fi = 0;
  /// Over modules with defined instability only.
  double avg_i = 0, sd_i = 0;
  std::size_t defined_i = 0;
};

ProjectMetrics compute_project_metrics(const CouplingGraph& graph);

class MismatchedModuleSets : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MetricsDelta {
  double d_avg_fo = 0;
  double d_avg_fi = 0;
  double d_avg_i = 0;
  /// Mean of (I_before - I_after) / I_before * 100 over modules whose
  /// instability is defined in both snapshots and positive before.
  std::optional<double> delta_i_pct;
};

MetricsDelta compare_snapshots(const ProjectMetrics& before, const ProjectMetrics& after);

/// `{"before": ..., "after": ..., "delta": ...}` with per-module entries.
std::string metrics_json(const ProjectMetrics& before, const ProjectMetrics& after, const MetricsDelta& delta);

enum class PatternClass { Factory, Namespace, Utility };

const char* to_string(PatternClass c);

/// `constructors` lists names used as `new` targets across the project.
PatternClass classify_module_object(const ModuleObjectInfo& info, const Program& program,
                                    const std::set<std::string>& constructors = {});

struct CensusEntry {
  std::string path;
  std::string object;
  PatternClass cls;
};

struct Census {
  std::vector<CensusEntry> entries;
  std::size_t factory = 0;
  std::size_t namespace_ = 0;
  std::size_t utility = 0;

  std::size_t total() const { return factory + namespace_ + utility; }
};

Census census(const Project& project, std::optional<ModuleFormat> forced_format = std::nullopt);
std::string census_json(const Census& c);

enum class FileFormat { AMD, CJS, ES6, Other };

const char* to_string(FileFormat f);

/// One recognizer of the regex classifier.
struct FormatPattern {
  FileFormat format;
  std::string regex;
  /// Line-anchored patterns run per line; the rest run over the whole
  /// text with newlines folded to spaces.
  bool per_line = false;
};

/// The pattern set, applied after comment stripping and string masking.
const std::vector<FormatPattern>& format_patterns();
/// Removes // and /* */ comments, leaving string literals intact.
std::string strip_comments(std::string_view text);
/// Precedence ES6 > AMD > CJS; Other when nothing matches.
FileFormat classify_file_format(std::string_view text);

}  // namespace es6migrate
