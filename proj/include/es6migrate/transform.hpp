#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "es6migrate/analysis.hpp"

namespace es6migrate {

class TransformError : public std::runtime_error {
 public:
  TransformError(std::string path, std::string message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)), message_(std::move(message)) {}
  const std::string& path() const { return path_; }
  const std::string& message() const { return message_; }

 private:
  std::string path_;
  std::string message_;
};

/// Relative import specifier between two project paths: "./a.js",
/// "../util/b.js".
std::string relative_specifier(std::string_view from_path, std::string_view to_path);

/// Rewrites one analyzed module into an ES6 module: AMD/CJS wrapper
/// removal, module-object destructuring, named exports with mutators,
/// named and default imports, placeholder cleanup.
Program transform_module(const ProjectAnalysis& analysis, const ModuleAnalysis& module);

enum class ModuleStatus { Refactored, Skipped, Failed };

const char* to_string(ModuleStatus status);

struct ModuleReport {
  std::string path;
  ModuleStatus status = ModuleStatus::Refactored;
  std::vector<std::string> steps;
  std::vector<RenamePlan> renames;
  std::vector<PreconditionViolation> violations;
  std::string message;
};

struct OutputFile {
  std::string path;
  std::string text;
};

struct RefactorResult {
  /// One entry per analyzed script (original text when skipped or failed)
  /// plus every HTML page, sorted by path.
  std::vector<OutputFile> files;
  std::vector<ModuleReport> modules;

  bool any_failed() const;
};

RefactorResult refactor_project(const Project& project, const ProjectAnalysis& analysis);

/// `{"modules": [{path, status, steps, renames, violations, message}]}`.
std::string report_json(const RefactorResult& result);
/// `[{family, rule, path, span: [s, e], message}]`.
std::string violations_json(const std::vector<PreconditionViolation>& violations);

}  // namespace es6migrate
