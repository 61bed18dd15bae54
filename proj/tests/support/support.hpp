#pragma once

#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "es6migrate/analysis.hpp"
#include "es6migrate/transform.hpp"

namespace es6migrate::testing {

std::string fixture_path(const std::string& rel);
std::string golden_path(const std::string& rel);
std::string read_file(const std::string& path);

/// from, to, feature ("-" when null), usage.
using Edge = std::tuple<std::string, std::string, std::string, std::string>;

std::set<Edge> edges_of(const Mdg& mdg);
/// Reads a `.edges` file: one `from to feature usage` tuple per line,
/// `#` comments.
std::set<Edge> read_edges(const std::string& path);

/// Every .js file under the fixture tree, sorted.
std::vector<std::string> fixture_scripts();

struct CliRun {
  int exit_code = -1;
  std::string output;
};

/// Runs the es6migrate binary with `args` (shell-quoted by the caller),
/// capturing stdout and stderr together.
CliRun run_cli(const std::string& args);

/// Fresh empty directory under the system temp dir.
std::string temp_dir(const std::string& tag);

/// Maps path -> text for every regular file under `dir`.
std::vector<std::pair<std::string, std::string>> read_tree(const std::string& dir);

/// Node executable found on PATH, empty when unavailable.
std::string find_node();
/// Runs a shell command, returning its exit code and stdout.
CliRun run_shell(const std::string& command);

/// Writes `files` (refactor output) under `dir` plus a package.json marking
/// the tree as ES modules.
void write_module_tree(const std::string& dir, const std::vector<OutputFile>& files);

}  // namespace es6migrate::testing
