#include "support.hpp"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace es6migrate::testing {

std::string fixture_path(const std::string& rel) { return std::string(ES6MIGRATE_FIXTURES) + "/" + rel; }

std::string golden_path(const std::string& rel) { return std::string(ES6MIGRATE_GOLDEN) + "/" + rel; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::set<Edge> edges_of(const Mdg& mdg) {
  std::set<Edge> out;
  for (const auto& d : mdg.deps) {
    out.insert({d.from.path, d.to.path, d.feature ? *d.feature : "-", to_string(d.usage)});
  }
  return out;
}

std::set<Edge> read_edges(const std::string& path) {
  std::set<Edge> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    Edge e;
    fields >> std::get<0>(e) >> std::get<1>(e) >> std::get<2>(e) >> std::get<3>(e);
    out.insert(e);
  }
  return out;
}

std::vector<std::string> fixture_scripts() {
  std::vector<std::string> out;
  for (const auto& entry : fs::recursive_directory_iterator(ES6MIGRATE_FIXTURES)) {
    if (entry.is_regular_file() && entry.path().extension() == ".js") out.push_back(entry.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

CliRun run_shell(const std::string& command) {
  CliRun run;
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return run;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) run.output.append(buf.data(), n);
  int status = pclose(pipe);
  run.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return run;
}

CliRun run_cli(const std::string& args) { return run_shell(std::string(ES6MIGRATE_BIN) + " " + args); }

std::string temp_dir(const std::string& tag) {
  static std::mt19937_64 rng(std::random_device{}());
  fs::path p = fs::temp_directory_path() / ("es6migrate-" + tag + "-" + std::to_string(rng()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

std::vector<std::pair<std::string, std::string>> read_tree(const std::string& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file()) {
      out.push_back({fs::relative(entry.path(), dir).string(), read_file(entry.path().string())});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string find_node() {
  CliRun r = run_shell("command -v node");
  if (r.exit_code != 0) return {};
  std::string path = r.output;
  while (!path.empty() && (path.back() == '\n' || path.back() == '\r')) path.pop_back();
  return path;
}

void write_module_tree(const std::string& dir, const std::vector<OutputFile>& files) {
  for (const auto& f : files) {
    fs::path p = fs::path(dir) / f.path;
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << f.text;
  }
  std::ofstream(fs::path(dir) / "package.json") << "{\"type\": \"module\"}\n";
}

}  // namespace es6migrate::testing
