#include <fnmatch.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "es6migrate/analysis.hpp"
#include "es6migrate/frontend.hpp"

namespace es6migrate {

namespace fs = std::filesystem;

bool matches_glob(std::string_view pattern, std::string_view path) {
  std::string pat(pattern), p(path);
  if (fnmatch(pat.c_str(), p.c_str(), 0) == 0) return true;
  return pat.rfind("**/", 0) == 0 && fnmatch(pat.c_str(), ("/" + p).c_str(), 0) == 0;
}

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProjectLoadError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void add_program(Project& project, SourceFile file) {
  try {
    project.programs.push_back(parse(file));
  } catch (const SyntaxError& e) {
    spdlog::warn("{}: {} (file excluded)", file.path, e.what());
    project.load_errors.push_back({Diagnostic::Level::Error, file.path, e.span(), e.what()});
  }
}

}  // namespace

Project make_project(const std::vector<SourceFile>& files) {
  Project project;
  for (const auto& f : files) add_program(project, f);
  return project;
}

Project load_project(const std::string& root, const LoadOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw ProjectLoadError("root is not a directory: " + root);
  Project project;
  project.root = root;
  std::string tests;
  if (!options.tests_dir.empty()) {
    tests = normalize_path(options.tests_dir);
    if (tests.empty() || tests == "." || tests.rfind("..", 0) == 0 || tests[0] == '/') {
      throw ProjectLoadError("tests directory must lie inside the project root: " + options.tests_dir);
    }
  }

  std::vector<std::string> js, html;
  for (auto it = fs::recursive_directory_iterator(root, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (!it->is_regular_file()) continue;
    std::string rel = fs::relative(it->path(), root).generic_string();
    if (std::any_of(options.excludes.begin(), options.excludes.end(),
                    [&](const std::string& g) { return matches_glob(g, rel); })) {
      continue;
    }
    if (ends_with(rel, ".js")) js.push_back(rel);
    if (ends_with(rel, ".html") || ends_with(rel, ".htm")) html.push_back(rel);
  }
  if (ec) throw ProjectLoadError("cannot list " + root + ": " + ec.message());
  std::sort(js.begin(), js.end());
  std::sort(html.begin(), html.end());

  for (const auto& rel : js) {
    add_program(project, {rel, read_file(fs::path(root) / rel), Origin::JsFile, std::nullopt, {}});
    if (!tests.empty() && rel.rfind(tests + "/", 0) == 0) project.test_paths.insert(rel);
  }
  for (const auto& rel : html) {
    HtmlPage page{rel, read_file(fs::path(root) / rel), {}, {}};
    auto extracted = extract_scripts(page.text, rel, [&](const std::string& page_path, const std::string& src) {
      std::string p = join_path(parent_directory(page_path), src);
      return std::binary_search(js.begin(), js.end(), p) ? std::optional<std::string>(p) : std::nullopt;
    });
    for (const auto& note : extracted.skipped) spdlog::info("{}", note);
    page.elements = extracted.elements;
    for (auto& s : extracted.scripts) {
      page.scripts.push_back(s.path);
      if (s.origin == Origin::HtmlInline) add_program(project, std::move(s));
    }
    project.pages.push_back(std::move(page));
  }
  std::sort(project.programs.begin(), project.programs.end(),
            [](const Program& a, const Program& b) { return a.path() < b.path(); });
  return project;
}

}  // namespace es6migrate
