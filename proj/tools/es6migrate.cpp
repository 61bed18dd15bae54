#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "es6migrate/analysis.hpp"
#include "es6migrate/metrics.hpp"
#include "es6migrate/transform.hpp"

namespace fs = std::filesystem;
using namespace es6migrate;

namespace {

constexpr int kOk = 0;
constexpr int kIoError = 1;
constexpr int kAbandoned = 2;
constexpr int kModuleFailed = 3;

struct Config {
  std::string root = ".";
  std::string format = "auto";
  std::string amd_base;
  std::string out_dir;
  bool in_place = false;
  bool library = false;
  std::string tests_dir;
  bool lenient_nesting = false;
  std::vector<std::string> excludes;
  std::string after_dir;
};

class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw CliError("cannot write " + path.string());
}

LoadOptions load_options(const Config& c) {
  LoadOptions o;
  for (const auto& e : c.excludes) o.excludes.push_back(e);
  o.tests_dir = c.tests_dir;
  return o;
}

AnalysisOptions analysis_options(const Config& c) {
  AnalysisOptions o;
  if (c.format == "none") o.forced_format = ModuleFormat::NonModular;
  if (c.format == "amd") o.forced_format = ModuleFormat::AMD;
  if (c.format == "cjs") o.forced_format = ModuleFormat::CJS;
  o.amd_base = c.amd_base;
  o.lenient_nesting = c.lenient_nesting;
  o.library_mode = c.library;
  return o;
}

Project load(const Config& c, const std::string& root) {
  Project project = load_project(root, load_options(c));
  if (c.format != "auto") return project;
  std::vector<std::string> amd, cjs;
  for (const auto& p : project.programs) {
    ModuleFormat f = detect_format(p);
    if (f == ModuleFormat::AMD) amd.push_back(p.path());
    if (f == ModuleFormat::CJS) cjs.push_back(p.path());
  }
  if (!amd.empty() && !cjs.empty()) {
    throw CliError("project mixes AMD (" + amd.front() + ") and CommonJS (" + cjs.front() +
                   ") modules; pass --format to choose one");
  }
  return project;
}

std::optional<ModuleFormat> census_format(const Config& c) { return analysis_options(c).forced_format; }

int cmd_analyze(const Config& c) {
  Project project = load(c, c.root);
  std::string mdg_text, violations_text;
  int code = kOk;
  try {
    ProjectAnalysis analysis = analyze_project(project, analysis_options(c));
    mdg_text = serialize(analysis.mdg, 2) + "\n";
    violations_text = violations_json(analysis.violations);
  } catch (const RefactoringAbandoned& e) {
    spdlog::error("{}", e.what());
    mdg_text = serialize(Mdg{}, 2) + "\n";
    violations_text = violations_json(e.violations());
    code = kAbandoned;
  }
  if (c.out_dir.empty()) {
    std::cout << mdg_text << violations_text;
  } else {
    write_file(fs::path(c.out_dir) / "mdg.json", mdg_text);
    write_file(fs::path(c.out_dir) / "violations.json", violations_text);
  }
  return code;
}

/// Mirrors every regular file of `root` under `out`, skipping `out` itself
/// when it is nested in `root`.
void copy_tree(const fs::path& root, const fs::path& out) {
  fs::path out_abs = fs::weakly_canonical(out);
  for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator(); ++it) {
    if (fs::weakly_canonical(it->path()) == out_abs) {
      it.disable_recursion_pending();
      continue;
    }
    if (!it->is_regular_file()) continue;
    fs::path dest = out / fs::relative(it->path(), root);
    fs::create_directories(dest.parent_path());
    fs::copy_file(it->path(), dest, fs::copy_options::overwrite_existing);
  }
}

int cmd_refactor(const Config& c) {
  if (c.out_dir.empty() == !c.in_place) throw CliError("refactor needs exactly one of --out or --in-place");
  Project project = load(c, c.root);
  ProjectAnalysis analysis;
  try {
    analysis = analyze_project(project, analysis_options(c));
  } catch (const RefactoringAbandoned& e) {
    spdlog::error("{}", e.what());
    std::cerr << violations_json(e.violations());
    return kAbandoned;
  }
  RefactorResult result = refactor_project(project, analysis);
  fs::path target = c.in_place ? fs::path(c.root) : fs::path(c.out_dir);
  if (!c.in_place) copy_tree(c.root, target);
  for (const auto& f : result.files) {
    bool is_js = f.path.size() > 3 && f.path.compare(f.path.size() - 3, 3, ".js") == 0;
    if (c.in_place && !is_js) {
      spdlog::warn("{}: not rewritten in place; load its refactored scripts with type=\"module\"", f.path);
      continue;
    }
    write_file(target / f.path, f.text);
  }
  std::string report = report_json(result);
  if (c.in_place) {
    std::cout << report;
  } else {
    write_file(target / "es6migrate-report.json", report);
  }
  for (const auto& m : result.modules) {
    if (m.status == ModuleStatus::Failed) spdlog::error("{}: {}", m.path, m.message);
  }
  return result.any_failed() ? kModuleFailed : kOk;
}

Project js_only(const std::vector<OutputFile>& files) {
  std::vector<SourceFile> sources;
  for (const auto& f : files) {
    if (f.path.size() > 3 && f.path.compare(f.path.size() - 3, 3, ".js") == 0) {
      sources.push_back({f.path, f.text, Origin::JsFile, std::nullopt, {}});
    }
  }
  return make_project(sources);
}

int cmd_metrics(const Config& c) {
  Project before = load(c, c.root);
  ProjectAnalysis analysis;
  try {
    analysis = analyze_project(before, analysis_options(c));
  } catch (const RefactoringAbandoned& e) {
    spdlog::error("{}", e.what());
    return kIoError;
  }
  Project after;
  if (!c.after_dir.empty()) {
    after = load_project(c.after_dir, load_options(c));
  } else {
    after = js_only(refactor_project(before, analysis).files);
  }
  for (const auto& d : after.load_errors) spdlog::error("{}: {}", d.path, d.message);
  if (!after.load_errors.empty()) return kIoError;

  // Only modules that took part in the migration are compared.
  std::set<std::string> migrated;
  for (const auto& m : analysis.modules) {
    if (!m.abandoned && m.format != ModuleFormat::NonModular) migrated.insert(m.id.path);
  }
  CouplingGraph g5 = es5_coupling(analysis);
  CouplingGraph g6 = es6_coupling(after);
  g5.modules = migrated;
  std::erase_if(g6.modules, [&](const std::string& path) { return !migrated.count(path); });
  ProjectMetrics pb = compute_project_metrics(g5);
  ProjectMetrics pa = compute_project_metrics(g6);
  MetricsDelta delta;
  try {
    delta = compare_snapshots(pb, pa);
  } catch (const MismatchedModuleSets& e) {
    spdlog::error("{}", e.what());
    return kIoError;
  }
  std::string text = metrics_json(pb, pa, delta);
  if (c.out_dir.empty()) {
    std::cout << text;
  } else {
    write_file(fs::path(c.out_dir) / "metrics.json", text);
  }
  return kOk;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

int cmd_classify(const Config& c) {
  Project project = load_project(c.root, load_options(c));
  std::string census_text = census_json(census(project, census_format(c)));

  std::ostringstream csv;
  csv << "path,format\n";
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& p : project.programs) {
    if (!p.file->from_html()) files.push_back({p.path(), p.file->text});
  }
  // Unparsable files still get a format label.
  for (const auto& d : project.load_errors) {
    std::ifstream in(fs::path(c.root) / d.path, std::ios::binary);
    if (!in) continue;
    std::ostringstream buf;
    buf << in.rdbuf();
    files.push_back({d.path, buf.str()});
  }
  std::sort(files.begin(), files.end());
  for (const auto& [path, text] : files) csv << csv_field(path) << ',' << to_string(classify_file_format(text)) << '\n';

  if (c.out_dir.empty()) {
    std::cout << census_text << csv.str();
  } else {
    write_file(fs::path(c.out_dir) / "census.json", census_text);
    write_file(fs::path(c.out_dir) / "formats.csv", csv.str());
  }
  return kOk;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("es6migrate");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("%^%l%$: %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("ES6MIGRATE_LOG")) spdlog::cfg::helpers::load_levels(env);
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Migrates AMD/CommonJS JavaScript projects to ES6 named imports and exports."};
  app.require_subcommand(1);
  Config c;

  auto add_common = [&c](CLI::App* sub) {
    sub->add_option("--root", c.root, "Project directory")->check(CLI::ExistingDirectory);
    sub->add_option("--format", c.format, "Module format")
        ->check(CLI::IsMember({"auto", "none", "amd", "cjs"}));
    sub->add_option("--amd-base", c.amd_base, "Base directory for AMD module ids");
    sub->add_option("--exclude", c.excludes, "Extra exclude glob (repeatable)");
    sub->add_option("--tests", c.tests_dir, "Test directory whose files join as clients");
    sub->add_flag("--library", c.library, "Export every feature");
    sub->add_flag("--lenient-nesting", c.lenient_nesting, "Hoist nested requires with a warning");
  };

  auto* analyze = app.add_subcommand("analyze", "Build the module dependence graph");
  add_common(analyze);
  analyze->add_option("--out", c.out_dir, "Directory for mdg.json and violations.json");

  auto* refactor = app.add_subcommand("refactor", "Rewrite the project as ES6 modules");
  add_common(refactor);
  auto* out_opt = refactor->add_option("--out", c.out_dir, "Output directory");
  auto* in_place = refactor->add_flag("--in-place", c.in_place, "Rewrite .js files in place");
  out_opt->excludes(in_place);

  auto* metrics = app.add_subcommand("metrics", "Coupling metrics before and after migration");
  add_common(metrics);
  metrics->add_option("--after", c.after_dir, "Migrated tree (default: migrate in memory)")
      ->check(CLI::ExistingDirectory);
  metrics->add_option("--out", c.out_dir, "Directory for metrics.json");

  auto* classify = app.add_subcommand("classify", "Module-object census and file format labels");
  add_common(classify);
  classify->add_option("--out", c.out_dir, "Directory for census.json and formats.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(c);
    if (refactor->parsed()) return cmd_refactor(c);
    if (metrics->parsed()) return cmd_metrics(c);
    if (classify->parsed()) return cmd_classify(c);
  } catch (const CliError& e) {
    spdlog::error("{}", e.what());
  } catch (const ProjectLoadError& e) {
    spdlog::error("{}", e.what());
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}", e.what());
  }
  return kIoError;
}
