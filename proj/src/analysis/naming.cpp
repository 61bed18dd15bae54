#include <cctype>

#include "es6migrate/analysis.hpp"
#include "es6migrate/frontend.hpp"

namespace es6migrate {

namespace {

bool ident_char(unsigned char c, bool first) {
  if (std::isalpha(c) || c == '_' || c == '$' || c >= 0x80) return true;
  return !first && std::isdigit(c);
}

bool has_js_extension(std::string_view p) {
  return p.size() > 3 && p.substr(p.size() - 3) == ".js";
}

}  // namespace

std::string sanitize_identifier(std::string_view text) {
  std::string out;
  for (char c : text) out.push_back(ident_char(static_cast<unsigned char>(c), false) ? c : '_');
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out.insert(out.begin(), '_');
  return out;
}

std::string file_stem_identifier(std::string_view path) {
  std::size_t slash = path.rfind('/');
  std::string_view name = slash == std::string_view::npos ? path : path.substr(slash + 1);
  std::size_t dot = name.rfind('.');
  if (dot != std::string_view::npos && dot > 0) name = name.substr(0, dot);
  return sanitize_identifier(name);
}

std::string module_object_placeholder(std::string_view path) { return "mod_" + file_stem_identifier(path); }

std::vector<std::string> prefix_candidates(std::string_view path) {
  std::vector<std::string> out{file_stem_identifier(path)};
  std::string dir = parent_directory(path);
  while (!dir.empty() && dir != "." && dir != "/") {
    std::size_t slash = dir.rfind('/');
    std::string part = slash == std::string::npos ? dir : dir.substr(slash + 1);
    if (part != "..") out.push_back(sanitize_identifier(part));
    if (slash == std::string::npos) break;
    dir = dir.substr(0, slash);
  }
  return out;
}

RenamePlan choose_name(const std::string& original, std::string_view path, RenameReason reason,
                       const std::function<bool(const std::string&)>& taken, bool force_prefix) {
  RenamePlan plan{original, original, reason, {}};
  if (!force_prefix && !taken(original)) return plan;
  std::vector<std::string> chain;
  std::string candidate = original;
  for (const auto& prefix : prefix_candidates(path)) {
    chain.insert(chain.begin(), prefix);
    candidate = prefix + "_" + candidate;
    if (!taken(candidate)) {
      plan.emitted = candidate;
      plan.prefix_chain = chain;
      return plan;
    }
  }
  for (int n = 2;; ++n) {
    std::string numbered = candidate + "_" + std::to_string(n);
    if (!taken(numbered)) {
      plan.emitted = numbered;
      plan.prefix_chain = chain;
      plan.prefix_chain.push_back(std::to_string(n));
      return plan;
    }
  }
}

std::optional<std::string> resolve_cjs(const std::string& from_path, const std::string& specifier,
                                       const std::set<std::string>& project_paths) {
  bool relative = specifier.rfind("./", 0) == 0 || specifier.rfind("../", 0) == 0 ||
                  specifier == "." || specifier == "..";
  if (!relative && specifier.rfind('/', 0) != 0) return std::nullopt;
  std::string base = specifier.rfind('/', 0) == 0 ? normalize_path(specifier.substr(1))
                                                   : join_path(parent_directory(from_path), specifier);
  const std::string candidates[] = {base, base + ".js", base + "/index.js"};
  for (const auto& c : candidates) {
    if ((c == base && !has_js_extension(c))) continue;
    if (project_paths.count(c)) return c;
  }
  return std::nullopt;
}

std::optional<std::string> resolve_amd(const std::string& from_path, const std::string& id,
                                       const std::string& base, const std::set<std::string>& project_paths) {
  if (id.find('!') != std::string::npos) return std::nullopt;  // loader plugins
  std::string target;
  if (id.rfind("./", 0) == 0 || id.rfind("../", 0) == 0) {
    target = join_path(parent_directory(from_path), id);
  } else {
    target = join_path(base, id);
  }
  if (!has_js_extension(target)) target += ".js";
  if (project_paths.count(target)) return target;
  return std::nullopt;
}

}  // namespace es6migrate
