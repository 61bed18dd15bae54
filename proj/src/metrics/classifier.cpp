#include <algorithm>
#include <regex>

#include "es6migrate/metrics.hpp"

namespace es6migrate {

namespace {

/// Replaces string and template contents with `_`, keeping the quotes, so
/// keywords inside literals do not match.
std::string mask_strings(std::string_view text) {
  std::string out(text);
  char quote = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    char c = out[i];
    if (quote) {
      if (c == '\\' && i + 1 < out.size()) {
        out[i] = '_';
        if (out[i + 1] != '\n') out[i + 1] = '_';
        ++i;
      } else if (c == quote) {
        quote = 0;
      } else if (c == '\n' && quote != '`') {
        quote = 0;
      } else if (c != '\n') {
        out[i] = '_';
      }
    } else if (c == '"' || c == '\'' || c == '`') {
      quote = c;
    }
  }
  return out;
}

struct Compiled {
  FileFormat format;
  std::regex re;
  bool per_line;
};

const std::vector<Compiled>& compiled() {
  static const std::vector<Compiled> patterns = [] {
    std::vector<Compiled> out;
    for (const auto& p : format_patterns()) out.push_back({p.format, std::regex(p.regex), p.per_line});
    return out;
  }();
  return patterns;
}

}  // namespace

const char* to_string(FileFormat f) {
  switch (f) {
    case FileFormat::AMD: return "AMD";
    case FileFormat::CJS: return "CJS";
    case FileFormat::ES6: return "ES6";
    case FileFormat::Other: return "Other";
  }
  return "?";
}

const std::vector<FormatPattern>& format_patterns() {
  static const std::vector<FormatPattern> patterns = {
      {FileFormat::ES6, R"(^\s*import\s*(?:[\w$*{][^;]*\bfrom\s*)?["'])", true},
      {FileFormat::ES6, R"(^\s*import\s*\{)", true},
      {FileFormat::ES6, R"(^\s*export\s+(?:default\b|var\b|let\b|const\b|function\b|class\b|async\b))", true},
      {FileFormat::ES6, R"(^\s*export\s*(?:\{|\*))", true},
      {FileFormat::AMD, R"((?:^|[^.\w$])define\s*\(\s*(?:["'][^"']*["']\s*,\s*)?(?:\[|function\b|\{))"},
      {FileFormat::AMD, R"((?:^|[^.\w$])(?:require|requirejs)\s*\(\s*\[)"},
      {FileFormat::CJS, R"((?:^|[^.\w$])require\s*\(\s*["'`])"},
      {FileFormat::CJS, R"((?:^|[^.\w$])module\.exports\b)"},
      {FileFormat::CJS, R"((?:^|[^.\w$])exports\.[\w$]+\s*=[^=])"},
  };
  return patterns;
}

std::string strip_comments(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  char quote = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quote) {
      out += c;
      if (c == '\\' && i + 1 < text.size()) {
        out += text[++i];
      } else if (c == quote || (c == '\n' && quote != '`')) {
        quote = 0;
      }
      continue;
    }
    if (c == '"' || c == '\'' || c == '`') {
      quote = c;
      out += c;
    } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i < text.size()) out += '\n';
    } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
      i += 2;
      while (i < text.size() && !(text[i] == '*' && i + 1 < text.size() && text[i + 1] == '/')) {
        if (text[i] == '\n') out += '\n';
        ++i;
      }
      ++i;
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

FileFormat classify_file_format(std::string_view text) {
  std::string clean = mask_strings(strip_comments(text));
  std::string folded = clean;
  std::replace(folded.begin(), folded.end(), '\n', ' ');
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= clean.size()) {
    std::size_t end = clean.find('\n', start);
    if (end == std::string::npos) end = clean.size();
    lines.push_back(clean.substr(start, end - start));
    start = end + 1;
  }
  bool seen[3] = {false, false, false};  // ES6, AMD, CJS
  for (const auto& p : compiled()) {
    int slot = p.format == FileFormat::ES6 ? 0 : p.format == FileFormat::AMD ? 1 : 2;
    if (seen[slot]) continue;
    if (p.per_line) {
      seen[slot] = std::any_of(lines.begin(), lines.end(), [&](const std::string& l) { return std::regex_search(l, p.re); });
    } else {
      seen[slot] = std::regex_search(folded, p.re);
    }
  }
  if (seen[0]) return FileFormat::ES6;
  if (seen[1]) return FileFormat::AMD;
  if (seen[2]) return FileFormat::CJS;
  return FileFormat::Other;
}

}  // namespace es6migrate
