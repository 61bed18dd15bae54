#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "es6migrate/frontend.hpp"

namespace es6migrate {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Finds `<script` (case-insensitive) followed by whitespace, `>` or `/`.
std::size_t find_script_open(const std::string& lowered, std::size_t from) {
  for (;;) {
    std::size_t at = lowered.find("<script", from);
    if (at == std::string::npos) return at;
    std::size_t after = at + 7;
    if (after >= lowered.size()) return std::string::npos;
    char c = lowered[after];
    if (c == '>' || c == '/' || std::isspace(static_cast<unsigned char>(c))) return at;
    from = after;
  }
}

// Parses `name=value` pairs from the inside of a start tag.
std::vector<std::pair<std::string, std::string>> parse_attributes(std::string_view tag) {
  std::vector<std::pair<std::string, std::string>> attrs;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < tag.size() && std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
  };
  while (i < tag.size()) {
    skip_ws();
    std::size_t name_start = i;
    while (i < tag.size() && !std::isspace(static_cast<unsigned char>(tag[i])) && tag[i] != '=' &&
           tag[i] != '/') {
      ++i;
    }
    std::string name = lower(tag.substr(name_start, i - name_start));
    if (name.empty()) {
      ++i;
      continue;
    }
    skip_ws();
    std::string value;
    if (i < tag.size() && tag[i] == '=') {
      ++i;
      skip_ws();
      if (i < tag.size() && (tag[i] == '"' || tag[i] == '\'')) {
        char q = tag[i++];
        std::size_t end = tag.find(q, i);
        if (end == std::string_view::npos) end = tag.size();
        value = std::string(tag.substr(i, end - i));
        i = end + 1;
      } else {
        std::size_t start = i;
        while (i < tag.size() && !std::isspace(static_cast<unsigned char>(tag[i]))) ++i;
        value = std::string(tag.substr(start, i - start));
      }
    }
    attrs.emplace_back(std::move(name), std::move(value));
  }
  return attrs;
}

bool is_javascript_type(const std::string& type) {
  std::string t = lower(type);
  return t.empty() || t == "text/javascript" || t == "application/javascript" ||
         t == "application/x-javascript" || t == "text/ecmascript" || t == "module";
}

bool is_external_url(const std::string& src) {
  std::string s = lower(src);
  return s.rfind("//", 0) == 0 || s.find("://") != std::string::npos || s.rfind("data:", 0) == 0;
}

std::string page_stem(std::string_view page_path) {
  std::size_t slash = page_path.rfind('/');
  std::string_view name = slash == std::string_view::npos ? page_path : page_path.substr(slash + 1);
  std::size_t dot = name.rfind('.');
  return std::string(dot == std::string_view::npos || dot == 0 ? name : name.substr(0, dot));
}

}  // namespace

std::string normalize_path(std::string_view path) {
  bool absolute = !path.empty() && path.front() == '/';
  std::vector<std::string> parts;
  std::size_t i = 0;
  while (i <= path.size()) {
    std::size_t next = path.find('/', i);
    if (next == std::string_view::npos) next = path.size();
    std::string_view part = path.substr(i, next - i);
    if (part == "..") {
      if (!parts.empty() && parts.back() != "..") {
        parts.pop_back();
      } else if (!absolute) {
        parts.emplace_back("..");
      }
    } else if (!part.empty() && part != ".") {
      parts.emplace_back(part);
    }
    i = next + 1;
  }
  std::string out = absolute ? "/" : "";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) out += "/";
    out += parts[k];
  }
  if (out.empty()) return ".";
  return out;
}

std::string parent_directory(std::string_view path) {
  std::string norm = normalize_path(path);
  std::size_t slash = norm.rfind('/');
  if (slash == std::string::npos) return "";
  if (slash == 0) return "/";
  return norm.substr(0, slash);
}

std::string join_path(std::string_view dir, std::string_view rel) {
  if (!rel.empty() && rel.front() == '/') return normalize_path(rel);
  if (dir.empty() || dir == ".") return normalize_path(rel);
  return normalize_path(std::string(dir) + "/" + std::string(rel));
}

ExtractedScripts extract_scripts(std::string_view html_text, std::string_view page_path,
                                 const ScriptResolver& resolver) {
  ExtractedScripts result;
  std::string html(html_text);
  std::string lowered = lower(html_text);
  std::string page(page_path);
  std::string dir = parent_directory(page_path);
  std::string stem = page_stem(page_path);
  std::size_t inline_count = 0;
  std::size_t load_index = 0;

  std::size_t pos = 0;
  for (;;) {
    std::size_t open = find_script_open(lowered, pos);
    if (open == std::string::npos) break;
    std::size_t tag_end = lowered.find('>', open);
    if (tag_end == std::string::npos) break;
    bool self_closing = tag_end > open && html[tag_end - 1] == '/';
    std::string_view inner(html.data() + open + 7, tag_end - open - 7 - (self_closing ? 1 : 0));
    auto attrs = parse_attributes(inner);

    std::size_t body_start = tag_end + 1;
    std::size_t close = self_closing ? std::string::npos : lowered.find("</script", body_start);
    std::size_t body_end = close == std::string::npos ? body_start : close;
    pos = close == std::string::npos ? body_start : lowered.find('>', close);
    pos = pos == std::string::npos ? html.size() : pos + 1;

    std::string type, src;
    bool has_src = false;
    for (const auto& [name, value] : attrs) {
      if (name == "type") type = value;
      if (name == "src") {
        src = value;
        has_src = true;
      }
    }
    if (!is_javascript_type(type)) continue;

    if (has_src) {
      if (is_external_url(src)) {
        result.skipped.push_back(page + ": external script '" + src + "' cannot be analyzed");
        continue;
      }
      std::optional<std::string> resolved =
          resolver ? resolver(page, src) : std::optional<std::string>(join_path(dir, src));
      if (!resolved) {
        result.skipped.push_back(page + ": script '" + src + "' not found");
        continue;
      }
      SourceFile f;
      f.path = *resolved;
      f.origin = Origin::HtmlLinked;
      f.load_index = load_index++;
      f.page = page;
      result.scripts.push_back(std::move(f));
      result.elements.push_back({open, pos});
    } else {
      std::string body = html.substr(body_start, body_end - body_start);
      bool blank = std::all_of(body.begin(), body.end(),
                               [](unsigned char c) { return std::isspace(c); });
      if (blank) continue;
      SourceFile f;
      f.path = join_path(dir, stem + ".inline" + std::to_string(inline_count++) + ".js");
      f.text = std::move(body);
      f.origin = Origin::HtmlInline;
      f.load_index = load_index++;
      f.page = page;
      result.scripts.push_back(std::move(f));
      result.elements.push_back({open, pos});
    }
  }
  return result;
}

}  // namespace es6migrate
