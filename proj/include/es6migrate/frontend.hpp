#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "es6migrate/ast.hpp"
#include "es6migrate/source.hpp"

namespace es6migrate {

/// Parses the supported ES5 subset plus the ES6 import/export forms this
/// tool emits. Throws SyntaxError on anything else.
Program parse(const SourceFile& source);
Program parse(std::string_view text, std::string path = "<input>");

/// Parses a single expression (test and tooling helper).
NodePtr parse_expression(std::string_view text);

class PrintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic printer: one statement per line, two-space indent,
/// double-quoted strings, semicolon-terminated statements. Comments are not
/// preserved.
std::string print(const Program& program);
std::string print(const Node& node);

/// Resolves a script `src` attribute against the page, returning the
/// project-relative path when the target exists.
using ScriptResolver = std::function<std::optional<std::string>(const std::string& page_path,
                                                                 const std::string& src)>;

struct ExtractedScripts {
  std::vector<SourceFile> scripts;
  /// Byte range of each script's element (`<script ...>...</script>`).
  std::vector<Span> elements;
  /// Human-readable notes for `src` attributes that were skipped.
  std::vector<std::string> skipped;
};

/// Tag-level scan for `<script>` elements in document order.
///
/// Linked scripts carry the resolved relative path and an empty text (the
/// caller loads the file); inline scripts carry their body verbatim and a
/// synthetic path `<page dir>/<page stem>.inline<k>.js`. When `resolver` is
/// empty, `src` paths are resolved lexically against the page directory.
ExtractedScripts extract_scripts(std::string_view html_text, std::string_view page_path,
                                 const ScriptResolver& resolver = {});

/// Lexical path helpers shared by the frontend and the project loader.
std::string normalize_path(std::string_view path);
std::string parent_directory(std::string_view path);
std::string join_path(std::string_view dir, std::string_view rel);

}  // namespace es6migrate
