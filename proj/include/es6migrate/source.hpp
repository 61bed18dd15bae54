#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace es6migrate {

/// Half-open byte range [begin, end) into a source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool contains(const Span& other) const { return begin <= other.begin && other.end <= end; }
  friend bool operator==(const Span&, const Span&) = default;
};

enum class Origin { JsFile, HtmlInline, HtmlLinked };

const char* to_string(Origin origin);

/// One unit of JavaScript source handed to the parser.
///
/// `load_index` is set only for scripts discovered through an HTML page and
/// records their position in the page's load order.
struct SourceFile {
  std::string path;
  std::string text;
  Origin origin = Origin::JsFile;
  std::optional<std::size_t> load_index;
  /// Page the script was found in (HTML origins only).
  std::string page;

  bool from_html() const { return origin != Origin::JsFile; }
};

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(Span span, const std::string& message)
      : std::runtime_error(message), span_(span) {}
  Span span() const { return span_; }

 private:
  Span span_;
};

}  // namespace es6migrate
