#include "lexer.hpp"

#include <array>
#include <cstdint>

namespace es6migrate::detail {

namespace {

constexpr std::array<std::string_view, 34> kKeywords = {
    "var",     "function", "return",  "if",     "else",   "for",        "in",
    "while",   "do",       "break",   "continue", "throw", "try",       "catch",
    "finally", "switch",   "case",    "default", "new",   "delete",     "typeof",
    "void",    "instanceof", "this",  "null",   "true",   "false",      "import",
    "export",  "with",     "debugger", "const", "let",    "class"};

// Longest match first.
constexpr std::array<std::string_view, 50> kPunctuators = {
    ">>>=", "===", "!==", ">>>", "<<=", ">>=", "...", "&&", "||", "==", "!=", "<=", ">=",
    "++",   "--",  "+=",  "-=",  "*=",  "/=",  "%=",  "&=", "|=", "^=", "<<", ">>", "=>",
    "{",    "}",   "(",   ")",   "[",   "]",   ";",   ",",  "<",  ">",  "+",  "-",  "*",
    "/",    "%",   "&",   "|",   "^",   "!",   "~",   "?",  ":",  "=", "."};

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      bool newline = skip_trivia();
      Token tok;
      tok.newline_before = newline;
      if (pos_ >= src_.size()) {
        tok.kind = TokenKind::End;
        tok.span = {pos_, pos_};
        out.push_back(tok);
        return out;
      }
      std::size_t start = pos_;
      char c = src_[pos_];
      if (is_identifier_start(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && is_identifier_part(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok.text = std::string(src_.substr(start, pos_ - start));
        tok.kind = is_keyword(tok.text) ? TokenKind::Keyword : TokenKind::Identifier;
      } else if (c == '\\') {
        fail(start, "unicode escapes in identifiers are not supported");
      } else if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
        lex_number();
        tok.kind = TokenKind::Number;
        tok.text = std::string(src_.substr(start, pos_ - start));
      } else if (c == '"' || c == '\'') {
        tok.kind = TokenKind::String;
        tok.text = lex_string(c);
      } else if (c == '`') {
        fail(start, "template literals are not supported");
      } else if (c == '/' && regex_allowed(out)) {
        lex_regex();
        tok.kind = TokenKind::Regex;
        tok.text = std::string(src_.substr(start, pos_ - start));
      } else {
        bool matched = false;
        for (auto p : kPunctuators) {
          if (src_.substr(pos_, p.size()) == p) {
            pos_ += p.size();
            tok.kind = TokenKind::Punctuator;
            tok.text = std::string(p);
            matched = true;
            break;
          }
        }
        if (!matched) fail(start, std::string("unexpected character '") + c + "'");
      }
      tok.span = {start, pos_};
      out.push_back(std::move(tok));
    }
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg) {
    throw SyntaxError({at, at + 1}, msg);
  }

  static bool regex_allowed(const std::vector<Token>& out) {
    if (out.empty()) return true;
    const Token& prev = out.back();
    switch (prev.kind) {
      case TokenKind::Identifier:
      case TokenKind::Number:
      case TokenKind::String:
      case TokenKind::Regex:
        return false;
      case TokenKind::Keyword:
        return !(prev.text == "this" || prev.text == "null" || prev.text == "true" ||
                 prev.text == "false");
      case TokenKind::Punctuator:
        return !(prev.text == ")" || prev.text == "]");
      case TokenKind::End:
        return true;
    }
    return true;
  }

  // Returns true if a line terminator was skipped.
  bool skip_trivia() {
    bool newline = false;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n' || c == '\r') {
        newline = true;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\f' || c == '\v') {
        ++pos_;
      } else if (static_cast<unsigned char>(c) == 0xEF && src_.substr(pos_, 3) == "\xEF\xBB\xBF") {
        pos_ += 3;  // BOM
      } else if (static_cast<unsigned char>(c) == 0xC2 && pos_ + 1 < src_.size() &&
                 static_cast<unsigned char>(src_[pos_ + 1]) == 0xA0) {
        pos_ += 2;  // NBSP
      } else if (src_.substr(pos_, 2) == "//") {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (src_.substr(pos_, 2) == "/*") {
        std::size_t end = src_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) fail(pos_, "unterminated comment");
        if (src_.substr(pos_, end - pos_).find('\n') != std::string_view::npos) newline = true;
        pos_ = end + 2;
      } else {
        break;
      }
    }
    return newline;
  }

  void lex_number() {
    if (src_[pos_] == '0' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X')) {
      pos_ += 2;
      std::size_t digits = pos_;
      while (pos_ < src_.size() && hex_value(src_[pos_]) >= 0) ++pos_;
      if (digits == pos_) fail(pos_, "malformed hex literal");
    } else {
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      }
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        ++pos_;
        if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (digits == pos_) fail(pos_, "malformed exponent");
      }
    }
    if (pos_ < src_.size() && is_identifier_start(static_cast<unsigned char>(src_[pos_]))) {
      fail(pos_, "identifier directly after number");
    }
  }

  std::string lex_string(char quote) {
    std::size_t start = pos_;
    ++pos_;
    std::string value;
    for (;;) {
      if (pos_ >= src_.size()) fail(start, "unterminated string literal");
      char c = src_[pos_];
      if (c == quote) {
        ++pos_;
        return value;
      }
      if (c == '\n' || c == '\r') fail(start, "unterminated string literal");
      if (c != '\\') {
        value.push_back(c);
        ++pos_;
        continue;
      }
      ++pos_;
      if (pos_ >= src_.size()) fail(start, "unterminated string literal");
      char e = src_[pos_++];
      switch (e) {
        case 'n': value.push_back('\n'); break;
        case 't': value.push_back('\t'); break;
        case 'r': value.push_back('\r'); break;
        case 'b': value.push_back('\b'); break;
        case 'f': value.push_back('\f'); break;
        case 'v': value.push_back('\v'); break;
        case '0':
          if (pos_ < src_.size() && is_digit(src_[pos_])) fail(pos_, "octal escapes are not supported");
          value.push_back('\0');
          break;
        case 'x': {
          if (pos_ + 2 > src_.size()) fail(pos_, "malformed \\x escape");
          int hi = hex_value(src_[pos_]), lo = hex_value(src_[pos_ + 1]);
          if (hi < 0 || lo < 0) fail(pos_, "malformed \\x escape");
          append_utf8(value, static_cast<std::uint32_t>(hi * 16 + lo));
          pos_ += 2;
          break;
        }
        case 'u': {
          if (pos_ + 4 > src_.size()) fail(pos_, "malformed \\u escape");
          std::uint32_t cp = 0;
          for (int i = 0; i < 4; ++i) {
            int h = hex_value(src_[pos_ + i]);
            if (h < 0) fail(pos_, "malformed \\u escape");
            cp = cp * 16 + static_cast<std::uint32_t>(h);
          }
          append_utf8(value, cp);
          pos_ += 4;
          break;
        }
        case '\r':
          if (pos_ < src_.size() && src_[pos_] == '\n') ++pos_;
          break;
        case '\n':
          break;
        default:
          if (is_digit(e)) fail(pos_ - 1, "octal escapes are not supported");
          value.push_back(e);
      }
    }
  }

  void lex_regex() {
    std::size_t start = pos_;
    ++pos_;
    bool in_class = false;
    for (;;) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') fail(start, "unterminated regular expression");
      char c = src_[pos_++];
      if (c == '\\') {
        if (pos_ >= src_.size()) fail(start, "unterminated regular expression");
        ++pos_;
      } else if (c == '[') {
        in_class = true;
      } else if (c == ']') {
        in_class = false;
      } else if (c == '/' && !in_class) {
        break;
      }
    }
    while (pos_ < src_.size() && is_identifier_part(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

bool is_identifier_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_identifier_part(unsigned char c) { return is_identifier_start(c) || (c >= '0' && c <= '9'); }

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

}  // namespace es6migrate::detail
