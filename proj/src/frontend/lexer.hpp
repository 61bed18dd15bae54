#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "es6migrate/source.hpp"

namespace es6migrate::detail {

enum class TokenKind { Identifier, Keyword, Number, String, Regex, Punctuator, End };

struct Token {
  TokenKind kind = TokenKind::End;
  /// Raw text, except for strings where this is the decoded value.
  std::string text;
  Span span;
  bool newline_before = false;

  bool is_punct(std::string_view p) const { return kind == TokenKind::Punctuator && text == p; }
  bool is_keyword(std::string_view k) const { return kind == TokenKind::Keyword && text == k; }
};

/// Tokenizes a whole source text up front. Regex literals are recognized
/// from the previous significant token.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word);
bool is_identifier_start(unsigned char c);
bool is_identifier_part(unsigned char c);

}  // namespace es6migrate::detail
