#include <memory>
#include <string>
#include <unordered_map>

#include "es6migrate/frontend.hpp"
#include "lexer.hpp"

namespace es6migrate {

namespace {

using detail::Token;
using detail::TokenKind;

int binary_precedence(const Token& t, bool no_in) {
  static const std::unordered_map<std::string, int> table = {
      {"||", 1},  {"&&", 2},  {"|", 3},   {"^", 4},   {"&", 5},  {"==", 6},
      {"!=", 6},  {"===", 6}, {"!==", 6}, {"<", 7},   {">", 7},  {"<=", 7},
      {">=", 7},  {"<<", 8},  {">>", 8},  {">>>", 8}, {"+", 9},  {"-", 9},
      {"*", 10},  {"/", 10},  {"%", 10}};
  if (t.kind == TokenKind::Punctuator) {
    auto it = table.find(t.text);
    return it == table.end() ? 0 : it->second;
  }
  if (t.kind == TokenKind::Keyword) {
    if (t.text == "instanceof") return 7;
    if (t.text == "in" && !no_in) return 7;
  }
  return 0;
}

bool is_assignment_operator(const Token& t) {
  if (t.kind != TokenKind::Punctuator) return false;
  static const char* ops[] = {"=",  "+=", "-=",  "*=",  "/=", "%=",
                              "<<=", ">>=", ">>>=", "&=", "|=", "^="};
  for (const char* op : ops) {
    if (t.text == op) return true;
  }
  return false;
}

class Parser {
 public:
  Parser(std::string_view text) : tokens_(detail::tokenize(text)) {}

  Program parse_program() {
    Program program;
    bool in_prologue = true;
    while (!at_end()) {
      NodePtr stmt = parse_statement(/*top_level=*/true);
      if (in_prologue && stmt->is(NodeKind::ExpressionStatement) &&
          stmt->children[0]->is_string_literal()) {
        program.directives.push_back(stmt->children[0]->text);
        continue;
      }
      in_prologue = false;
      program.body.push_back(std::move(stmt));
    }
    return program;
  }

  NodePtr parse_single_expression() {
    NodePtr e = parse_expression();
    if (!at_end()) fail(peek(), "unexpected token after expression");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  bool at_end() const { return peek().kind == TokenKind::End; }

  Token next() {
    Token t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    last_end_ = t.span.end;
    return t;
  }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    std::string where = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.span, msg + " at " + where);
  }

  void expect_punct(std::string_view p) {
    if (!peek().is_punct(p)) fail(peek(), "expected '" + std::string(p) + "'");
    next();
  }
  void expect_keyword(std::string_view k) {
    if (!peek().is_keyword(k)) fail(peek(), "expected '" + std::string(k) + "'");
    next();
  }
  bool eat_punct(std::string_view p) {
    if (peek().is_punct(p)) {
      next();
      return true;
    }
    return false;
  }

  void consume_semicolon() {
    if (eat_punct(";")) return;
    const Token& t = peek();
    if (t.is_punct("}") || t.kind == TokenKind::End || t.newline_before) return;
    fail(t, "expected ';'");
  }

  NodePtr node(NodeKind kind, std::size_t begin) {
    auto n = std::make_unique<Node>(kind);
    n->span = Span{begin, begin};
    return n;
  }
  NodePtr finish(NodePtr n) {
    n->span->end = last_end_;
    return n;
  }

  std::string identifier_name() {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier && t.kind != TokenKind::Keyword) {
      fail(t, "expected identifier name");
    }
    return next().text;
  }

  std::string binding_identifier() {
    const Token& t = peek();
    if (t.kind != TokenKind::Identifier) fail(t, "expected identifier");
    return next().text;
  }

  // Statements

  NodePtr parse_statement(bool top_level = false) {
    const Token& t = peek();
    std::size_t begin = t.span.begin;
    if (t.kind == TokenKind::Punctuator) {
      if (t.text == "{") return parse_block();
      if (t.text == ";") {
        next();
        return finish(node(NodeKind::Empty, begin));
      }
    }
    if (t.kind == TokenKind::Keyword) {
      const std::string& k = t.text;
      if (k == "var") {
        NodePtr decl = parse_var_declaration(false);
        consume_semicolon();
        return finish(std::move(decl));
      }
      if (k == "function") return parse_function(/*declaration=*/true);
      if (k == "return") return parse_return();
      if (k == "if") return parse_if();
      if (k == "for") return parse_for();
      if (k == "while") return parse_while();
      if (k == "do") return parse_do_while();
      if (k == "break" || k == "continue") return parse_jump();
      if (k == "throw") return parse_throw();
      if (k == "try") return parse_try();
      if (k == "switch") return parse_switch();
      if (k == "import") {
        if (!top_level) fail(t, "import declarations are only allowed at top level");
        return parse_import();
      }
      if (k == "export") {
        if (!top_level) fail(t, "export declarations are only allowed at top level");
        return parse_export();
      }
      if (k == "with" || k == "debugger" || k == "const" || k == "let" || k == "class") {
        fail(t, "unsupported statement");
      }
    }
    if (t.kind == TokenKind::Identifier && peek(1).is_punct(":")) {
      NodePtr labeled = node(NodeKind::Labeled, begin);
      labeled->text = next().text;
      next();
      labeled->children.push_back(parse_statement());
      return finish(std::move(labeled));
    }
    NodePtr stmt = node(NodeKind::ExpressionStatement, begin);
    stmt->children.push_back(parse_expression());
    consume_semicolon();
    return finish(std::move(stmt));
  }

  NodePtr parse_block() {
    NodePtr block = node(NodeKind::Block, peek().span.begin);
    expect_punct("{");
    while (!peek().is_punct("}")) {
      if (at_end()) fail(peek(), "unterminated block");
      block->children.push_back(parse_statement());
    }
    next();
    return finish(std::move(block));
  }

  NodePtr parse_var_declaration(bool no_in) {
    NodePtr decl = node(NodeKind::VarDeclaration, peek().span.begin);
    expect_keyword("var");
    do {
      NodePtr d = node(NodeKind::VarDeclarator, peek().span.begin);
      d->text = binding_identifier();
      if (eat_punct("=")) {
        d->children.push_back(parse_assignment(no_in));
      } else {
        d->children.push_back(nullptr);
      }
      decl->children.push_back(finish(std::move(d)));
    } while (eat_punct(","));
    return finish(std::move(decl));
  }

  NodePtr parse_function(bool declaration) {
    NodePtr fn = node(declaration ? NodeKind::FunctionDeclaration : NodeKind::FunctionExpression,
                      peek().span.begin);
    expect_keyword("function");
    if (peek().kind == TokenKind::Identifier) {
      fn->text = next().text;
    } else if (declaration) {
      fail(peek(), "function declaration requires a name");
    }
    expect_punct("(");
    if (!peek().is_punct(")")) {
      do {
        fn->params.push_back(binding_identifier());
      } while (eat_punct(","));
    }
    expect_punct(")");
    expect_punct("{");
    while (!peek().is_punct("}")) {
      if (at_end()) fail(peek(), "unterminated function body");
      fn->children.push_back(parse_statement());
    }
    next();
    return finish(std::move(fn));
  }

  NodePtr parse_return() {
    NodePtr ret = node(NodeKind::Return, peek().span.begin);
    next();
    const Token& t = peek();
    if (t.is_punct(";") || t.is_punct("}") || t.kind == TokenKind::End || t.newline_before) {
      ret->children.push_back(nullptr);
    } else {
      ret->children.push_back(parse_expression());
    }
    consume_semicolon();
    return finish(std::move(ret));
  }

  NodePtr parse_if() {
    NodePtr n = node(NodeKind::If, peek().span.begin);
    next();
    expect_punct("(");
    n->children.push_back(parse_expression());
    expect_punct(")");
    n->children.push_back(parse_statement());
    if (peek().is_keyword("else")) {
      next();
      n->children.push_back(parse_statement());
    } else {
      n->children.push_back(nullptr);
    }
    return finish(std::move(n));
  }

  NodePtr parse_for() {
    std::size_t begin = peek().span.begin;
    next();
    expect_punct("(");
    NodePtr init;
    if (peek().is_keyword("var")) {
      init = parse_var_declaration(/*no_in=*/true);
    } else if (!peek().is_punct(";")) {
      init = parse_expression(/*no_in=*/true);
    }
    if (init && peek().is_keyword("in")) {
      if (init->is(NodeKind::VarDeclaration) && init->children.size() != 1) {
        fail(peek(), "for-in allows a single declaration");
      }
      next();
      NodePtr n = node(NodeKind::ForIn, begin);
      n->children.push_back(std::move(init));
      n->children.push_back(parse_expression());
      expect_punct(")");
      n->children.push_back(parse_statement());
      return finish(std::move(n));
    }
    NodePtr n = node(NodeKind::For, begin);
    n->children.push_back(std::move(init));
    expect_punct(";");
    n->children.push_back(peek().is_punct(";") ? nullptr : parse_expression());
    expect_punct(";");
    n->children.push_back(peek().is_punct(")") ? nullptr : parse_expression());
    expect_punct(")");
    n->children.push_back(parse_statement());
    return finish(std::move(n));
  }

  NodePtr parse_while() {
    NodePtr n = node(NodeKind::While, peek().span.begin);
    next();
    expect_punct("(");
    n->children.push_back(parse_expression());
    expect_punct(")");
    n->children.push_back(parse_statement());
    return finish(std::move(n));
  }

  NodePtr parse_do_while() {
    NodePtr n = node(NodeKind::DoWhile, peek().span.begin);
    next();
    n->children.push_back(parse_statement());
    expect_keyword("while");
    expect_punct("(");
    n->children.push_back(parse_expression());
    expect_punct(")");
    eat_punct(";");
    return finish(std::move(n));
  }

  NodePtr parse_jump() {
    NodePtr n = node(peek().text == "break" ? NodeKind::Break : NodeKind::Continue, peek().span.begin);
    next();
    if (peek().kind == TokenKind::Identifier && !peek().newline_before) n->text = next().text;
    consume_semicolon();
    return finish(std::move(n));
  }

  NodePtr parse_throw() {
    NodePtr n = node(NodeKind::Throw, peek().span.begin);
    next();
    if (peek().newline_before) fail(peek(), "illegal newline after throw");
    n->children.push_back(parse_expression());
    consume_semicolon();
    return finish(std::move(n));
  }

  NodePtr parse_try() {
    NodePtr n = node(NodeKind::Try, peek().span.begin);
    next();
    n->children.push_back(parse_block());
    if (peek().is_keyword("catch")) {
      next();
      expect_punct("(");
      n->text = binding_identifier();
      expect_punct(")");
      n->children.push_back(parse_block());
    } else {
      n->children.push_back(nullptr);
    }
    if (peek().is_keyword("finally")) {
      next();
      n->children.push_back(parse_block());
    } else {
      n->children.push_back(nullptr);
    }
    if (!n->children[1] && !n->children[2]) fail(peek(), "try requires catch or finally");
    return finish(std::move(n));
  }

  NodePtr parse_switch() {
    NodePtr n = node(NodeKind::Switch, peek().span.begin);
    next();
    expect_punct("(");
    n->children.push_back(parse_expression());
    expect_punct(")");
    expect_punct("{");
    while (!peek().is_punct("}")) {
      NodePtr c = node(NodeKind::SwitchCase, peek().span.begin);
      if (peek().is_keyword("case")) {
        next();
        c->children.push_back(parse_expression());
      } else if (peek().is_keyword("default")) {
        next();
        c->children.push_back(nullptr);
      } else {
        fail(peek(), "expected 'case' or 'default'");
      }
      expect_punct(":");
      while (!peek().is_punct("}") && !peek().is_keyword("case") && !peek().is_keyword("default")) {
        if (at_end()) fail(peek(), "unterminated switch");
        c->children.push_back(parse_statement());
      }
      n->children.push_back(finish(std::move(c)));
    }
    next();
    return finish(std::move(n));
  }

  std::string module_specifier() {
    if (peek().kind != TokenKind::String) fail(peek(), "expected module specifier string");
    return next().text;
  }

  bool is_contextual(std::string_view word) const {
    return peek().kind == TokenKind::Identifier && peek().text == word;
  }

  NodePtr parse_import() {
    std::size_t begin = peek().span.begin;
    next();
    NodePtr n;
    if (peek().kind == TokenKind::String) {
      n = node(NodeKind::ImportSideEffect, begin);
    } else if (peek().is_punct("{")) {
      n = node(NodeKind::ImportNamed, begin);
      next();
      while (!peek().is_punct("}")) {
        std::string imported = identifier_name();
        std::string local = imported;
        if (is_contextual("as")) {
          next();
          local = binding_identifier();
        } else if (detail::is_keyword(imported)) {
          fail(peek(), "reserved word imported without alias");
        }
        n->specifiers.push_back({imported, local});
        if (!eat_punct(",")) break;
      }
      expect_punct("}");
      if (!is_contextual("from")) fail(peek(), "expected 'from'");
      next();
    } else if (peek().is_punct("*")) {
      n = node(NodeKind::ImportNamespace, begin);
      next();
      if (!is_contextual("as")) fail(peek(), "expected 'as'");
      next();
      n->specifiers.push_back({"*", binding_identifier()});
      if (!is_contextual("from")) fail(peek(), "expected 'from'");
      next();
    } else {
      n = node(NodeKind::ImportDefault, begin);
      n->specifiers.push_back({"default", binding_identifier()});
      if (!is_contextual("from")) fail(peek(), "expected 'from'");
      next();
    }
    n->text = module_specifier();
    consume_semicolon();
    return finish(std::move(n));
  }

  NodePtr parse_export() {
    std::size_t begin = peek().span.begin;
    next();
    if (peek().is_keyword("default")) {
      next();
      NodePtr n = node(NodeKind::ExportDefault, begin);
      if (peek().is_keyword("function") && peek(1).kind == TokenKind::Identifier) {
        n->children.push_back(parse_function(true));
      } else {
        n->children.push_back(parse_assignment());
        consume_semicolon();
      }
      return finish(std::move(n));
    }
    NodePtr n = node(NodeKind::ExportNamed, begin);
    if (peek().is_keyword("var")) {
      n->children.push_back(parse_var_declaration(false));
      consume_semicolon();
      return finish(std::move(n));
    }
    if (peek().is_keyword("function")) {
      n->children.push_back(parse_function(true));
      return finish(std::move(n));
    }
    expect_punct("{");
    while (!peek().is_punct("}")) {
      std::string local = identifier_name();
      std::string exported = local;
      if (is_contextual("as")) {
        next();
        exported = identifier_name();
      }
      n->specifiers.push_back({local, exported});
      if (!eat_punct(",")) break;
    }
    expect_punct("}");
    if (is_contextual("from")) fail(peek(), "re-exports are not supported");
    consume_semicolon();
    return finish(std::move(n));
  }

  // Expressions

 public:
  NodePtr parse_expression(bool no_in = false) {
    std::size_t begin = peek().span.begin;
    NodePtr first = parse_assignment(no_in);
    if (!peek().is_punct(",")) return first;
    NodePtr seq = node(NodeKind::Sequence, begin);
    seq->children.push_back(std::move(first));
    while (eat_punct(",")) seq->children.push_back(parse_assignment(no_in));
    return finish(std::move(seq));
  }

 private:
  NodePtr parse_assignment(bool no_in = false) {
    std::size_t begin = peek().span.begin;
    NodePtr target = parse_conditional(no_in);
    if (is_assignment_operator(peek())) {
      if (!target->is(NodeKind::Identifier) && !target->is(NodeKind::MemberAccess)) {
        fail(peek(), "invalid assignment target");
      }
      NodePtr n = node(NodeKind::Assignment, begin);
      n->text = next().text;
      n->children.push_back(std::move(target));
      n->children.push_back(parse_assignment(no_in));
      return finish(std::move(n));
    }
    return target;
  }

  NodePtr parse_conditional(bool no_in) {
    std::size_t begin = peek().span.begin;
    NodePtr test = parse_binary(1, no_in);
    if (!peek().is_punct("?")) return test;
    next();
    NodePtr n = node(NodeKind::Conditional, begin);
    n->children.push_back(std::move(test));
    n->children.push_back(parse_assignment());
    expect_punct(":");
    n->children.push_back(parse_assignment(no_in));
    return finish(std::move(n));
  }

  NodePtr parse_binary(int min_prec, bool no_in) {
    std::size_t begin = peek().span.begin;
    NodePtr left = parse_unary();
    for (;;) {
      int prec = binary_precedence(peek(), no_in);
      if (prec == 0 || prec < min_prec) return left;
      NodePtr n = node(NodeKind::Binary, begin);
      n->text = next().text;
      n->children.push_back(std::move(left));
      n->children.push_back(parse_binary(prec + 1, no_in));
      left = finish(std::move(n));
    }
  }

  NodePtr parse_unary() {
    const Token& t = peek();
    std::size_t begin = t.span.begin;
    bool unary_punct = t.kind == TokenKind::Punctuator &&
                       (t.text == "!" || t.text == "~" || t.text == "+" || t.text == "-" ||
                        t.text == "++" || t.text == "--");
    bool unary_keyword = t.kind == TokenKind::Keyword &&
                         (t.text == "typeof" || t.text == "void" || t.text == "delete");
    if (unary_punct || unary_keyword) {
      NodePtr n = node(NodeKind::Unary, begin);
      n->text = next().text;
      n->prefix = true;
      NodePtr arg = parse_unary();
      if ((n->text == "++" || n->text == "--") && !arg->is(NodeKind::Identifier) &&
          !arg->is(NodeKind::MemberAccess)) {
        fail(peek(), "invalid update target");
      }
      n->children.push_back(std::move(arg));
      return finish(std::move(n));
    }
    NodePtr expr = parse_left_hand_side();
    const Token& post = peek();
    if ((post.is_punct("++") || post.is_punct("--")) && !post.newline_before) {
      if (!expr->is(NodeKind::Identifier) && !expr->is(NodeKind::MemberAccess)) {
        fail(post, "invalid update target");
      }
      NodePtr n = node(NodeKind::Unary, begin);
      n->text = next().text;
      n->prefix = false;
      n->children.push_back(std::move(expr));
      return finish(std::move(n));
    }
    return expr;
  }

  NodePtr parse_arguments_into(NodePtr n) {
    expect_punct("(");
    if (!peek().is_punct(")")) {
      do {
        n->children.push_back(parse_assignment());
      } while (eat_punct(","));
    }
    expect_punct(")");
    return n;
  }

  NodePtr parse_member_suffixes(NodePtr expr, std::size_t begin, bool allow_calls) {
    for (;;) {
      if (peek().is_punct(".")) {
        next();
        NodePtr n = node(NodeKind::MemberAccess, begin);
        n->notation = Notation::Dot;
        n->text = identifier_name();
        n->children.push_back(std::move(expr));
        expr = finish(std::move(n));
      } else if (peek().is_punct("[")) {
        next();
        NodePtr n = node(NodeKind::MemberAccess, begin);
        n->notation = Notation::Bracket;
        n->children.push_back(std::move(expr));
        n->children.push_back(parse_expression());
        expect_punct("]");
        expr = finish(std::move(n));
      } else if (allow_calls && peek().is_punct("(")) {
        NodePtr n = node(NodeKind::Call, begin);
        n->children.push_back(std::move(expr));
        expr = finish(parse_arguments_into(std::move(n)));
      } else {
        return expr;
      }
    }
  }

  NodePtr parse_new() {
    std::size_t begin = peek().span.begin;
    expect_keyword("new");
    NodePtr callee;
    if (peek().is_keyword("new")) {
      callee = parse_new();
    } else {
      std::size_t callee_begin = peek().span.begin;
      callee = parse_member_suffixes(parse_primary(), callee_begin, /*allow_calls=*/false);
    }
    NodePtr n = node(NodeKind::New, begin);
    n->children.push_back(std::move(callee));
    if (peek().is_punct("(")) n = parse_arguments_into(std::move(n));
    return finish(std::move(n));
  }

  NodePtr parse_left_hand_side() {
    std::size_t begin = peek().span.begin;
    NodePtr expr = peek().is_keyword("new") ? parse_new() : parse_primary();
    return parse_member_suffixes(std::move(expr), begin, /*allow_calls=*/true);
  }

  NodePtr parse_primary() {
    const Token& t = peek();
    std::size_t begin = t.span.begin;
    switch (t.kind) {
      case TokenKind::Identifier: {
        NodePtr n = node(NodeKind::Identifier, begin);
        n->text = next().text;
        return finish(std::move(n));
      }
      case TokenKind::Number: {
        NodePtr n = node(NodeKind::Literal, begin);
        n->literal = LiteralKind::Number;
        n->text = next().text;
        return finish(std::move(n));
      }
      case TokenKind::String: {
        NodePtr n = node(NodeKind::Literal, begin);
        n->literal = LiteralKind::String;
        n->text = next().text;
        return finish(std::move(n));
      }
      case TokenKind::Regex: {
        NodePtr n = node(NodeKind::Literal, begin);
        n->literal = LiteralKind::Regex;
        n->text = next().text;
        return finish(std::move(n));
      }
      case TokenKind::Keyword: {
        if (t.text == "this") {
          next();
          return finish(node(NodeKind::ThisExpression, begin));
        }
        if (t.text == "null") {
          NodePtr n = node(NodeKind::Literal, begin);
          n->literal = LiteralKind::Null;
          n->text = next().text;
          return finish(std::move(n));
        }
        if (t.text == "true" || t.text == "false") {
          NodePtr n = node(NodeKind::Literal, begin);
          n->literal = LiteralKind::Boolean;
          n->text = next().text;
          return finish(std::move(n));
        }
        if (t.text == "function") return parse_function(/*declaration=*/false);
        break;
      }
      case TokenKind::Punctuator: {
        if (t.text == "(") {
          next();
          NodePtr e = parse_expression();
          expect_punct(")");
          return e;
        }
        if (t.text == "[") return parse_array();
        if (t.text == "{") return parse_object();
        break;
      }
      case TokenKind::End:
        break;
    }
    fail(t, "unexpected token");
  }

  NodePtr parse_array() {
    NodePtr n = node(NodeKind::Array, peek().span.begin);
    next();
    while (!peek().is_punct("]")) {
      if (peek().is_punct(",")) {
        next();
        n->children.push_back(nullptr);
        continue;
      }
      n->children.push_back(parse_assignment());
      if (!peek().is_punct("]")) expect_punct(",");
    }
    next();
    return finish(std::move(n));
  }

  NodePtr parse_object() {
    NodePtr n = node(NodeKind::ObjectLiteral, peek().span.begin);
    next();
    while (!peek().is_punct("}")) {
      const Token& k = peek();
      NodePtr pair = node(NodeKind::PropertyPair, k.span.begin);
      if ((k.text == "get" || k.text == "set") && k.kind == TokenKind::Identifier &&
          !peek(1).is_punct(":")) {
        fail(k, "accessor properties are not supported");
      }
      if (k.kind == TokenKind::String) {
        pair->key_style = KeyStyle::String;
        pair->text = next().text;
      } else if (k.kind == TokenKind::Number) {
        pair->key_style = KeyStyle::Number;
        pair->text = next().text;
      } else {
        pair->key_style = KeyStyle::Identifier;
        pair->text = identifier_name();
      }
      expect_punct(":");
      pair->children.push_back(parse_assignment());
      n->children.push_back(finish(std::move(pair)));
      if (!peek().is_punct("}")) expect_punct(",");
    }
    next();
    return finish(std::move(n));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t last_end_ = 0;
};

}  // namespace

Program parse(const SourceFile& source) {
  Parser parser(source.text);
  Program program = parser.parse_program();
  program.file = std::make_shared<const SourceFile>(source);
  return program;
}

Program parse(std::string_view text, std::string path) {
  SourceFile source;
  source.path = std::move(path);
  source.text = std::string(text);
  return parse(source);
}

NodePtr parse_expression(std::string_view text) {
  Parser parser(text);
  return parser.parse_single_expression();
}

}  // namespace es6migrate
