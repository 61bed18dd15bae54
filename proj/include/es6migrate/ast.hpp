#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "es6migrate/source.hpp"

namespace es6migrate {

enum class NodeKind {
  // Statements.
  VarDeclaration,
  VarDeclarator,
  FunctionDeclaration,
  Return,
  If,
  Block,
  ExpressionStatement,
  For,
  ForIn,
  While,
  DoWhile,
  Break,
  Continue,
  Throw,
  Try,
  Switch,
  SwitchCase,
  Labeled,
  Empty,
  // ES6 module statements (emitted by the transform, accepted by the parser).
  ImportNamed,
  ImportDefault,
  ImportNamespace,
  ImportSideEffect,
  ExportNamed,
  ExportDefault,
  // Expressions.
  FunctionExpression,
  ObjectLiteral,
  PropertyPair,
  MemberAccess,
  Assignment,
  Call,
  New,
  Identifier,
  Literal,
  ThisExpression,
  Array,
  Binary,
  Unary,
  Conditional,
  Sequence,
};

const char* to_string(NodeKind kind);

enum class LiteralKind { None, Number, String, Boolean, Null, Regex };
enum class Notation { Dot, Bracket };
enum class KeyStyle { Identifier, String, Number };

/// `imported`/`local` for imports, `local`/`exported` for exports.
struct Specifier {
  std::string first;
  std::string second;
  friend bool operator==(const Specifier&, const Specifier&) = default;
};

struct Node;
using NodePtr = std::unique_ptr<Node>;

/// A syntax-tree node. The meaning of `text` and of each child slot depends
/// on `kind`:
///
///   VarDeclaration       children: VarDeclarator+
///   VarDeclarator        text: name; [init?]
///   FunctionDeclaration/
///   FunctionExpression   text: name (may be empty); params; children: body
///   Return               [argument?]
///   If                   [test, consequent, alternate?]
///   Block                statements
///   ExpressionStatement  [expression]
///   For                  [init?, test?, update?, body]
///   ForIn                [left, right, body]
///   While                [test, body]
///   DoWhile              [body, test]
///   Break/Continue       text: label (may be empty)
///   Throw                [argument]
///   Try                  text: catch parameter; [block, handler?, finalizer?]
///   Switch               [discriminant, SwitchCase*]
///   SwitchCase           [test? (null for default), statements...]
///   Labeled              text: label; [body]
///   Import*              text: module specifier; specifiers {imported, local}
///   ExportNamed          specifiers {local, exported}; [declaration?]
///   ExportDefault        [expression or FunctionDeclaration]
///   ObjectLiteral        PropertyPair*
///   PropertyPair         text: key; key_style; [value]
///   MemberAccess         Dot: text property, [object]; Bracket: [object, property]
///   Assignment           text: operator; [target, value]
///   Call/New             [callee, arguments...]
///   Identifier           text: name
///   Literal              literal; text: raw number, decoded string, regex source
///   Array                elements (null for holes)
///   Binary               text: operator; [left, right]
///   Unary                text: operator; prefix; [argument]
///   Conditional          [test, consequent, alternate]
///   Sequence             expressions
///
/// Nodes built by the parser carry a span; synthesized nodes do not.
struct Node {
  NodeKind kind;
  std::optional<Span> span;
  std::string text;
  LiteralKind literal = LiteralKind::None;
  Notation notation = Notation::Dot;
  KeyStyle key_style = KeyStyle::Identifier;
  bool prefix = false;
  std::vector<std::string> params;
  std::vector<Specifier> specifiers;
  std::vector<NodePtr> children;

  explicit Node(NodeKind k) : kind(k) {}

  Node* child(std::size_t i) const { return i < children.size() ? children[i].get() : nullptr; }
  bool is(NodeKind k) const { return kind == k; }
  bool is_identifier(std::string_view name) const {
    return kind == NodeKind::Identifier && text == name;
  }
  bool is_string_literal() const {
    return kind == NodeKind::Literal && literal == LiteralKind::String;
  }
  bool is_function() const {
    return kind == NodeKind::FunctionDeclaration || kind == NodeKind::FunctionExpression;
  }
  /// Dot-notation member access `<object>.<name>`.
  bool is_dot_member(std::string_view name) const {
    return kind == NodeKind::MemberAccess && notation == Notation::Dot && text == name;
  }

  NodePtr clone() const;
};

/// Structural equality: compares everything except spans.
bool structurally_equal(const Node* a, const Node* b);

/// A parsed source file.
///
/// Directive-prologue strings are lifted out of `body` into `directives`.
/// Copying a Program deep-copies its tree.
struct Program {
  std::vector<std::string> directives;
  std::vector<NodePtr> body;
  std::shared_ptr<const SourceFile> file;

  Program() = default;
  Program(const Program& other);
  Program& operator=(const Program& other);
  Program(Program&&) noexcept = default;
  Program& operator=(Program&&) noexcept = default;

  bool strict_mode() const;
  const std::string& path() const;
};

bool structurally_equal(const Program& a, const Program& b);

/// Pre-order traversal over every non-null node; the callback returns false
/// to skip a node's children.
void visit(const Node& node, const std::function<bool(const Node&)>& fn);
void visit(const Program& program, const std::function<bool(const Node&)>& fn);

/// Node factories for synthesized code (null spans).
namespace make {
NodePtr identifier(std::string name);
NodePtr string(std::string value);
NodePtr number(std::string raw);
NodePtr null();
NodePtr dot(NodePtr object, std::string property);
NodePtr assign(NodePtr target, NodePtr value, std::string op = "=");
NodePtr call(NodePtr callee, std::vector<NodePtr> args);
NodePtr binary(std::string op, NodePtr left, NodePtr right);
NodePtr sequence(std::vector<NodePtr> exprs);
NodePtr expression_statement(NodePtr expr);
NodePtr var(std::string name, NodePtr init);
NodePtr function_declaration(std::string name, std::vector<std::string> params,
                             std::vector<NodePtr> body);
NodePtr import_named(std::vector<Specifier> specifiers, std::string source);
NodePtr import_default(std::string local, std::string source);
NodePtr import_side_effect(std::string source);
NodePtr export_named(std::vector<Specifier> specifiers);
}  // namespace make

}  // namespace es6migrate
