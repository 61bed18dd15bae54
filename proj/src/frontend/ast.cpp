#include "es6migrate/ast.hpp"

#include <algorithm>

namespace es6migrate {

const char* to_string(Origin origin) {
  switch (origin) {
    case Origin::JsFile: return "JsFile";
    case Origin::HtmlInline: return "HtmlInline";
    case Origin::HtmlLinked: return "HtmlLinked";
  }
  return "?";
}

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::VarDeclaration: return "VarDeclaration";
    case NodeKind::VarDeclarator: return "VarDeclarator";
    case NodeKind::FunctionDeclaration: return "FunctionDeclaration";
    case NodeKind::Return: return "Return";
    case NodeKind::If: return "If";
    case NodeKind::Block: return "Block";
    case NodeKind::ExpressionStatement: return "ExpressionStatement";
    case NodeKind::For: return "For";
    case NodeKind::ForIn: return "ForIn";
    case NodeKind::While: return "While";
    case NodeKind::DoWhile: return "DoWhile";
    case NodeKind::Break: return "Break";
    case NodeKind::Continue: return "Continue";
    case NodeKind::Throw: return "Throw";
    case NodeKind::Try: return "Try";
    case NodeKind::Switch: return "Switch";
    case NodeKind::SwitchCase: return "SwitchCase";
    case NodeKind::Labeled: return "Labeled";
    case NodeKind::Empty: return "Empty";
    case NodeKind::ImportNamed: return "ImportNamed";
    case NodeKind::ImportDefault: return "ImportDefault";
    case NodeKind::ImportNamespace: return "ImportNamespace";
    case NodeKind::ImportSideEffect: return "ImportSideEffect";
    case NodeKind::ExportNamed: return "ExportNamed";
    case NodeKind::ExportDefault: return "ExportDefault";
    case NodeKind::FunctionExpression: return "FunctionExpression";
    case NodeKind::ObjectLiteral: return "ObjectLiteral";
    case NodeKind::PropertyPair: return "PropertyPair";
    case NodeKind::MemberAccess: return "MemberAccess";
    case NodeKind::Assignment: return "Assignment";
    case NodeKind::Call: return "Call";
    case NodeKind::New: return "New";
    case NodeKind::Identifier: return "Identifier";
    case NodeKind::Literal: return "Literal";
    case NodeKind::ThisExpression: return "ThisExpression";
    case NodeKind::Array: return "Array";
    case NodeKind::Binary: return "Binary";
    case NodeKind::Unary: return "Unary";
    case NodeKind::Conditional: return "Conditional";
    case NodeKind::Sequence: return "Sequence";
  }
  return "?";
}

NodePtr Node::clone() const {
  auto copy = std::make_unique<Node>(kind);
  copy->span = span;
  copy->text = text;
  copy->literal = literal;
  copy->notation = notation;
  copy->key_style = key_style;
  copy->prefix = prefix;
  copy->params = params;
  copy->specifiers = specifiers;
  copy->children.reserve(children.size());
  for (const auto& c : children) copy->children.push_back(c ? c->clone() : nullptr);
  return copy;
}

bool structurally_equal(const Node* a, const Node* b) {
  if (a == nullptr || b == nullptr) return a == b;
  if (a->kind != b->kind || a->text != b->text || a->literal != b->literal ||
      a->prefix != b->prefix || a->params != b->params || a->specifiers != b->specifiers ||
      a->children.size() != b->children.size()) {
    return false;
  }
  if (a->kind == NodeKind::MemberAccess && a->notation != b->notation) return false;
  if (a->kind == NodeKind::PropertyPair && a->key_style != b->key_style) return false;
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (!structurally_equal(a->children[i].get(), b->children[i].get())) return false;
  }
  return true;
}

Program::Program(const Program& other) : directives(other.directives), file(other.file) {
  body.reserve(other.body.size());
  for (const auto& s : other.body) body.push_back(s ? s->clone() : nullptr);
}

Program& Program::operator=(const Program& other) {
  if (this != &other) {
    Program copy(other);
    *this = std::move(copy);
  }
  return *this;
}

bool Program::strict_mode() const {
  return std::find(directives.begin(), directives.end(), "use strict") != directives.end();
}

const std::string& Program::path() const {
  static const std::string empty;
  return file ? file->path : empty;
}

bool structurally_equal(const Program& a, const Program& b) {
  if (a.directives != b.directives || a.body.size() != b.body.size()) return false;
  for (std::size_t i = 0; i < a.body.size(); ++i) {
    if (!structurally_equal(a.body[i].get(), b.body[i].get())) return false;
  }
  return true;
}

void visit(const Node& node, const std::function<bool(const Node&)>& fn) {
  if (!fn(node)) return;
  for (const auto& c : node.children) {
    if (c) visit(*c, fn);
  }
}

void visit(const Program& program, const std::function<bool(const Node&)>& fn) {
  for (const auto& s : program.body) {
    if (s) visit(*s, fn);
  }
}

namespace make {

NodePtr identifier(std::string name) {
  auto n = std::make_unique<Node>(NodeKind::Identifier);
  n->text = std::move(name);
  return n;
}

NodePtr string(std::string value) {
  auto n = std::make_unique<Node>(NodeKind::Literal);
  n->literal = LiteralKind::String;
  n->text = std::move(value);
  return n;
}

NodePtr number(std::string raw) {
  auto n = std::make_unique<Node>(NodeKind::Literal);
  n->literal = LiteralKind::Number;
  n->text = std::move(raw);
  return n;
}

NodePtr null() {
  auto n = std::make_unique<Node>(NodeKind::Literal);
  n->literal = LiteralKind::Null;
  n->text = "null";
  return n;
}

NodePtr dot(NodePtr object, std::string property) {
  auto n = std::make_unique<Node>(NodeKind::MemberAccess);
  n->notation = Notation::Dot;
  n->text = std::move(property);
  n->children.push_back(std::move(object));
  return n;
}

NodePtr assign(NodePtr target, NodePtr value, std::string op) {
  auto n = std::make_unique<Node>(NodeKind::Assignment);
  n->text = std::move(op);
  n->children.push_back(std::move(target));
  n->children.push_back(std::move(value));
  return n;
}

NodePtr call(NodePtr callee, std::vector<NodePtr> args) {
  auto n = std::make_unique<Node>(NodeKind::Call);
  n->children.push_back(std::move(callee));
  for (auto& a : args) n->children.push_back(std::move(a));
  return n;
}

NodePtr binary(std::string op, NodePtr left, NodePtr right) {
  auto n = std::make_unique<Node>(NodeKind::Binary);
  n->text = std::move(op);
  n->children.push_back(std::move(left));
  n->children.push_back(std::move(right));
  return n;
}

NodePtr sequence(std::vector<NodePtr> exprs) {
  auto n = std::make_unique<Node>(NodeKind::Sequence);
  n->children = std::move(exprs);
  return n;
}

NodePtr expression_statement(NodePtr expr) {
  auto n = std::make_unique<Node>(NodeKind::ExpressionStatement);
  n->children.push_back(std::move(expr));
  return n;
}

NodePtr var(std::string name, NodePtr init) {
  auto decl = std::make_unique<Node>(NodeKind::VarDeclarator);
  decl->text = std::move(name);
  decl->children.push_back(std::move(init));
  auto n = std::make_unique<Node>(NodeKind::VarDeclaration);
  n->children.push_back(std::move(decl));
  return n;
}

NodePtr function_declaration(std::string name, std::vector<std::string> params,
                             std::vector<NodePtr> body) {
  auto n = std::make_unique<Node>(NodeKind::FunctionDeclaration);
  n->text = std::move(name);
  n->params = std::move(params);
  n->children = std::move(body);
  return n;
}

NodePtr import_named(std::vector<Specifier> specifiers, std::string source) {
  auto n = std::make_unique<Node>(NodeKind::ImportNamed);
  n->specifiers = std::move(specifiers);
  n->text = std::move(source);
  return n;
}

NodePtr import_default(std::string local, std::string source) {
  auto n = std::make_unique<Node>(NodeKind::ImportDefault);
  n->specifiers.push_back({"default", std::move(local)});
  n->text = std::move(source);
  return n;
}

NodePtr import_side_effect(std::string source) {
  auto n = std::make_unique<Node>(NodeKind::ImportSideEffect);
  n->text = std::move(source);
  return n;
}

NodePtr export_named(std::vector<Specifier> specifiers) {
  auto n = std::make_unique<Node>(NodeKind::ExportNamed);
  n->specifiers = std::move(specifiers);
  return n;
}

}  // namespace make

}  // namespace es6migrate
