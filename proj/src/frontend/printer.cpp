#include <cstdio>
#include <string>

#include "es6migrate/frontend.hpp"
#include "lexer.hpp"

namespace es6migrate {

namespace {

// Expression precedence, loosest first.
enum Prec : int {
  kSequence = 1,
  kAssignment = 2,
  kConditional = 3,
  kLogicalOr = 4,
  kLogicalAnd = 5,
  kBitOr = 6,
  kBitXor = 7,
  kBitAnd = 8,
  kEquality = 9,
  kRelational = 10,
  kShift = 11,
  kAdditive = 12,
  kMultiplicative = 13,
  kUnary = 14,
  kPostfix = 15,
  kCall = 16,
  kMember = 17,
  kPrimary = 18,
};

int binary_prec(const std::string& op) {
  if (op == "||") return kLogicalOr;
  if (op == "&&") return kLogicalAnd;
  if (op == "|") return kBitOr;
  if (op == "^") return kBitXor;
  if (op == "&") return kBitAnd;
  if (op == "==" || op == "!=" || op == "===" || op == "!==") return kEquality;
  if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof" || op == "in") {
    return kRelational;
  }
  if (op == "<<" || op == ">>" || op == ">>>") return kShift;
  if (op == "+" || op == "-") return kAdditive;
  return kMultiplicative;
}

int precedence(const Node& n) {
  switch (n.kind) {
    case NodeKind::Sequence: return kSequence;
    case NodeKind::Assignment: return kAssignment;
    case NodeKind::Conditional: return kConditional;
    case NodeKind::Binary: return binary_prec(n.text);
    case NodeKind::Unary: return n.prefix ? kUnary : kPostfix;
    case NodeKind::Call: return kCall;
    case NodeKind::New:
    case NodeKind::MemberAccess: return kMember;
    default: return kPrimary;
  }
}

std::string quote(const std::string& value) {
  std::string out = "\"";
  for (std::size_t i = 0; i < value.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(value[i]);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\v': out += "\\v"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02X", c);
          out += buf;
        } else if (c == 0xE2 && i + 2 < value.size() &&
                   static_cast<unsigned char>(value[i + 1]) == 0x80 &&
                   (static_cast<unsigned char>(value[i + 2]) == 0xA8 ||
                    static_cast<unsigned char>(value[i + 2]) == 0xA9)) {
          out += static_cast<unsigned char>(value[i + 2]) == 0xA8 ? "\\u2028" : "\\u2029";
          i += 2;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out += "\"";
  return out;
}

bool is_identifier_name(const std::string& s) {
  if (s.empty() || !detail::is_identifier_start(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!detail::is_identifier_part(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// `new` callees must not contain an unparenthesized call.
bool new_callee_safe(const Node& n) {
  switch (n.kind) {
    case NodeKind::Identifier:
    case NodeKind::ThisExpression:
      return true;
    case NodeKind::MemberAccess:
      return n.child(0) && new_callee_safe(*n.child(0));
    default:
      return false;
  }
}

bool starts_with_word(const std::string& text, std::string_view word) {
  if (text.compare(0, word.size(), word) != 0) return false;
  return text.size() == word.size() ||
         !detail::is_identifier_part(static_cast<unsigned char>(text[word.size()]));
}

class Printer {
 public:
  std::string program(const Program& p) {
    std::string out;
    for (const auto& d : p.directives) out += quote(d) + ";\n";
    for (const auto& s : p.body) {
      if (!s) fail(nullptr, "null statement in program");
      out += statement(*s);
      out += "\n";
    }
    return out;
  }

  std::string any(const Node& n) {
    if (is_statement(n.kind)) return statement(n);
    return expr(n, kSequence);
  }

 private:
  [[noreturn]] void fail(const Node* n, const std::string& msg) {
    std::string where = (n && !n->span) ? " (synthesized node)" : "";
    throw PrintError(msg + where);
  }

  const Node& require(const Node& n, std::size_t i) {
    if (i >= n.children.size() || !n.children[i]) {
      fail(&n, std::string(to_string(n.kind)) + " is missing required child " + std::to_string(i));
    }
    return *n.children[i];
  }

  static bool is_statement(NodeKind k) {
    switch (k) {
      case NodeKind::VarDeclaration:
      case NodeKind::FunctionDeclaration:
      case NodeKind::Return:
      case NodeKind::If:
      case NodeKind::Block:
      case NodeKind::ExpressionStatement:
      case NodeKind::For:
      case NodeKind::ForIn:
      case NodeKind::While:
      case NodeKind::DoWhile:
      case NodeKind::Break:
      case NodeKind::Continue:
      case NodeKind::Throw:
      case NodeKind::Try:
      case NodeKind::Switch:
      case NodeKind::Labeled:
      case NodeKind::Empty:
      case NodeKind::ImportNamed:
      case NodeKind::ImportDefault:
      case NodeKind::ImportNamespace:
      case NodeKind::ImportSideEffect:
      case NodeKind::ExportNamed:
      case NodeKind::ExportDefault:
        return true;
      default:
        return false;
    }
  }

  std::string pad() const { return std::string(indent_ * 2, ' '); }

  // Statement bodies (if/for/while): blocks stay on the header line,
  // anything else goes on the next line one level deeper.
  std::string body(const Node& n) {
    if (n.is(NodeKind::Block)) return " " + block_text(n);
    ++indent_;
    std::string s = "\n" + statement(n);
    --indent_;
    return s;
  }

  std::string block_text(const Node& block) {
    if (block.children.empty()) return "{}";
    std::string s = "{\n";
    ++indent_;
    for (const auto& c : block.children) {
      if (!c) fail(&block, "null statement in block");
      s += statement(*c) + "\n";
    }
    --indent_;
    return s + pad() + "}";
  }

  std::string statement_list(const std::vector<NodePtr>& stmts, std::size_t from = 0) {
    std::string s;
    for (std::size_t i = from; i < stmts.size(); ++i) {
      if (!stmts[i]) fail(nullptr, "null statement");
      s += statement(*stmts[i]) + "\n";
    }
    return s;
  }

  std::string var_declaration(const Node& n, bool no_in) {
    if (n.children.empty()) fail(&n, "VarDeclaration without declarators");
    std::string s = "var ";
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const Node& d = require(n, i);
      if (i) s += ", ";
      s += d.text;
      if (d.child(0)) s += " = " + expr(*d.child(0), kAssignment, no_in);
    }
    return s;
  }

  std::string function_text(const Node& n) {
    std::string s = "function";
    if (!n.text.empty()) s += " " + n.text;
    s += "(";
    for (std::size_t i = 0; i < n.params.size(); ++i) {
      if (i) s += ", ";
      s += n.params[i];
    }
    s += ") ";
    if (n.children.empty()) return s + "{}";
    s += "{\n";
    ++indent_;
    s += statement_list(n.children);
    --indent_;
    return s + pad() + "}";
  }

  std::string specifier_list(const std::vector<Specifier>& specs) {
    std::string s = "{";
    for (std::size_t i = 0; i < specs.size(); ++i) {
      if (i) s += ", ";
      s += specs[i].first;
      if (specs[i].second != specs[i].first) s += " as " + specs[i].second;
    }
    return s + "}";
  }

  std::string statement(const Node& n) {
    std::string p = pad();
    switch (n.kind) {
      case NodeKind::VarDeclaration:
        return p + var_declaration(n, false) + ";";
      case NodeKind::FunctionDeclaration:
        if (n.text.empty()) fail(&n, "function declaration without a name");
        return p + function_text(n);
      case NodeKind::Return:
        return p + (n.child(0) ? "return " + expr(*n.child(0), kSequence) + ";" : "return;");
      case NodeKind::If: {
        std::string s = p + "if (" + expr(require(n, 0), kSequence) + ")" + body(require(n, 1));
        const Node* alt = n.child(2);
        if (!alt) return s;
        s += n.child(1)->is(NodeKind::Block) ? " else" : "\n" + p + "else";
        if (alt->is(NodeKind::If)) {
          std::string nested = statement(*alt);
          return s + " " + nested.substr(p.size());
        }
        return s + body(*alt);
      }
      case NodeKind::Block:
        return p + block_text(n);
      case NodeKind::ExpressionStatement: {
        std::string e = expr(require(n, 0), kSequence);
        if (starts_with_word(e, "function") || e.front() == '{') e = "(" + e + ")";
        return p + e + ";";
      }
      case NodeKind::For: {
        std::string s = p + "for (";
        if (const Node* init = n.child(0)) {
          s += init->is(NodeKind::VarDeclaration) ? var_declaration(*init, true)
                                                   : expr(*init, kSequence, true);
        }
        s += ";";
        if (const Node* test = n.child(1)) s += " " + expr(*test, kSequence);
        s += ";";
        if (const Node* update = n.child(2)) s += " " + expr(*update, kSequence);
        return s + ")" + body(require(n, 3));
      }
      case NodeKind::ForIn: {
        const Node& left = require(n, 0);
        std::string l = left.is(NodeKind::VarDeclaration) ? var_declaration(left, true)
                                                           : expr(left, kCall);
        return p + "for (" + l + " in " + expr(require(n, 1), kSequence) + ")" + body(require(n, 2));
      }
      case NodeKind::While:
        return p + "while (" + expr(require(n, 0), kSequence) + ")" + body(require(n, 1));
      case NodeKind::DoWhile: {
        std::string s = p + "do" + body(require(n, 0));
        s += require(n, 0).is(NodeKind::Block) ? " " : "\n" + p;
        return s + "while (" + expr(require(n, 1), kSequence) + ");";
      }
      case NodeKind::Break:
      case NodeKind::Continue: {
        std::string s = p + (n.is(NodeKind::Break) ? "break" : "continue");
        if (!n.text.empty()) s += " " + n.text;
        return s + ";";
      }
      case NodeKind::Throw:
        return p + "throw " + expr(require(n, 0), kSequence) + ";";
      case NodeKind::Try: {
        std::string s = p + "try " + block_text(require(n, 0));
        if (const Node* handler = n.child(1)) s += " catch (" + n.text + ") " + block_text(*handler);
        if (const Node* fin = n.child(2)) s += " finally " + block_text(*fin);
        return s;
      }
      case NodeKind::Switch: {
        std::string s = p + "switch (" + expr(require(n, 0), kSequence) + ") {\n";
        ++indent_;
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          const Node& c = require(n, i);
          s += pad() + (c.child(0) ? "case " + expr(*c.child(0), kSequence) + ":" : "default:") + "\n";
          ++indent_;
          s += statement_list(c.children, 1);
          --indent_;
        }
        --indent_;
        return s + p + "}";
      }
      case NodeKind::Labeled: {
        std::string inner = statement(require(n, 0));
        return p + n.text + ": " + inner.substr(p.size());
      }
      case NodeKind::Empty:
        return p + ";";
      case NodeKind::ImportNamed:
        return p + "import " + specifier_list(n.specifiers) + " from " + quote(n.text) + ";";
      case NodeKind::ImportDefault:
        if (n.specifiers.empty()) fail(&n, "default import without a local name");
        return p + "import " + n.specifiers[0].second + " from " + quote(n.text) + ";";
      case NodeKind::ImportNamespace:
        if (n.specifiers.empty()) fail(&n, "namespace import without a local name");
        return p + "import * as " + n.specifiers[0].second + " from " + quote(n.text) + ";";
      case NodeKind::ImportSideEffect:
        return p + "import " + quote(n.text) + ";";
      case NodeKind::ExportNamed:
        if (const Node* decl = n.child(0)) return p + "export " + statement(*decl).substr(p.size());
        return p + "export " + specifier_list(n.specifiers) + ";";
      case NodeKind::ExportDefault: {
        const Node& value = require(n, 0);
        if (value.is(NodeKind::FunctionDeclaration)) return p + "export default " + function_text(value);
        return p + "export default " + expr(value, kAssignment) + ";";
      }
      default:
        fail(&n, std::string("expression node ") + to_string(n.kind) + " in statement position");
    }
  }

  std::string expr(const Node& n, int min_prec, bool no_in = false) {
    std::string s = expr_inner(n);
    bool wrap = precedence(n) < min_prec ||
                (no_in && n.is(NodeKind::Binary) && n.text == "in");
    return wrap ? "(" + s + ")" : s;
  }

  std::string expr_inner(const Node& n) {
    switch (n.kind) {
      case NodeKind::Identifier:
        if (n.text.empty()) fail(&n, "identifier without a name");
        return n.text;
      case NodeKind::ThisExpression:
        return "this";
      case NodeKind::Literal:
        switch (n.literal) {
          case LiteralKind::String: return quote(n.text);
          case LiteralKind::Null: return "null";
          case LiteralKind::None: fail(&n, "literal without a kind");
          default: return n.text;
        }
      case NodeKind::FunctionExpression:
        return function_text(n);
      case NodeKind::Array: {
        std::vector<std::string> items;
        bool multiline = false;
        ++indent_;
        for (const auto& c : n.children) {
          items.push_back(c ? expr(*c, kAssignment) : "");
          multiline = multiline || items.back().find('\n') != std::string::npos;
        }
        --indent_;
        // A trailing hole needs an extra comma to survive re-parsing.
        bool trailing_hole = !n.children.empty() && !n.children.back();
        if (!multiline) {
          std::string s = "[";
          for (std::size_t i = 0; i < items.size(); ++i) {
            if (i) s += items[i].empty() ? "," : ", ";
            s += items[i];
          }
          return s + (trailing_hole ? ",]" : "]");
        }
        std::string s = "[\n";
        for (std::size_t i = 0; i < items.size(); ++i) {
          s += pad() + "  " + items[i] + (i + 1 < items.size() || trailing_hole ? ",\n" : "\n");
        }
        return s + pad() + "]";
      }
      case NodeKind::ObjectLiteral: {
        if (n.children.empty()) return "{}";
        std::vector<std::string> pairs;
        bool multiline = false;
        ++indent_;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          const Node& pair = require(n, i);
          if (!pair.is(NodeKind::PropertyPair)) fail(&pair, "object literal member is not a property pair");
          std::string key;
          switch (pair.key_style) {
            case KeyStyle::Identifier:
              if (!is_identifier_name(pair.text)) fail(&pair, "invalid property key '" + pair.text + "'");
              key = pair.text;
              break;
            case KeyStyle::String: key = quote(pair.text); break;
            case KeyStyle::Number: key = pair.text; break;
          }
          pairs.push_back(key + ": " + expr(require(pair, 0), kAssignment));
          multiline = multiline || pairs.back().find('\n') != std::string::npos;
        }
        --indent_;
        if (!multiline) {
          std::string s = "{";
          for (std::size_t i = 0; i < pairs.size(); ++i) s += (i ? ", " : "") + pairs[i];
          return s + "}";
        }
        std::string s = "{\n";
        for (std::size_t i = 0; i < pairs.size(); ++i) {
          s += pad() + "  " + pairs[i] + (i + 1 < pairs.size() ? ",\n" : "\n");
        }
        return s + pad() + "}";
      }
      case NodeKind::MemberAccess: {
        const Node& object = require(n, 0);
        std::string o = expr(object, kCall);
        if (object.is(NodeKind::Literal) && object.literal == LiteralKind::Number) o = "(" + o + ")";
        if (n.notation == Notation::Dot) {
          if (!is_identifier_name(n.text)) fail(&n, "invalid property name '" + n.text + "'");
          return o + "." + n.text;
        }
        return o + "[" + expr(require(n, 1), kSequence) + "]";
      }
      case NodeKind::Call: {
        std::string s = expr(require(n, 0), kCall) + "(";
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          if (i > 1) s += ", ";
          s += expr(require(n, i), kAssignment);
        }
        return s + ")";
      }
      case NodeKind::New: {
        const Node& callee = require(n, 0);
        std::string c = new_callee_safe(callee) ? expr(callee, kMember) : "(" + expr(callee, kSequence) + ")";
        std::string s = "new " + c + "(";
        for (std::size_t i = 1; i < n.children.size(); ++i) {
          if (i > 1) s += ", ";
          s += expr(require(n, i), kAssignment);
        }
        return s + ")";
      }
      case NodeKind::Assignment: {
        if (n.text.empty()) fail(&n, "assignment without an operator");
        return expr(require(n, 0), kCall) + " " + n.text + " " + expr(require(n, 1), kAssignment);
      }
      case NodeKind::Binary: {
        int prec = binary_prec(n.text);
        return expr(require(n, 0), prec) + " " + n.text + " " + expr(require(n, 1), prec + 1);
      }
      case NodeKind::Unary: {
        const Node& arg = require(n, 0);
        if (!n.prefix) return expr(arg, kCall) + n.text;
        std::string a = expr(arg, kUnary);
        bool word = n.text == "typeof" || n.text == "void" || n.text == "delete";
        // Keep `- -x` and `+ +x` from fusing into `--x`/`++x`.
        bool fuse = (n.text == "-" || n.text == "+" || n.text == "--" || n.text == "++") &&
                    !a.empty() && a.front() == n.text.back();
        return n.text + (word || fuse ? " " : "") + a;
      }
      case NodeKind::Conditional:
        return expr(require(n, 0), kLogicalOr) + " ? " + expr(require(n, 1), kAssignment) + " : " +
               expr(require(n, 2), kAssignment);
      case NodeKind::Sequence: {
        if (n.children.empty()) fail(&n, "empty sequence expression");
        std::string s;
        for (std::size_t i = 0; i < n.children.size(); ++i) {
          if (i) s += ", ";
          s += expr(require(n, i), kAssignment);
        }
        return s;
      }
      default:
        fail(&n, std::string("statement node ") + to_string(n.kind) + " in expression position");
    }
  }

  int indent_ = 0;
};

}  // namespace

std::string print(const Program& program) { return Printer().program(program); }

std::string print(const Node& node) { return Printer().any(node); }

}  // namespace es6migrate
