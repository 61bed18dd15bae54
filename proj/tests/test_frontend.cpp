#include <gtest/gtest.h>

#include "es6migrate/frontend.hpp"

using namespace es6migrate;

namespace {

const Node& first_expression(const Program& p) {
  const Node* s = p.body.at(0).get();
  EXPECT_TRUE(s->is(NodeKind::ExpressionStatement));
  return *s->child(0);
}

}  // namespace

TEST(Parser, VarDeclarationWithSeveralDeclarators) {
  Program p = parse("var a = 1, b, c = a + 2;");
  ASSERT_EQ(p.body.size(), 1u);
  const Node& decl = *p.body[0];
  ASSERT_TRUE(decl.is(NodeKind::VarDeclaration));
  ASSERT_EQ(decl.children.size(), 3u);
  EXPECT_EQ(decl.child(0)->text, "a");
  EXPECT_EQ(decl.child(1)->child(0), nullptr);
  EXPECT_TRUE(decl.child(2)->child(0)->is(NodeKind::Binary));
}

TEST(Parser, KeepsMemberNotation) {
  Program p = parse("a.b; a['b']; a[0];");
  EXPECT_EQ(first_expression(p).notation, Notation::Dot);
  EXPECT_EQ(p.body[1]->child(0)->notation, Notation::Bracket);
  EXPECT_EQ(p.body[2]->child(0)->notation, Notation::Bracket);
}

TEST(Parser, OperatorPrecedence) {
  Program p = parse("x = a + b * c;");
  const Node& assign = first_expression(p);
  ASSERT_TRUE(assign.is(NodeKind::Assignment));
  const Node* sum = assign.child(1);
  EXPECT_EQ(sum->text, "+");
  EXPECT_EQ(sum->child(1)->text, "*");
}

TEST(Parser, AsiAfterReturn) {
  Program p = parse("function f() {\n  return\n  1;\n}");
  const Node& fn = *p.body[0];
  ASSERT_EQ(fn.children.size(), 2u);
  EXPECT_EQ(fn.child(0)->child(0), nullptr);
}

TEST(Parser, AsiBetweenStatementsOnNewlines) {
  Program p = parse("var a = 1\nvar b = 2\na = b");
  EXPECT_EQ(p.body.size(), 3u);
}

TEST(Parser, DirectivePrologueIsLifted) {
  Program p = parse("'use strict';\nvar x;");
  EXPECT_TRUE(p.strict_mode());
  ASSERT_EQ(p.directives.size(), 1u);
  EXPECT_EQ(p.body.size(), 1u);
  EXPECT_FALSE(parse("var x;").strict_mode());
}

TEST(Parser, ObjectLiteralKeyStyles) {
  Program p = parse("x = {a: 1, 'b-c': 2, 3: 4};");
  const Node* obj = first_expression(p).child(1);
  ASSERT_EQ(obj->children.size(), 3u);
  EXPECT_EQ(obj->child(0)->key_style, KeyStyle::Identifier);
  EXPECT_EQ(obj->child(1)->key_style, KeyStyle::String);
  EXPECT_EQ(obj->child(1)->text, "b-c");
  EXPECT_EQ(obj->child(2)->key_style, KeyStyle::Number);
}

TEST(Parser, RegexVersusDivision) {
  Program p = parse("var r = /ab+c/g; var d = a / b / c;");
  EXPECT_EQ(p.body[0]->child(0)->child(0)->literal, LiteralKind::Regex);
  EXPECT_EQ(p.body[1]->child(0)->child(0)->text, "/");
}

TEST(Parser, ControlFlowStatements) {
  const char* src =
      "for (var i = 0; i < 3; i++) { if (i) continue; }\n"
      "for (var k in o) {}\n"
      "while (x) break;\n"
      "do { x--; } while (x);\n"
      "try { f(); } catch (e) { g(e); } finally { h(); }\n"
      "switch (x) { case 1: y(); break; default: z(); }\n"
      "outer: for (;;) { break outer; }\n";
  Program p = parse(src);
  ASSERT_EQ(p.body.size(), 7u);
  EXPECT_TRUE(p.body[0]->is(NodeKind::For));
  EXPECT_TRUE(p.body[1]->is(NodeKind::ForIn));
  EXPECT_TRUE(p.body[2]->is(NodeKind::While));
  EXPECT_TRUE(p.body[3]->is(NodeKind::DoWhile));
  EXPECT_TRUE(p.body[4]->is(NodeKind::Try));
  EXPECT_EQ(p.body[4]->text, "e");
  EXPECT_TRUE(p.body[5]->is(NodeKind::Switch));
  EXPECT_TRUE(p.body[6]->is(NodeKind::Labeled));
}

TEST(Parser, ModuleStatements) {
  Program p = parse(
      "import {a, b as c} from \"./x.js\";\n"
      "import d from \"lib\";\n"
      "import * as ns from \"./n.js\";\n"
      "import \"./side.js\";\n"
      "export {a as alpha, c};\n");
  ASSERT_EQ(p.body.size(), 5u);
  EXPECT_TRUE(p.body[0]->is(NodeKind::ImportNamed));
  EXPECT_EQ(p.body[0]->text, "./x.js");
  ASSERT_EQ(p.body[0]->specifiers.size(), 2u);
  EXPECT_EQ(p.body[0]->specifiers[1], (Specifier{"b", "c"}));
  EXPECT_TRUE(p.body[1]->is(NodeKind::ImportDefault));
  EXPECT_TRUE(p.body[2]->is(NodeKind::ImportNamespace));
  EXPECT_TRUE(p.body[3]->is(NodeKind::ImportSideEffect));
  EXPECT_TRUE(p.body[4]->is(NodeKind::ExportNamed));
  EXPECT_EQ(p.body[4]->specifiers[0], (Specifier{"a", "alpha"}));
}

TEST(Parser, SpansCoverSource) {
  std::string src = "var answer = compute(6, 7);";
  Program p = parse(src);
  const Node& decl = *p.body[0];
  ASSERT_TRUE(decl.span);
  EXPECT_EQ(decl.span->begin, 0u);
  const Node* call = decl.child(0)->child(0);
  ASSERT_TRUE(call->span);
  EXPECT_EQ(src.substr(call->span->begin, call->span->end - call->span->begin), "compute(6, 7)");
}

TEST(Parser, SyntaxErrors) {
  EXPECT_THROW(parse("var = 3;"), SyntaxError);
  EXPECT_THROW(parse("function (a) {}"), SyntaxError);
  EXPECT_THROW(parse("x = {a: 1"), SyntaxError);
  EXPECT_THROW(parse("let x = 1;"), SyntaxError);
  EXPECT_THROW(parse("var s = `t`;"), SyntaxError);
  EXPECT_THROW(parse("var s = 'unterminated"), SyntaxError);
}

TEST(Parser, SyntaxErrorCarriesSpan) {
  try {
    parse("var a = 1;\nvar = 2;");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_GE(e.span().begin, 11u);
  }
}

TEST(Parser, ParseExpression) {
  NodePtr e = parse_expression("a.b(c)[d]");
  ASSERT_TRUE(e);
  EXPECT_TRUE(e->is(NodeKind::MemberAccess));
  EXPECT_EQ(e->notation, Notation::Bracket);
  EXPECT_TRUE(e->child(0)->is(NodeKind::Call));
}

TEST(Printer, NormalizesQuotesAndLayout) {
  Program p = parse("var s = 'it\\'s';function f(a,b){return a+b}");
  EXPECT_EQ(print(p), "var s = \"it's\";\nfunction f(a, b) {\n  return a + b;\n}\n");
}

TEST(Printer, ParenthesizesByPrecedence) {
  Program p = parse("x = (a + b) * c; y = a + (b + c); z = (function() {})();");
  std::string out = print(p);
  EXPECT_NE(out.find("(a + b) * c"), std::string::npos);
  EXPECT_NE(out.find("a + (b + c)"), std::string::npos);
  EXPECT_TRUE(structurally_equal(p, parse(out))) << out;
}

TEST(Printer, StatementStartingWithObjectOrFunctionIsWrapped) {
  for (const char* src : {"({a: 1}).a;", "(function() {}).call(this);"}) {
    Program p = parse(src);
    Program q = parse(print(p));
    EXPECT_TRUE(structurally_equal(p, q)) << print(p);
  }
}

TEST(Printer, SynthesizedModuleStatements) {
  Program p;
  p.body.push_back(make::import_named({{"isFinite", "Math_isFinite"}, {"clamp", "clamp"}}, "../common/Math.js"));
  p.body.push_back(make::import_default("$", "jquery"));
  p.body.push_back(make::import_side_effect("./polyfill.js"));
  p.body.push_back(make::var("y", make::call(make::identifier("Math_isFinite"), {})));
  p.body.push_back(make::export_named({{"y", "y"}, {"z", "w"}}));
  EXPECT_EQ(print(p),
            "import {isFinite as Math_isFinite, clamp} from \"../common/Math.js\";\n"
            "import $ from \"jquery\";\n"
            "import \"./polyfill.js\";\n"
            "var y = Math_isFinite();\n"
            "export {y, z as w};\n");
}

TEST(Printer, CommentsAreDropped) {
  Program p = parse("// header\nvar a = 1; /* trailing */");
  EXPECT_EQ(print(p), "var a = 1;\n");
}

TEST(Ast, CloneIsStructurallyEqual) {
  Program p = parse("function f(x) { return x ? [1, , 3] : {k: /r/}; }");
  Program q = p;
  EXPECT_TRUE(structurally_equal(p, q));
  q.body[0]->params[0] = "y";
  EXPECT_FALSE(structurally_equal(p, q));
}

TEST(Ast, VisitCanSkipChildren) {
  Program p = parse("function f() { var inner = 1; } var outer = 2;");
  std::vector<std::string> names;
  visit(p, [&](const Node& n) {
    if (n.is(NodeKind::VarDeclarator)) names.push_back(n.text);
    return !n.is_function();
  });
  EXPECT_EQ(names, std::vector<std::string>{"outer"});
}

TEST(Html, ExtractsLinkedAndInlineScriptsInOrder) {
  std::string html =
      "<html><head><script src=\"js/a.js\"></script>\n"
      "<script type=\"text/javascript\">var x = 1;</script></head>\n"
      "<body><script src='b.js'></script><script type=\"text/template\">not js</script></body></html>";
  ExtractedScripts s = extract_scripts(html, "pages/index.html");
  ASSERT_EQ(s.scripts.size(), 3u);
  EXPECT_EQ(s.scripts[0].path, "pages/js/a.js");
  EXPECT_EQ(s.scripts[0].origin, Origin::HtmlLinked);
  EXPECT_EQ(s.scripts[1].origin, Origin::HtmlInline);
  EXPECT_EQ(s.scripts[1].path, "pages/index.inline0.js");
  EXPECT_EQ(s.scripts[1].text, "var x = 1;");
  EXPECT_EQ(s.scripts[2].path, "pages/b.js");
  for (std::size_t i = 0; i < s.scripts.size(); ++i) {
    EXPECT_EQ(s.scripts[i].load_index, i);
    EXPECT_EQ(s.scripts[i].page, "pages/index.html");
  }
  ASSERT_EQ(s.elements.size(), 3u);
  EXPECT_EQ(html.substr(s.elements[0].begin, s.elements[0].end - s.elements[0].begin),
            "<script src=\"js/a.js\"></script>");
}

TEST(Html, ResolverCanRejectScripts) {
  std::string html = "<script src=\"https://cdn.example.com/lib.js\"></script><script src=\"app.js\"></script>";
  ScriptResolver resolver = [](const std::string&, const std::string& src) -> std::optional<std::string> {
    if (src.find("://") != std::string::npos) return std::nullopt;
    return src;
  };
  ExtractedScripts s = extract_scripts(html, "index.html", resolver);
  ASSERT_EQ(s.scripts.size(), 1u);
  EXPECT_EQ(s.scripts[0].path, "app.js");
  EXPECT_EQ(s.skipped.size(), 1u);
}

TEST(Paths, LexicalHelpers) {
  EXPECT_EQ(normalize_path("a/./b/../c.js"), "a/c.js");
  EXPECT_EQ(parent_directory("a/b/c.js"), "a/b");
  EXPECT_EQ(parent_directory("c.js"), "");
  EXPECT_EQ(join_path("a/b", "../x.js"), "a/x.js");
  EXPECT_EQ(join_path("", "./x.js"), "x.js");
}
