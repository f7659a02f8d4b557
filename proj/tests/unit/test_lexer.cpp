#include <gtest/gtest.h>

#include "promoscan/error.h"
#include "promoscan/lexer.h"

namespace promoscan {
namespace {

std::vector<std::string> texts(std::string_view src, LexMode mode = LexMode::kStrict) {
  std::vector<std::string> out;
  for (const auto& t : lex_java(src, mode)) out.emplace_back(t.text);
  return out;
}

TEST(Lexer, SkipsCommentsAndWhitespace) {
  EXPECT_EQ(texts("a /* x { */ b // c }\n c"), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Lexer, MaximalMunchOperators) {
  EXPECT_EQ(texts("a>>>=b->c::d...e"),
            (std::vector<std::string>{"a", ">>>=", "b", "->", "c", "::", "d", "...", "e"}));
  EXPECT_EQ(texts("x<=y&&z"), (std::vector<std::string>{"x", "<=", "y", "&&", "z"}));
}

TEST(Lexer, ClassifiesTokens) {
  auto toks = lex_java("int x = 0x1F + 1.5e-3 + 'c' + \"s\" + null;", LexMode::kStrict);
  ASSERT_EQ(toks.size(), 13u);
  EXPECT_EQ(toks[0].kind, TokenKind::kKeyword);
  EXPECT_EQ(toks[1].kind, TokenKind::kIdentifier);
  EXPECT_EQ(toks[3].kind, TokenKind::kNumber);
  EXPECT_EQ(toks[3].text, "0x1F");
  EXPECT_EQ(toks[5].text, "1.5e-3");
  EXPECT_EQ(toks[7].kind, TokenKind::kChar);
  EXPECT_EQ(toks[9].kind, TokenKind::kString);
  EXPECT_EQ(toks[11].kind, TokenKind::kBoolNullLiteral);
  EXPECT_EQ(toks[12].text, ";");
}

TEST(Lexer, StringsHideBracesAndCommentMarkers) {
  EXPECT_EQ(texts(R"(f("}/*", '{'))"), (std::vector<std::string>{"f", "(", "\"}/*\"", ",", "'{'", ")"}));
  EXPECT_EQ(texts(R"("a\"b")"), (std::vector<std::string>{R"("a\"b")"}));
}

TEST(Lexer, TextBlock) {
  auto t = texts("s = \"\"\"\n  hi \" there\n  \"\"\";");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[2], "\"\"\"\n  hi \" there\n  \"\"\"");
}

TEST(Lexer, TracksPositions) {
  auto toks = lex_java("a\n  bb  c", LexMode::kStrict);
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[1].line, 2);
  EXPECT_EQ(toks[1].column, 2);
  EXPECT_EQ(toks[1].end_column, 4);
  EXPECT_EQ(toks[2].column, 6);
}

TEST(Lexer, StrictRejectsUnterminatedInput) {
  EXPECT_THROW(lex_java("/* never closed", LexMode::kStrict), ParseError);
  EXPECT_THROW(lex_java("\"open", LexMode::kStrict), ParseError);
  EXPECT_NO_THROW(lex_java("\"open", LexMode::kLenient));
  EXPECT_NO_THROW(lex_java("x /* open", LexMode::kLenient));
}

TEST(Lexer, KeywordTable) {
  EXPECT_TRUE(is_java_keyword("synchronized"));
  EXPECT_TRUE(is_java_keyword("instanceof"));
  EXPECT_FALSE(is_java_keyword("internal"));
  EXPECT_FALSE(is_java_keyword("true"));
}

}  // namespace
}  // namespace promoscan
