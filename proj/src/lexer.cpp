#include "promoscan/lexer.h"

#include <algorithm>
#include <array>
#include <cctype>

#include "promoscan/error.h"

namespace promoscan {

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract",  "assert",       "boolean",   "break",      "byte",      "case",
    "catch",     "char",         "class",     "const",      "continue",  "default",
    "do",        "double",       "else",      "enum",       "extends",   "final",
    "finally",   "float",        "for",       "goto",       "if",        "implements",
    "import",    "instanceof",   "int",       "interface",  "long",      "native",
    "new",       "package",      "private",   "protected",  "public",    "return",
    "short",     "static",       "strictfp",  "super",      "switch",    "synchronized",
    "this",      "throw",        "throws",    "transient",  "try",       "void",
    "volatile",  "while"};

// Longest first so that a linear scan yields maximal munch.
constexpr std::array<std::string_view, 37> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=",
    "<=",   ">=",  "+=",  "-=",  "*=",  "/=", "&=", "|=", "^=", "%=", "<<", ">>", "+",
    "-",    "*",   "/",   "%",   "=",   "<",  ">",  "!",  "~",  "?",  ":"};

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || std::isdigit(c); }

class Lexer {
 public:
  Lexer(std::string_view src, LexMode mode) : src_(src), mode_(mode) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    out.reserve(src_.size() / 4);
    while (true) {
      skip_trivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      line_start_ = pos_ + 1;
    }
    ++pos_;
  }

  int column() const { return static_cast<int>(pos_ - line_start_); }

  [[noreturn]] void fail(const char* what, int line) const {
    throw ParseError(std::string(what) + " starting at line " + std::to_string(line));
  }

  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        int start = line_;
        advance();
        advance();
        while (pos_ < src_.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (pos_ >= src_.size()) {
          if (mode_ == LexMode::kStrict) fail("unterminated block comment", start);
          return;
        }
        advance();
        advance();
      } else {
        return;
      }
    }
  }

  Token next() {
    Token tok{};
    tok.line = line_;
    tok.column = column();
    std::size_t begin = pos_;
    auto c = static_cast<unsigned char>(peek());

    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_part(static_cast<unsigned char>(peek()))) advance();
      std::string_view word = src_.substr(begin, pos_ - begin);
      if (word == "true" || word == "false" || word == "null") {
        tok.kind = TokenKind::kBoolNullLiteral;
      } else if (is_java_keyword(word)) {
        tok.kind = TokenKind::kKeyword;
      } else {
        tok.kind = TokenKind::kIdentifier;
      }
    } else if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      lex_number();
      tok.kind = TokenKind::kNumber;
    } else if (c == '"') {
      lex_string();
      tok.kind = TokenKind::kString;
    } else if (c == '\'') {
      lex_quoted('\'');
      tok.kind = TokenKind::kChar;
    } else {
      tok.kind = TokenKind::kPunct;
      std::string_view rest = src_.substr(pos_);
      std::size_t len = 1;
      for (std::string_view op : kOperators) {
        if (rest.starts_with(op)) {
          len = op.size();
          break;
        }
      }
      for (std::size_t i = 0; i < len; ++i) advance();
    }
    tok.text = src_.substr(begin, pos_ - begin);
    tok.end_line = line_;
    tok.end_column = column();
    return tok;
  }

  void lex_number() {
    bool hex = peek() == '0' && (peek(1) == 'x' || peek(1) == 'X');
    char prev = '\0';
    while (pos_ < src_.size()) {
      auto c = static_cast<unsigned char>(peek());
      bool exponent_sign = (c == '+' || c == '-') &&
                           (hex ? (prev == 'p' || prev == 'P') : (prev == 'e' || prev == 'E'));
      if (std::isalnum(c) || c == '_' || exponent_sign ||
          (c == '.' && peek(1) != '.')) {
        prev = static_cast<char>(c);
        advance();
      } else {
        break;
      }
    }
  }

  void lex_string() {
    if (peek(1) == '"' && peek(2) == '"') {
      int start = line_;
      for (int i = 0; i < 3; ++i) advance();
      while (pos_ < src_.size()) {
        if (peek() == '\\') {
          advance();
          if (pos_ < src_.size()) advance();
        } else if (peek() == '"' && peek(1) == '"' && peek(2) == '"') {
          for (int i = 0; i < 3; ++i) advance();
          return;
        } else {
          advance();
        }
      }
      if (mode_ == LexMode::kStrict) fail("unterminated text block", start);
      return;
    }
    lex_quoted('"');
  }

  void lex_quoted(char quote) {
    int start = line_;
    advance();
    while (pos_ < src_.size() && peek() != '\n') {
      char c = peek();
      if (c == '\\') {
        advance();
        if (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == quote) {
        advance();
        return;
      } else {
        advance();
      }
    }
    if (mode_ == LexMode::kStrict) {
      fail(quote == '"' ? "unterminated string literal" : "unterminated character literal",
           start);
    }
  }

  std::string_view src_;
  LexMode mode_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
  int line_ = 1;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> lex_java(std::string_view source, LexMode mode) {
  return Lexer(source, mode).run();
}

}  // namespace promoscan
