#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace promoscan {

enum class TokenKind : std::uint8_t {
  kIdentifier,
  kKeyword,
  kNumber,
  kString,
  kChar,
  kBoolNullLiteral,  // true, false, null
  kPunct,
};

struct Token {
  TokenKind kind;
  std::string_view text;
  // 1-based line, 0-based byte column of the first and one-past-last byte.
  int line = 0;
  int column = 0;
  int end_line = 0;
  int end_column = 0;

  bool is(std::string_view t) const { return kind == TokenKind::kPunct && text == t; }
  bool is_keyword(std::string_view k) const { return kind == TokenKind::kKeyword && text == k; }
  bool is_literal() const {
    return kind == TokenKind::kNumber || kind == TokenKind::kString || kind == TokenKind::kChar ||
           kind == TokenKind::kBoolNullLiteral;
  }
  bool is_word() const {
    return kind == TokenKind::kIdentifier || kind == TokenKind::kKeyword ||
           kind == TokenKind::kBoolNullLiteral || kind == TokenKind::kNumber;
  }
};

enum class LexMode {
  // Unterminated comments, strings and character literals raise ParseError.
  kStrict,
  // Unterminated strings end at the line end, unterminated comments at EOF.
  kLenient,
};

/// Java tokenizer. Comments and whitespace are dropped; token texts are views
/// into `source`, which must outlive the result.
std::vector<Token> lex_java(std::string_view source, LexMode mode = LexMode::kStrict);

bool is_java_keyword(std::string_view word);

}  // namespace promoscan
