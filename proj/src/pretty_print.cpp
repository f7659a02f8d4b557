#include "promoscan/pretty_print.h"

#include "promoscan/error.h"

namespace promoscan {

namespace {

bool is_any(const Token& t, std::initializer_list<std::string_view> texts) {
  if (t.kind != TokenKind::kPunct) return false;
  for (auto s : texts) {
    if (t.text == s) return true;
  }
  return false;
}

bool wants_space(const Token& prev, const Token& next) {
  if (is_any(next, {")", "]", ";", ",", ".", "...", "::"})) return false;
  if (is_any(prev, {"(", "[", ".", "::", "@", "!", "~"})) return false;
  if (next.is("[")) return false;
  if (next.is("(")) {
    return !(prev.kind == TokenKind::kIdentifier || prev.is_keyword("this") ||
             prev.is_keyword("super"));
  }
  if (is_any(next, {"++", "--"})) {
    return !(prev.kind == TokenKind::kIdentifier || is_any(prev, {")", "]"}));
  }
  if (is_any(prev, {"++", "--"})) return next.kind != TokenKind::kIdentifier;
  return true;
}

std::string join_with_single_spaces(std::span<const Token> tokens) {
  std::string out;
  for (const Token& t : tokens) {
    if (!out.empty()) out += ' ';
    out.append(t.text);
  }
  return out;
}

bool same_tokens(std::span<const Token> a, const std::vector<Token>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].text != b[i].text) return false;
  }
  return true;
}

}  // namespace

std::string render_tokens(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && wants_space(tokens[i - 1], tokens[i])) out += ' ';
    out.append(tokens[i].text);
  }
  // Gluing must never let maximal munch merge two tokens.
  if (same_tokens(tokens, lex_java(out, LexMode::kLenient))) return out;
  return join_with_single_spaces(tokens);
}

std::vector<std::string> pretty_print_tokens(std::span<const Token> tokens) {
  std::vector<std::string> lines;
  std::vector<Token> current;
  std::vector<int> paren_depth{0};
  bool closing = false;

  auto flush = [&] {
    if (!current.empty()) {
      lines.push_back(render_tokens(current));
      current.clear();
    }
  };
  auto opens_label = [&] {
    if (current.empty()) return false;
    const Token& first = current.front();
    if (!first.is_keyword("case") && !first.is_keyword("default")) return false;
    for (const Token& t : current) {
      if (t.is("?")) return false;
    }
    return true;
  };

  for (const Token& tok : tokens) {
    int& depth = paren_depth.back();
    if (tok.is("}")) {
      flush();
      current.push_back(tok);
      if (paren_depth.size() > 1) paren_depth.pop_back();
      closing = true;
      continue;
    }
    if (closing) {
      if (is_any(tok, {")", ";", ","})) {
        current.push_back(tok);
        if (tok.is(")") && depth > 0) --depth;
        if (tok.is(";") && depth == 0) {
          flush();
          closing = false;
        }
        continue;
      }
      flush();
      closing = false;
    }
    current.push_back(tok);
    if (tok.is("(")) {
      ++depth;
    } else if (tok.is(")")) {
      if (depth > 0) --depth;
    } else if (tok.is("{")) {
      flush();
      paren_depth.push_back(0);
    } else if (tok.is(";") && depth == 0) {
      flush();
    } else if (tok.is(":") && depth == 0 && opens_label()) {
      flush();
    }
  }
  flush();
  return lines;
}

std::vector<std::string> pretty_print(std::span<const std::string> method_source,
                                      std::string_view location) {
  std::string text;
  for (const auto& line : method_source) {
    text += line;
    text += '\n';
  }
  std::vector<Token> tokens;
  try {
    tokens = lex_java(text, LexMode::kStrict);
  } catch (const ParseError& e) {
    throw ParseError(std::string(location) + ": " + e.what());
  }
  long balance = 0;
  for (const Token& t : tokens) {
    if (t.is("{")) ++balance;
    if (t.is("}") && --balance < 0) break;
  }
  if (balance != 0) {
    throw ParseError(std::string(location) + ": unbalanced braces in method text");
  }
  return pretty_print_tokens(tokens);
}

}  // namespace promoscan
