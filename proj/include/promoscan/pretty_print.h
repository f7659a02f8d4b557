#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "promoscan/lexer.h"

namespace promoscan {

/// Renders tokens as one line. Spacing depends only on the token pair, so any
/// layout of the same token sequence renders to the same text, and re-lexing
/// the rendered line yields the same tokens.
std::string render_tokens(std::span<const Token> tokens);

/// Type-I normal form of a token sequence: one statement or brace-scope
/// header per line, `}` on its own line (absorbing a directly following
/// `)`, `;` or `,`), comments and layout gone.
std::vector<std::string> pretty_print_tokens(std::span<const Token> tokens);

/// Pretty-prints the raw text of one method, declaration through closing
/// brace. Throws ParseError naming `location` when braces do not balance.
std::vector<std::string> pretty_print(std::span<const std::string> method_source,
                                      std::string_view location = "<method>");

}  // namespace promoscan
