#pragma once

#include <stdexcept>
#include <string>

namespace promoscan {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad or missing input: unreadable roots, malformed manifests or reports.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Source text the lexer or method recognizer cannot make sense of.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace promoscan
