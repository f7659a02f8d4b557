#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "promoscan/method_fragment.h"

namespace promoscan::testgen {

using Rng = std::mt19937_64;
using TokenLine = std::vector<std::string>;

/// A generated method in token form. Every body line is one pretty-printed
/// line: a simple statement, a block header ending in `{`, or a lone `}`.
struct MethodSpec {
  std::vector<std::string> modifiers;
  std::string return_type;
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;  // (type, name)
  std::vector<TokenLine> body;

  /// Pretty line count: header + body + closing brace.
  std::size_t line_count() const { return body.size() + 2; }
  /// Indices of body lines that are simple statements (safe to edit).
  std::vector<std::size_t> simple_lines() const;
};

class JavaGen {
 public:
  explicit JavaGen(std::uint64_t seed) : rng_(seed) {}

  Rng& rng() { return rng_; }

  std::string identifier();
  std::string type_name();

  /// A method with roughly `body_lines` body lines (blocks may add a few).
  MethodSpec method(std::size_t body_lines);
  TokenLine simple_statement(const std::vector<std::string>& vars);

 private:
  TokenLine expression(const std::vector<std::string>& vars, int depth);
  std::string number();
  std::string string_literal();

  Rng rng_;
};

/// Layout knobs for rendering a spec as Java text.
struct Style {
  bool noisy = false;  // random spacing, line breaks, comments, blank lines
};

/// Renders `spec` as source text. Noisy rendering varies whitespace and
/// comments only, so every rendering is a Type-I clone of every other.
std::string render_method(const MethodSpec& spec, Rng& rng, const Style& style = {},
                          int indent = 2);

/// Renames every identifier through a fresh bijection and replaces every
/// literal. Guarantees at least one visible change.
MethodSpec rename_identifiers(const MethodSpec& spec, JavaGen& gen);

/// Replaces `edits` distinct simple statements with fresh ones.
MethodSpec edit_lines(const MethodSpec& spec, std::size_t edits, JavaGen& gen);

/// Fragment built straight from a rendered method (no file on disk).
MethodFragment make_fragment(const std::string& release, const std::string& file_path, int begin_line,
                             const std::string& method_source);

/// A Java source file and its location below a release root.
struct JavaFile {
  std::string relative_path;
  std::string text;
};

/// Wraps methods in one top-level class whose package is the file's directory.
JavaFile compilation_unit(const std::string& relative_path, const std::vector<MethodSpec>& methods,
                          Rng& rng, const Style& style = {});

void write_tree(const std::filesystem::path& root, const std::vector<JavaFile>& files);

/// Temporary directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace promoscan::testgen
