#include "promoscan/extractor.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "promoscan/error.h"
#include "promoscan/lexer.h"
#include "promoscan/pretty_print.h"

namespace promoscan {

namespace fs = std::filesystem;

namespace {

// A method located in the token stream: [first, body_close] covers the whole
// declaration including leading annotations and modifiers.
struct RawMethod {
  std::size_t first = 0;
  std::size_t name = 0;
  std::size_t params_open = 0;
  std::size_t params_close = 0;
  std::size_t body_close = 0;
  std::vector<std::string> nesting;
  Visibility visibility = Visibility::kPackagePrivate;
};

bool is_word_token(const Token& t) {
  return t.kind == TokenKind::kIdentifier || t.kind == TokenKind::kKeyword;
}

// Generic angle depth contribution, counting `>>` and `>>>` as several closes.
int angle_delta(const Token& t) {
  if (t.kind != TokenKind::kPunct) return 0;
  if (t.text == "<") return 1;
  if (t.text == ">") return -1;
  if (t.text == ">>") return -2;
  if (t.text == ">>>") return -3;
  return 0;
}

std::string join_type_tokens(std::span<const Token> toks) {
  std::string out;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (i > 0) {
      const Token& prev = toks[i - 1];
      const Token& next = toks[i];
      bool space = is_word_token(next) && (is_word_token(prev) || prev.is("?") || prev.is(")"));
      if (space) out += ' ';
    }
    out.append(toks[i].text);
  }
  return out;
}

// Splits the contents of a parameter list into parameter types.
std::vector<std::string> parameter_types(std::span<const Token> inner) {
  std::vector<std::string> types;
  std::vector<std::vector<Token>> params(1);
  int depth = 0;
  for (const Token& t : inner) {
    if (t.is("(") || t.is("[")) ++depth;
    if (t.is(")") || t.is("]")) --depth;
    depth += angle_delta(t);
    if (t.is(",") && depth == 0) {
      params.emplace_back();
      continue;
    }
    params.back().push_back(t);
  }
  if (params.size() == 1 && params.front().empty()) return types;

  for (auto& p : params) {
    std::erase_if(p, [](const Token& t) { return t.is_keyword("final"); });
    // Trailing C-style array brackets belong to the type.
    std::size_t end = p.size();
    std::size_t dims = 0;
    while (end >= 2 && p[end - 1].is("]") && p[end - 2].is("[")) {
      end -= 2;
      ++dims;
    }
    std::size_t type_end = end;
    if (end >= 2 && (p[end - 1].kind == TokenKind::kIdentifier || p[end - 1].is_keyword("this"))) {
      type_end = end - 1;
    }
    std::string type = join_type_tokens(std::span(p).subspan(0, type_end));
    for (std::size_t d = 0; d < dims; ++d) type += "[]";
    types.push_back(std::move(type));
  }
  return types;
}

class StructureRecognizer {
 public:
  explicit StructureRecognizer(const std::vector<Token>& tokens) : t_(tokens) {}

  std::vector<RawMethod> run() {
    std::size_t member = 0;
    std::size_t i = 0;
    while (i < t_.size()) {
      const Token& tok = t_[i];
      if (tok.is("(")) {
        i = match(i, "(", ")") + 1;
      } else if (tok.is("{")) {
        i = open_brace(member, i);
      } else if (tok.is("}")) {
        if (frames_.empty()) fail("unmatched '}'", tok);
        frames_.pop_back();
        member = ++i;
      } else if (tok.is(";")) {
        if (!frames_.empty()) frames_.back().enum_constants = false;
        member = ++i;
      } else if (tok.is(",") && !frames_.empty() && frames_.back().enum_constants) {
        member = ++i;
      } else {
        ++i;
      }
    }
    if (!frames_.empty()) {
      throw ParseError("type '" + frames_.back().name + "' is never closed");
    }
    return std::move(methods_);
  }

 private:
  struct Frame {
    std::string name;
    bool is_interface = false;
    bool enum_constants = false;
  };

  [[noreturn]] void fail(const std::string& what, const Token& at) const {
    throw ParseError(what + " at line " + std::to_string(at.line));
  }

  std::size_t match(std::size_t open, std::string_view o, std::string_view c) const {
    int depth = 0;
    for (std::size_t i = open; i < t_.size(); ++i) {
      if (t_[i].is(o)) ++depth;
      if (t_[i].is(c) && --depth == 0) return i;
    }
    fail("unbalanced '" + std::string(o) + "'", t_[open]);
  }

  // Member tokens at parenthesis depth zero, annotations removed. Paren
  // groups are represented by their opening token.
  std::vector<std::size_t> top_level(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> out;
    std::size_t i = from;
    while (i < to) {
      const Token& tok = t_[i];
      if (tok.is("@") && i + 1 < to && !t_[i + 1].is_keyword("interface")) {
        ++i;
        if (i < to && t_[i].kind == TokenKind::kIdentifier) ++i;
        while (i + 1 < to && t_[i].is(".") && t_[i + 1].kind == TokenKind::kIdentifier) i += 2;
        if (i < to && t_[i].is("(")) i = match(i, "(", ")") + 1;
        continue;
      }
      out.push_back(i);
      if (tok.is("(")) {
        i = match(i, "(", ")") + 1;
      } else {
        ++i;
      }
    }
    return out;
  }

  std::size_t open_brace(std::size_t& member, std::size_t brace) {
    std::vector<std::size_t> items = top_level(member, brace);

    if (auto decl = type_declaration(items)) {
      frames_.push_back(std::move(*decl));
      member = brace + 1;
      return brace + 1;
    }
    std::size_t close = match(brace, "{", "}");
    bool in_constants = !frames_.empty() && frames_.back().enum_constants;
    if (!in_constants && !frames_.empty()) {
      if (auto m = method_declaration(member, items)) {
        m->body_close = close;
        methods_.push_back(std::move(*m));
        member = close + 1;
        return close + 1;
      }
    }
    bool initializer_expression = std::any_of(items.begin(), items.end(),
                                              [&](std::size_t k) { return t_[k].is("="); });
    if (!initializer_expression && !in_constants) member = close + 1;
    return close + 1;
  }

  std::optional<Frame> type_declaration(const std::vector<std::size_t>& items) const {
    for (std::size_t k = 0; k + 1 < items.size(); ++k) {
      const Token& tok = t_[items[k]];
      const Token& next = t_[items[k + 1]];
      if (k > 0 && t_[items[k - 1]].is(".")) continue;
      bool keyword = tok.is_keyword("class") || tok.is_keyword("interface") || tok.is_keyword("enum");
      bool record = tok.kind == TokenKind::kIdentifier && tok.text == "record";
      if ((keyword || record) && next.kind == TokenKind::kIdentifier) {
        Frame f;
        f.name = std::string(next.text);
        f.is_interface = tok.is_keyword("interface");
        f.enum_constants = tok.is_keyword("enum");
        return f;
      }
    }
    return std::nullopt;
  }

  std::optional<RawMethod> method_declaration(std::size_t member,
                                              const std::vector<std::size_t>& items) const {
    auto paren = std::find_if(items.begin(), items.end(), [&](std::size_t k) { return t_[k].is("("); });
    if (paren == items.end() || paren == items.begin()) return std::nullopt;
    std::size_t name = *(paren - 1);
    if (t_[name].kind != TokenKind::kIdentifier) return std::nullopt;
    for (auto it = items.begin(); it != paren; ++it) {
      if (t_[*it].is("=") || t_[*it].is("->")) return std::nullopt;
    }
    for (auto it = paren + 1; it != items.end(); ++it) {
      const Token& tok = t_[*it];
      bool allowed = tok.kind == TokenKind::kIdentifier || tok.is_keyword("throws") ||
                     tok.is_keyword("extends") || tok.is_keyword("super") || tok.is("[") ||
                     tok.is("]") || tok.is(".") || tok.is(",") || tok.is("?") || tok.is("&") ||
                     angle_delta(tok) != 0;
      if (!allowed) return std::nullopt;
    }

    std::size_t open = *paren;
    std::size_t close = match(open, "(", ")");
    std::span<const Token> inner(t_.data() + open + 1, close - open - 1);
    if (!plausible_parameters(inner)) return std::nullopt;

    RawMethod m;
    m.first = member;
    m.name = name;
    m.params_open = open;
    m.params_close = close;
    for (const auto& f : frames_) m.nesting.push_back(f.name);
    bool explicit_visibility = false;
    for (auto it = items.begin(); it != paren; ++it) {
      const Token& tok = t_[*it];
      if (tok.is_keyword("public")) m.visibility = Visibility::kPublic;
      else if (tok.is_keyword("protected")) m.visibility = Visibility::kProtected;
      else if (tok.is_keyword("private")) m.visibility = Visibility::kPrivate;
      else continue;
      explicit_visibility = true;
    }
    if (!explicit_visibility && frames_.back().is_interface) m.visibility = Visibility::kPublic;
    return m;
  }

  // Every formal parameter needs at least a type and a name; this rejects
  // enum constants with arguments and similar look-alikes.
  static bool plausible_parameters(std::span<const Token> inner) {
    if (inner.empty()) return true;
    int depth = 0;
    std::size_t count = 0;
    for (const Token& t : inner) {
      if (t.is("(") || t.is("[")) ++depth;
      if (t.is(")") || t.is("]")) --depth;
      depth += angle_delta(t);
      if (t.is(",") && depth == 0) {
        if (count < 2) return false;
        count = 0;
        continue;
      }
      if (t.is_literal()) return false;
      ++count;
    }
    return count >= 2;
  }

  const std::vector<Token>& t_;
  std::vector<Frame> frames_;
  std::vector<RawMethod> methods_;
};

// Brace-matching fallback for files the structural recognizer rejects:
// any `name(...) [throws ...] {` not preceded by `new` or `.` opens a method.
std::vector<RawMethod> recover_methods(const std::vector<Token>& t, const std::string& file_stem) {
  std::vector<RawMethod> out;
  std::vector<std::pair<std::string, int>> types;
  int depth = 0;

  auto match_brace = [&](std::size_t open) -> std::optional<std::size_t> {
    int d = 0;
    for (std::size_t i = open; i < t.size(); ++i) {
      if (t[i].is("{")) ++d;
      if (t[i].is("}") && --d == 0) return i;
    }
    return std::nullopt;
  };
  auto statement_start = [&](std::size_t from) {
    std::size_t k = from;
    while (k > 0 && !t[k - 1].is(";") && !t[k - 1].is("{") && !t[k - 1].is("}")) --k;
    return k;
  };

  std::size_t i = 0;
  while (i < t.size()) {
    const Token& tok = t[i];
    if (tok.is("}")) {
      --depth;
      if (!types.empty() && types.back().second == depth) types.pop_back();
      ++i;
      continue;
    }
    if (!tok.is("{")) {
      ++i;
      continue;
    }
    // Type header?
    std::size_t start = statement_start(i);
    std::optional<std::string> type_name;
    for (std::size_t k = start; k + 1 < i; ++k) {
      if ((t[k].is_keyword("class") || t[k].is_keyword("interface") || t[k].is_keyword("enum")) &&
          t[k + 1].kind == TokenKind::kIdentifier && (k == 0 || !t[k - 1].is("."))) {
        type_name = std::string(t[k + 1].text);
        break;
      }
    }
    if (type_name) {
      types.emplace_back(*type_name, depth);
      ++depth;
      ++i;
      continue;
    }
    // Method header: walk back over a throws clause to the closing paren.
    std::size_t k = i;
    while (k > start && (t[k - 1].kind == TokenKind::kIdentifier || t[k - 1].is(".") ||
                         t[k - 1].is(",") || t[k - 1].is_keyword("throws"))) {
      --k;
    }
    std::optional<std::size_t> body_close;
    std::size_t open = 0;
    if (k > start && t[k - 1].is(")")) {
      int d = 0;
      std::size_t j = k - 1;
      while (true) {
        if (t[j].is(")")) ++d;
        if (t[j].is("(") && --d == 0) break;
        if (j == start) break;
        --j;
      }
      open = j;
      if (t[open].is("(") && open > start && t[open - 1].kind == TokenKind::kIdentifier &&
          (open - 1 == start || (!t[open - 2].is_keyword("new") && !t[open - 2].is(".")))) {
        body_close = match_brace(i);
      }
    }
    if (body_close) {
      RawMethod m;
      m.first = start;
      m.name = open - 1;
      m.params_open = open;
      m.params_close = k - 1;
      while (!t[m.params_close].is(")")) --m.params_close;
      m.body_close = *body_close;
      for (const auto& ty : types) m.nesting.push_back(ty.first);
      if (m.nesting.empty()) m.nesting.push_back(file_stem);
      for (std::size_t q = start; q < open; ++q) {
        if (t[q].is_keyword("public")) m.visibility = Visibility::kPublic;
        if (t[q].is_keyword("protected")) m.visibility = Visibility::kProtected;
        if (t[q].is_keyword("private")) m.visibility = Visibility::kPrivate;
      }
      out.push_back(std::move(m));
      i = *body_close + 1;
      continue;
    }
    ++depth;
    ++i;
  }
  return out;
}

MethodFragment make_fragment(const std::vector<Token>& t, const RawMethod& m,
                             std::string_view file_path, std::string_view release_id) {
  MethodFragment f;
  f.release_id = std::string(release_id);
  f.file_path = std::string(file_path);
  f.begin_line = t[m.first].line;
  f.begin_column = t[m.first].column;
  f.end_line = t[m.body_close].end_line;
  f.end_column = t[m.body_close].end_column;
  f.package_path = package_path_of(file_path);
  f.type_nesting = m.nesting;
  f.method_name = std::string(t[m.name].text);
  f.param_types = parameter_types(
      std::span<const Token>(t.data() + m.params_open + 1, m.params_close - m.params_open - 1));
  f.visibility = m.visibility;
  f.pretty_lines = pretty_print_tokens(
      std::span<const Token>(t.data() + m.first, m.body_close - m.first + 1));
  return f;
}

std::string file_stem_of(std::string_view file_path) {
  std::string stem = fs::path(std::string(file_path)).stem().string();
  return stem.empty() ? std::string("_") : stem;
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return std::move(ss).str();
}

}  // namespace

FileExtraction extract_from_source(std::string_view source, std::string_view file_path,
                                   std::string_view release_id, int min_lines) {
  FileExtraction out;
  std::vector<Token> tokens;
  std::vector<RawMethod> methods;
  bool recovered = false;
  try {
    tokens = lex_java(source, LexMode::kStrict);
    methods = StructureRecognizer(tokens).run();
  } catch (const ParseError& e) {
    recovered = true;
    out.diagnostics.push_back(
        {std::string(file_path), std::string("recovered by brace matching: ") + e.what()});
    tokens = lex_java(source, LexMode::kLenient);
    methods = recover_methods(tokens, file_stem_of(file_path));
  }
  for (const RawMethod& m : methods) {
    MethodFragment f = make_fragment(tokens, m, file_path, release_id);
    f.recovered = recovered;
    if (static_cast<int>(f.pretty_lines.size()) >= min_lines) out.fragments.push_back(std::move(f));
  }
  return out;
}

std::vector<std::string> list_java_files(const fs::path& root) {
  std::vector<std::string> files;
  std::error_code ec;
  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) throw InputError("cannot read source root '" + root.string() + "': " + ec.message());
  for (; it != fs::recursive_directory_iterator(); it.increment(ec)) {
    if (ec) break;
    const auto& entry = *it;
    std::error_code type_ec;
    // Anything that is not a directory is listed, so an unreadable entry
    // such as a dangling link surfaces as a diagnostic.
    if (entry.is_directory(type_ec)) continue;
    if (entry.path().extension() != ".java") continue;
    files.push_back(entry.path().lexically_relative(root).generic_string());
  }
  if (ec) throw InputError("error walking '" + root.string() + "': " + ec.message());
  std::sort(files.begin(), files.end());
  return files;
}

ReleaseCatalog extract_methods(const fs::path& source_root, std::string release_id,
                               const ExtractOptions& options) {
  if (options.min_lines < 1) throw InputError("min_lines must be positive");
  std::error_code ec;
  if (!fs::is_directory(source_root, ec)) {
    throw InputError("source root '" + source_root.string() + "' of release '" + release_id +
                     "' is not a readable directory");
  }
  std::vector<std::string> files = list_java_files(source_root);
  std::vector<FileExtraction> results(files.size());

  auto work = [&](std::size_t index) {
    const std::string& rel = files[index];
    auto text = read_file(source_root / fs::path(rel));
    if (!text) {
      results[index].diagnostics.push_back({rel, "cannot read file"});
      return;
    }
    results[index] = extract_from_source(*text, rel, release_id, options.min_lines);
  };

  unsigned workers = std::max(1u, options.workers);
  if (workers == 1 || files.size() < 2) {
    for (std::size_t i = 0; i < files.size(); ++i) work(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < files.size(); i += workers) work(i);
      });
    }
  }

  std::vector<MethodFragment> fragments;
  std::vector<Diagnostic> diagnostics;
  for (auto& r : results) {
    for (auto& f : r.fragments) fragments.push_back(std::move(f));
    for (auto& d : r.diagnostics) diagnostics.push_back(std::move(d));
  }
  ReleaseCatalog catalog =
      ReleaseCatalog::seal(std::move(release_id), std::move(fragments), std::move(diagnostics));
  for (const auto& d : catalog.diagnostics()) {
    std::cerr << "warning: " << catalog.release_id() << "/" << d.file_path << ": " << d.message
              << "\n";
  }
  return catalog;
}

}  // namespace promoscan
