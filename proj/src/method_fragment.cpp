#include "promoscan/method_fragment.h"

#include <tuple>

#include "promoscan/error.h"

namespace promoscan {

std::string_view to_string(Visibility v) {
  switch (v) {
    case Visibility::kPublic:
      return "public";
    case Visibility::kProtected:
      return "protected";
    case Visibility::kPackagePrivate:
      return "package-private";
    case Visibility::kPrivate:
      return "private";
  }
  return "package-private";
}

Visibility visibility_from_string(std::string_view s) {
  if (s == "public") return Visibility::kPublic;
  if (s == "protected") return Visibility::kProtected;
  if (s == "private") return Visibility::kPrivate;
  if (s == "package-private") return Visibility::kPackagePrivate;
  throw InputError("unknown visibility '" + std::string(s) + "'");
}

std::string MethodFragment::signature() const {
  if (pretty_lines.empty()) return {};
  std::string head = pretty_lines.front();
  if (head.ends_with("{")) head.pop_back();
  while (!head.empty() && head.back() == ' ') head.pop_back();
  return head;
}

std::string fully_qualified_name(const MethodFragment& fragment) {
  std::string out;
  for (const auto& seg : fragment.package_path) {
    out += seg;
    out += '.';
  }
  for (std::size_t i = 0; i < fragment.type_nesting.size(); ++i) {
    if (i > 0) out += '.';
    out += fragment.type_nesting[i];
  }
  if (fragment.type_nesting.empty() && !out.empty()) out.pop_back();
  out += '#';
  out += fragment.method_name;
  out += '(';
  for (std::size_t i = 0; i < fragment.param_types.size(); ++i) {
    if (i > 0) out += ',';
    out += fragment.param_types[i];
  }
  out += ')';
  return out;
}

std::vector<std::string> package_path_of(std::string_view file_path) {
  std::vector<std::string> segments;
  std::size_t start = 0;
  while (true) {
    std::size_t slash = file_path.find('/', start);
    if (slash == std::string_view::npos) break;
    if (slash > start) segments.emplace_back(file_path.substr(start, slash - start));
    start = slash + 1;
  }
  return segments;
}

std::vector<std::string> slice_source(std::string_view file_text, const MethodFragment& fragment) {
  std::vector<std::string> lines;
  int line_no = 1;
  std::size_t pos = 0;
  while (pos <= file_text.size() && line_no <= fragment.end_line) {
    std::size_t nl = file_text.find('\n', pos);
    std::size_t end = nl == std::string_view::npos ? file_text.size() : nl;
    if (line_no >= fragment.begin_line) {
      std::string_view line = file_text.substr(pos, end - pos);
      std::size_t from = line_no == fragment.begin_line ? static_cast<std::size_t>(fragment.begin_column) : 0;
      std::size_t to = line_no == fragment.end_line ? static_cast<std::size_t>(fragment.end_column) : line.size();
      from = std::min(from, line.size());
      to = std::min(std::max(to, from), line.size());
      lines.emplace_back(line.substr(from, to - from));
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
    ++line_no;
  }
  return lines;
}

bool location_less(const MethodFragment& a, const MethodFragment& b) {
  return std::tie(a.file_path, a.begin_line, a.begin_column) <
         std::tie(b.file_path, b.begin_line, b.begin_column);
}

}  // namespace promoscan
