#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace promoscan {

enum class Visibility { kPublic, kProtected, kPackagePrivate, kPrivate };

std::string_view to_string(Visibility v);
Visibility visibility_from_string(std::string_view s);

/// One extracted method body: the unit of every downstream analysis.
///
/// A fragment is identified by (file_path, begin_line) within its release.
/// The columns pin the exact byte range inside those lines so that the raw
/// text can be sliced back out even when other members share a line.
struct MethodFragment {
  std::string release_id;
  std::string file_path;  // relative to the release root, '/' separated
  int begin_line = 0;
  int end_line = 0;
  int begin_column = 0;  // 0-based byte offset into begin_line
  int end_column = 0;    // one past the closing brace, in end_line
  std::vector<std::string> package_path;
  std::vector<std::string> type_nesting;
  std::string method_name;
  std::vector<std::string> param_types;
  Visibility visibility = Visibility::kPackagePrivate;
  bool recovered = false;  // produced by the brace-matching fallback
  std::vector<std::string> pretty_lines;

  /// Declaration header: the first pretty line without its opening brace.
  std::string signature() const;
};

/// `pkg.segments.Outer.Inner#name(T1,T2)`. Overloads get distinct keys.
std::string fully_qualified_name(const MethodFragment& fragment);

/// Directory components of a relative '/'-separated file path.
std::vector<std::string> package_path_of(std::string_view file_path);

/// Cuts a fragment's exact source range out of the full text of its file.
std::vector<std::string> slice_source(std::string_view file_text, const MethodFragment& fragment);

/// Orders by (file_path, begin_line, begin_column).
bool location_less(const MethodFragment& a, const MethodFragment& b);

}  // namespace promoscan
