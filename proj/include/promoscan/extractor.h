#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "promoscan/catalog.h"
#include "promoscan/method_fragment.h"

namespace promoscan {

struct ExtractOptions {
  int min_lines = 10;     // minimum pretty-printed lines per fragment
  unsigned workers = 1;   // parallel file parsers
};

struct FileExtraction {
  std::vector<MethodFragment> fragments;
  std::vector<Diagnostic> diagnostics;
};

/// Extracts all body-bearing methods (constructors included) of one Java
/// compilation unit. `file_path` is the path relative to the release root.
/// When the structural recognizer gives up, a brace-matching fallback runs
/// and its fragments carry `recovered = true`.
FileExtraction extract_from_source(std::string_view source, std::string_view file_path,
                                   std::string_view release_id, int min_lines);

/// Walks every `.java` file below `source_root` and seals the resulting
/// catalog. Output is independent of traversal order and worker count.
ReleaseCatalog extract_methods(const std::filesystem::path& source_root, std::string release_id,
                               const ExtractOptions& options = {});

/// Sorted '/'-separated relative paths of the `.java` files below `root`.
std::vector<std::string> list_java_files(const std::filesystem::path& root);

}  // namespace promoscan
