#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promoscan/catalog.h"
#include "promoscan/clone_detect.h"

namespace promoscan {

struct ReleaseEntry {
  std::string id;
  std::filesystem::path source_root;  // resolved against the manifest directory
  std::optional<std::string> date;    // YYYY-MM-DD
};

/// A release inventory plus analysis settings, read from a plain text file:
///
///   # comment
///   [config]
///   min_lines = 10
///   type3_threshold = 0.70
///   rename_mode = blind
///   max_type = III
///   match_mode = segment
///   output = out
///   cache_dir = out/.cache
///
///   [releases]
///   E-1.0   eclipse-1.0/plugins   2001-11-07
///
/// Release lines are `id root [date]`, in chronological order.
struct ReleaseManifest {
  std::vector<ReleaseEntry> releases;
  CloneConfig config;
  MatchMode match_mode = MatchMode::kSegment;
  std::filesystem::path output;  // defaults to <manifest dir>/out
  std::optional<std::filesystem::path> cache_dir;
};

/// Parses manifest text; relative paths resolve against `base_dir`. Throws
/// InputError with a line number on any malformed entry, duplicate release
/// id, or decreasing date.
ReleaseManifest parse_manifest(std::string_view text, const std::filesystem::path& base_dir);
ReleaseManifest load_manifest(const std::filesystem::path& path);

}  // namespace promoscan
