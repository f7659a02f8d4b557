#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promoscan/catalog.h"
#include "promoscan/manifest.h"

namespace promoscan {

/// Bumped whenever extraction output may change; part of every cache key.
inline constexpr std::string_view kExtractorVersion = "promoscan-extractor/1";

/// Hex SHA-256 over the `.java` files below `root` (sorted relative path,
/// size, content), the extractor version, `min_lines` and `release_id`.
std::string source_tree_digest(const std::filesystem::path& root, std::string_view release_id,
                               int min_lines);

/// Extracts a release, reusing `<cache_dir>/<digest>.json` when present.
ReleaseCatalog load_or_extract(const std::filesystem::path& root, const std::string& release_id,
                               int min_lines, unsigned workers,
                               const std::optional<std::filesystem::path>& cache_dir);

struct PipelineOptions {
  unsigned workers = 1;
  bool keep_going = false;
  bool use_cache = true;
};

struct ReleaseFailure {
  std::string release_id;
  std::string message;
};

struct PipelineResult {
  std::vector<std::filesystem::path> written;  // relative to the output directory
  std::vector<ReleaseFailure> failures;        // only populated with keep_going
};

/// Runs every stage over the manifest and writes the report bundle:
///
///   catalogs/<id>.json  methods/<id>.xml  new_nonapis/<id>.json
///   series.csv  series.json
///   clones/<old>__<new>.xml|.json  promotions/<old>__<new>.json
///   matrix.csv  matrix.json            (only with two or more releases)
///
/// A release that cannot be read or yields no methods throws InputError,
/// unless keep_going is set, in which case it is recorded and left out.
PipelineResult run_pipeline(const ReleaseManifest& manifest, const PipelineOptions& options = {});

}  // namespace promoscan
