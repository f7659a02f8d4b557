#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "promoscan/catalog.h"
#include "promoscan/method_fragment.h"

namespace promoscan {

enum class CloneType { kI = 1, kII = 2, kIII = 3 };
enum class RenameMode { kBlind, kConsistent };

std::string_view to_string(CloneType type);
std::string_view to_string(RenameMode mode);
CloneType clone_type_from_string(std::string_view s);  // "I"|"II"|"III" or "1"|"2"|"3"
RenameMode rename_mode_from_string(std::string_view s);

struct CloneConfig {
  int min_lines = 10;
  double type3_threshold = 0.70;
  RenameMode rename_mode = RenameMode::kBlind;
  CloneType max_type = CloneType::kIII;

  /// Throws InputError unless 0 < type3_threshold <= 1 and min_lines >= 1.
  void validate() const;
};

struct PairClass {
  CloneType clone_type;
  std::size_t matched_lines;  // LCS of the renamed lines
  std::size_t nlines;         // pretty line count of the larger fragment

  double similarity() const {
    return static_cast<double>(matched_lines) / static_cast<double>(nlines);
  }
};

struct ClonePair {
  const MethodFragment* left = nullptr;
  const MethodFragment* right = nullptr;
  CloneType clone_type = CloneType::kI;
  std::size_t matched_lines = 0;
  std::size_t nlines = 0;

  double similarity() const {
    return static_cast<double>(matched_lines) / static_cast<double>(nlines);
  }
  /// floor(100 * similarity), computed exactly.
  int similarity_percent() const { return static_cast<int>(100 * matched_lines / nlines); }
};

/// Type-II normal form of pretty-printed lines. Blind mode maps every
/// identifier to `X`; consistent mode numbers identifiers `X1, X2, ...` in
/// first-occurrence order. Literals become `L` in both modes. An identifier
/// spelled `L` is read as the literal placeholder, which keeps the blind
/// form idempotent.
std::vector<std::string> normalize_type2(std::span<const std::string> pretty_lines,
                                         RenameMode mode = RenameMode::kBlind);

/// The strictest clone type relating `a` and `b`, or nullopt when they are
/// not clones under `config` (including when the strictest type exceeds
/// config.max_type, or either side is shorter than config.min_lines).
std::optional<PairClass> classify_pair_type(const MethodFragment& a, const MethodFragment& b,
                                            const CloneConfig& config);

/// Smallest number of common lines L with L / n >= threshold, evaluated with
/// the same floating-point division the classifier uses.
std::size_t min_common_lines(std::size_t n, double threshold);

struct DetectOptions {
  unsigned workers = 1;
  // When false every pair is classified; used as the reference run.
  bool lossless_filter = true;
};

/// All unordered clone pairs among `fragments`; left is the smaller location.
std::vector<ClonePair> detect_clones_within(std::span<const MethodFragment* const> fragments,
                                            const CloneConfig& config,
                                            const DetectOptions& options = {});
std::vector<ClonePair> detect_clones_within(const ReleaseCatalog& catalog, const CloneConfig& config,
                                            const DetectOptions& options = {});

/// All (old, new) clone pairs; left is always the old fragment.
std::vector<ClonePair> cross_clones(std::span<const MethodFragment* const> old_fragments,
                                    std::span<const MethodFragment* const> new_fragments,
                                    const CloneConfig& config, const DetectOptions& options = {});
std::vector<ClonePair> cross_clones(std::span<const MethodFragment* const> old_fragments,
                                    const ReleaseCatalog& new_catalog, const CloneConfig& config,
                                    const DetectOptions& options = {});

/// Canonical pair order: left location, then right location.
bool pair_less(const ClonePair& a, const ClonePair& b);

FragmentSet all_fragments(const ReleaseCatalog& catalog);

}  // namespace promoscan
