#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "promoscan/catalog.h"
#include "promoscan/clone_detect.h"
#include "promoscan/percentage.h"

namespace promoscan {

/// An old non-API fragment that reappears, as a clone, as an API fragment of
/// a newer release.
struct PromotionRecord {
  std::string old_release;
  std::string new_release;
  const MethodFragment* old_fragment = nullptr;
  const MethodFragment* new_fragment = nullptr;
  CloneType clone_type = CloneType::kI;
  std::size_t matched_lines = 0;
  std::size_t nlines = 0;

  double similarity() const {
    return static_cast<double>(matched_lines) / static_cast<double>(nlines);
  }
};

/// One record per pair whose left side is in `old_new_nonapis` and NonAPI
/// and whose right side is API. Pair order is kept.
std::vector<PromotionRecord> find_promotions(std::span<const MethodFragment* const> old_new_nonapis,
                                             std::span<const ClonePair> pairs,
                                             MatchMode mode = MatchMode::kSegment);

/// Number of distinct old fragments among `records`.
std::size_t promoted_count(std::span<const PromotionRecord> records);

struct MatrixCell {
  std::size_t promoted = 0;
  Percentage percentage;
};

struct ColumnSummary {
  Percentage min;
  Percentage max;
  Percentage average;  // mean of the column's two-decimal cells, half-up
};

/// Min/max/average of a column; nullopt for an empty column.
std::optional<ColumnSummary> summarize_column(std::span<const Percentage> cells);

/// Promotion percentages per (old release, strictly later new release).
/// Columns are old releases (all but the last), rows are new releases (all
/// but the first).
class PromotionMatrix {
 public:
  PromotionMatrix() = default;
  explicit PromotionMatrix(std::vector<std::string> releases);

  const std::vector<std::string>& releases() const { return releases_; }
  std::size_t column_count() const { return releases_.empty() ? 0 : releases_.size() - 1; }

  std::size_t new_count(std::size_t old_index) const { return new_counts_.at(old_index); }
  bool column_applicable(std::size_t old_index) const { return new_counts_.at(old_index) > 0; }

  /// Cell for old release `old_index` and new release `new_index`; nullopt
  /// on or above the diagonal and in non-applicable columns.
  std::optional<MatrixCell> cell(std::size_t old_index, std::size_t new_index) const;
  std::optional<ColumnSummary> summary(std::size_t old_index) const;

  void set_new_count(std::size_t old_index, std::size_t count);
  void set_cell(std::size_t old_index, std::size_t new_index, std::size_t promoted);
  /// Recomputes the summaries from the cells.
  void finalize();

  friend bool operator==(const PromotionMatrix&, const PromotionMatrix&);

 private:
  std::vector<std::string> releases_;
  std::vector<std::size_t> new_counts_;
  std::vector<std::vector<std::optional<MatrixCell>>> cells_;  // [old][new]
  std::vector<std::optional<ColumnSummary>> summaries_;
};

struct MatrixOptions {
  MatchMode match_mode = MatchMode::kSegment;
  unsigned workers = 1;
};

/// Everything computed for one (old, new) cell, handed to a CellObserver.
struct CellResult {
  std::size_t old_index = 0;
  std::size_t new_index = 0;
  const FragmentSet* old_new_nonapis = nullptr;
  std::span<const ClonePair> pairs;
  std::span<const PromotionRecord> promotions;
  std::size_t promoted = 0;
};

using CellObserver = std::function<void(const CellResult&)>;

/// Builds the matrix: for each old release, its newly introduced non-APIs
/// (against all earlier releases) are cross-cloned with every later release.
/// Observer calls happen in (old, new) order. Throws InputError with fewer
/// than two catalogs.
PromotionMatrix promotion_matrix(std::span<const ReleaseCatalog> catalogs, const CloneConfig& config,
                                 const MatrixOptions& options = {},
                                 const CellObserver& observer = {});

struct SeriesPoint {
  std::string release_id;
  Percentage percentage;

  friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

/// Non-API percentage per release, in release order.
std::vector<SeriesPoint> percentage_series(std::span<const ReleaseCatalog> catalogs,
                                           MatchMode mode = MatchMode::kSegment);

}  // namespace promoscan
