#include "promoscan/promotion.h"

#include <algorithm>
#include <set>
#include <tuple>
#include <unordered_set>

#include "promoscan/error.h"

namespace promoscan {

std::vector<PromotionRecord> find_promotions(std::span<const MethodFragment* const> old_new_nonapis,
                                             std::span<const ClonePair> pairs, MatchMode mode) {
  std::unordered_set<const MethodFragment*> candidates(old_new_nonapis.begin(),
                                                       old_new_nonapis.end());
  std::vector<PromotionRecord> out;
  for (const ClonePair& p : pairs) {
    if (!candidates.contains(p.left)) continue;
    if (classify_interface(*p.left, mode) != InterfaceKind::kNonApi) continue;
    if (classify_interface(*p.right, mode) != InterfaceKind::kApi) continue;
    out.push_back({p.left->release_id, p.right->release_id, p.left, p.right, p.clone_type,
                   p.matched_lines, p.nlines});
  }
  return out;
}

std::size_t promoted_count(std::span<const PromotionRecord> records) {
  std::set<std::tuple<std::string_view, std::string_view, int>> distinct;
  for (const auto& r : records) {
    distinct.emplace(r.old_fragment->release_id, r.old_fragment->file_path,
                     r.old_fragment->begin_line);
  }
  return distinct.size();
}

std::optional<ColumnSummary> summarize_column(std::span<const Percentage> cells) {
  if (cells.empty()) return std::nullopt;
  auto [lo, hi] = std::minmax_element(cells.begin(), cells.end());
  std::int64_t sum = 0;
  for (Percentage p : cells) sum += p.hundredths();
  auto n = static_cast<std::int64_t>(cells.size());
  return ColumnSummary{*lo, *hi, Percentage::from_hundredths((2 * sum + n) / (2 * n))};
}

PromotionMatrix::PromotionMatrix(std::vector<std::string> releases)
    : releases_(std::move(releases)),
      new_counts_(releases_.size(), 0),
      cells_(releases_.size(), std::vector<std::optional<MatrixCell>>(releases_.size())),
      summaries_(releases_.size()) {}

std::optional<MatrixCell> PromotionMatrix::cell(std::size_t old_index, std::size_t new_index) const {
  return cells_.at(old_index).at(new_index);
}

std::optional<ColumnSummary> PromotionMatrix::summary(std::size_t old_index) const {
  return summaries_.at(old_index);
}

void PromotionMatrix::set_new_count(std::size_t old_index, std::size_t count) {
  new_counts_.at(old_index) = count;
}

void PromotionMatrix::set_cell(std::size_t old_index, std::size_t new_index, std::size_t promoted) {
  if (new_index <= old_index) throw Error("matrix cells exist only below the diagonal");
  std::size_t whole = new_counts_.at(old_index);
  if (whole == 0) {
    cells_.at(old_index).at(new_index).reset();
    return;
  }
  if (promoted > whole) throw Error("promoted count exceeds the New count");
  cells_.at(old_index).at(new_index) = MatrixCell{promoted, Percentage::of(promoted, whole)};
}

void PromotionMatrix::finalize() {
  for (std::size_t o = 0; o < releases_.size(); ++o) {
    std::vector<Percentage> column;
    for (const auto& c : cells_[o]) {
      if (c) column.push_back(c->percentage);
    }
    summaries_[o] = summarize_column(column);
  }
}

bool operator==(const PromotionMatrix& a, const PromotionMatrix& b) {
  if (a.releases_ != b.releases_ || a.new_counts_ != b.new_counts_) return false;
  for (std::size_t o = 0; o < a.cells_.size(); ++o) {
    for (std::size_t n = 0; n < a.cells_[o].size(); ++n) {
      const auto& x = a.cells_[o][n];
      const auto& y = b.cells_[o][n];
      if (x.has_value() != y.has_value()) return false;
      if (x && (x->promoted != y->promoted || x->percentage != y->percentage)) return false;
    }
  }
  return true;
}

PromotionMatrix promotion_matrix(std::span<const ReleaseCatalog> catalogs, const CloneConfig& config,
                                 const MatrixOptions& options, const CellObserver& observer) {
  if (catalogs.size() < 2) throw InputError("need >= 2 releases to build a promotion matrix");
  config.validate();
  std::vector<std::string> ids;
  for (const auto& c : catalogs) ids.push_back(c.release_id());
  PromotionMatrix matrix(ids);
  DetectOptions detect{options.workers, true};

  for (std::size_t o = 0; o + 1 < catalogs.size(); ++o) {
    FragmentSet fresh = new_nonapis(catalogs[o], catalogs.subspan(0, o), options.match_mode);
    matrix.set_new_count(o, fresh.size());
    for (std::size_t n = o + 1; n < catalogs.size(); ++n) {
      std::vector<ClonePair> pairs = cross_clones(fresh, catalogs[n], config, detect);
      std::vector<PromotionRecord> records = find_promotions(fresh, pairs, options.match_mode);
      std::size_t promoted = promoted_count(records);
      matrix.set_cell(o, n, promoted);
      if (observer) observer(CellResult{o, n, &fresh, pairs, records, promoted});
    }
  }
  matrix.finalize();
  return matrix;
}

std::vector<SeriesPoint> percentage_series(std::span<const ReleaseCatalog> catalogs, MatchMode mode) {
  std::vector<SeriesPoint> out;
  out.reserve(catalogs.size());
  for (const auto& c : catalogs) out.push_back({c.release_id(), nonapi_percentage(c, mode)});
  return out;
}

}  // namespace promoscan
