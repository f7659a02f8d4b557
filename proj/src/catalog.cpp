#include "promoscan/catalog.h"

#include <algorithm>
#include <unordered_set>

#include "promoscan/error.h"

namespace promoscan {

std::string_view to_string(InterfaceKind kind) {
  return kind == InterfaceKind::kNonApi ? "nonapi" : "api";
}

std::string_view to_string(MatchMode mode) {
  return mode == MatchMode::kSubstring ? "substring" : "segment";
}

MatchMode match_mode_from_string(std::string_view s) {
  if (s == "segment") return MatchMode::kSegment;
  if (s == "substring") return MatchMode::kSubstring;
  throw InputError("unknown match mode '" + std::string(s) + "' (expected segment|substring)");
}

InterfaceKind classify_package(std::span<const std::string> package_path, MatchMode mode) {
  for (const auto& seg : package_path) {
    bool hit = mode == MatchMode::kSegment ? seg == "internal"
                                           : seg.find("internal") != std::string::npos;
    if (hit) return InterfaceKind::kNonApi;
  }
  return InterfaceKind::kApi;
}

InterfaceKind classify_interface(const MethodFragment& fragment, MatchMode mode) {
  return classify_package(fragment.package_path, mode);
}

ReleaseCatalog ReleaseCatalog::seal(std::string release_id, std::vector<MethodFragment> fragments,
                                    std::vector<Diagnostic> diagnostics) {
  ReleaseCatalog cat;
  cat.release_id_ = std::move(release_id);
  std::sort(fragments.begin(), fragments.end(), location_less);

  cat.fragments_.reserve(fragments.size());
  for (auto& f : fragments) {
    if (!cat.fragments_.empty()) {
      const MethodFragment& prev = cat.fragments_.back();
      if (prev.file_path == f.file_path && prev.begin_line == f.begin_line) {
        diagnostics.push_back({f.file_path, "dropped method '" + f.method_name + "' at line " +
                                                std::to_string(f.begin_line) +
                                                ": another method starts on the same line"});
        continue;
      }
    }
    if (f.pretty_lines.empty()) {
      throw ParseError(f.file_path + ":" + std::to_string(f.begin_line) +
                       ": fragment without body text");
    }
    cat.fragments_.push_back(std::move(f));
  }
  cat.diagnostics_ = std::move(diagnostics);

  cat.keys_.reserve(cat.fragments_.size());
  for (std::size_t i = 0; i < cat.fragments_.size(); ++i) {
    const MethodFragment& f = cat.fragments_[i];
    cat.keys_.push_back(fully_qualified_name(f));
    cat.index_[cat.keys_.back()].push_back(i);
    if (classify_interface(f) == InterfaceKind::kNonApi) ++cat.nonapi_segment_;
  }
  return cat;
}

std::size_t ReleaseCatalog::nonapi_methods(MatchMode mode) const {
  if (mode == MatchMode::kSegment) return nonapi_segment_;
  return static_cast<std::size_t>(
      std::count_if(fragments_.begin(), fragments_.end(), [mode](const MethodFragment& f) {
        return classify_interface(f, mode) == InterfaceKind::kNonApi;
      }));
}

std::span<const std::size_t> ReleaseCatalog::find(std::string_view fqn) const {
  auto it = index_.find(std::string(fqn));
  if (it == index_.end()) return {};
  return it->second;
}

Percentage nonapi_percentage(const ReleaseCatalog& catalog, MatchMode mode) {
  if (catalog.empty()) throw InputError("no methods extracted");
  return Percentage::of(catalog.nonapi_methods(mode), catalog.total_methods());
}

FragmentSet new_nonapis(const ReleaseCatalog& target, std::span<const ReleaseCatalog* const> earlier,
                        MatchMode mode) {
  std::unordered_set<std::string_view> old_keys;
  for (const ReleaseCatalog* cat : earlier) {
    auto frags = cat->fragments();
    for (std::size_t i = 0; i < frags.size(); ++i) {
      if (classify_interface(frags[i], mode) == InterfaceKind::kNonApi) old_keys.insert(cat->key(i));
    }
  }
  FragmentSet out;
  auto frags = target.fragments();
  for (std::size_t i = 0; i < frags.size(); ++i) {
    if (classify_interface(frags[i], mode) != InterfaceKind::kNonApi) continue;
    if (!old_keys.contains(target.key(i))) out.push_back(&frags[i]);
  }
  return out;
}

FragmentSet new_nonapis(const ReleaseCatalog& target, std::span<const ReleaseCatalog> earlier,
                        MatchMode mode) {
  std::vector<const ReleaseCatalog*> ptrs;
  ptrs.reserve(earlier.size());
  for (const auto& c : earlier) ptrs.push_back(&c);
  return new_nonapis(target, std::span<const ReleaseCatalog* const>(ptrs), mode);
}

}  // namespace promoscan
