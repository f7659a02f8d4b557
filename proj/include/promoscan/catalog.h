#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "promoscan/method_fragment.h"
#include "promoscan/percentage.h"

namespace promoscan {

enum class InterfaceKind { kApi, kNonApi };

/// How `internal` is recognised in a package path. kSegment requires a whole
/// path segment equal to `internal`; kSubstring accepts any segment
/// containing it.
enum class MatchMode { kSegment, kSubstring };

std::string_view to_string(InterfaceKind kind);
std::string_view to_string(MatchMode mode);
MatchMode match_mode_from_string(std::string_view s);

InterfaceKind classify_package(std::span<const std::string> package_path,
                               MatchMode mode = MatchMode::kSegment);
InterfaceKind classify_interface(const MethodFragment& fragment,
                                 MatchMode mode = MatchMode::kSegment);

struct Diagnostic {
  std::string file_path;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// All fragments of one release. Sealed on construction: fragments are sorted
/// by location, (file_path, begin_line) is unique, and nothing changes
/// afterwards, so a catalog may be shared freely between threads. Fragment
/// addresses stay valid for the catalog's lifetime, including across moves.
class ReleaseCatalog {
 public:
  static ReleaseCatalog seal(std::string release_id, std::vector<MethodFragment> fragments,
                             std::vector<Diagnostic> diagnostics = {});

  ReleaseCatalog(ReleaseCatalog&&) noexcept = default;
  ReleaseCatalog& operator=(ReleaseCatalog&&) noexcept = default;
  ReleaseCatalog(const ReleaseCatalog&) = delete;
  ReleaseCatalog& operator=(const ReleaseCatalog&) = delete;

  const std::string& release_id() const { return release_id_; }
  std::span<const MethodFragment> fragments() const { return fragments_; }
  std::span<const Diagnostic> diagnostics() const { return diagnostics_; }
  bool empty() const { return fragments_.empty(); }

  std::size_t total_methods() const { return fragments_.size(); }
  std::size_t nonapi_methods(MatchMode mode = MatchMode::kSegment) const;

  /// Fully qualified name of fragments()[i].
  const std::string& key(std::size_t i) const { return keys_[i]; }
  /// Indices of all fragments carrying `fqn` (several only for true duplicates).
  std::span<const std::size_t> find(std::string_view fqn) const;

 private:
  ReleaseCatalog() = default;

  std::string release_id_;
  std::vector<MethodFragment> fragments_;
  std::vector<Diagnostic> diagnostics_;
  std::vector<std::string> keys_;
  std::unordered_map<std::string, std::vector<std::size_t>> index_;
  std::size_t nonapi_segment_ = 0;
};

using FragmentSet = std::vector<const MethodFragment*>;

/// Share of NonAPI fragments; throws InputError("no methods extracted") on an
/// empty catalog.
Percentage nonapi_percentage(const ReleaseCatalog& catalog, MatchMode mode = MatchMode::kSegment);

/// NonAPI fragments of `target` whose fully qualified name is not a NonAPI
/// key of any catalog in `earlier`. Catalog order is preserved.
FragmentSet new_nonapis(const ReleaseCatalog& target, std::span<const ReleaseCatalog* const> earlier,
                        MatchMode mode = MatchMode::kSegment);
FragmentSet new_nonapis(const ReleaseCatalog& target, std::span<const ReleaseCatalog> earlier,
                        MatchMode mode = MatchMode::kSegment);

}  // namespace promoscan
