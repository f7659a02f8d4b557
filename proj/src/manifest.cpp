#include "promoscan/manifest.h"

#include <charconv>
#include <set>
#include <sstream>

#include "promoscan/error.h"
#include "promoscan/reporting.h"

namespace promoscan {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool valid_date(std::string_view d) {
  if (d.size() != 10 || d[4] != '-' || d[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (d[i] < '0' || d[i] > '9') return false;
  }
  int month = (d[5] - '0') * 10 + (d[6] - '0');
  int day = (d[8] - '0') * 10 + (d[9] - '0');
  return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

class ManifestParser {
 public:
  explicit ManifestParser(fs::path base) : base_(std::move(base)) { manifest_.output = base_ / "out"; }

  ReleaseManifest run(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no_;
      std::string_view line = raw;
      if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        section(line);
      } else if (section_ == Section::kConfig) {
        config_line(line);
      } else if (section_ == Section::kReleases) {
        release_line(line);
      } else {
        fail("entry outside of a section");
      }
    }
    manifest_.config.validate();
    return std::move(manifest_);
  }

 private:
  enum class Section { kNone, kConfig, kReleases };

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("manifest line " + std::to_string(line_no_) + ": " + what);
  }

  fs::path resolve(std::string_view p) const {
    fs::path path{std::string(p)};
    return path.is_absolute() ? path : base_ / path;
  }

  void section(std::string_view line) {
    if (line == "[config]") {
      section_ = Section::kConfig;
    } else if (line == "[releases]") {
      section_ = Section::kReleases;
    } else {
      fail("unknown section " + std::string(line));
    }
  }

  void config_line(std::string_view line) {
    auto eq = line.find('=');
    if (eq == std::string_view::npos) fail("expected key = value");
    std::string key{trim(line.substr(0, eq))};
    std::string_view value = trim(line.substr(eq + 1));
    if (value.empty()) fail("empty value for " + key);
    try {
      auto& cfg = manifest_.config;
      if (key == "min_lines") {
        int v = 0;
        auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
        if (ec != std::errc() || ptr != value.data() + value.size()) fail("bad min_lines");
        cfg.min_lines = v;
      } else if (key == "type3_threshold") {
        std::size_t used = 0;
        std::string s(value);
        cfg.type3_threshold = std::stod(s, &used);
        if (used != s.size()) fail("bad type3_threshold");
      } else if (key == "rename_mode") {
        cfg.rename_mode = rename_mode_from_string(value);
      } else if (key == "max_type") {
        cfg.max_type = clone_type_from_string(value);
      } else if (key == "match_mode") {
        manifest_.match_mode = match_mode_from_string(value);
      } else if (key == "output") {
        manifest_.output = resolve(value);
      } else if (key == "cache_dir") {
        manifest_.cache_dir = resolve(value);
      } else {
        fail("unknown key " + key);
      }
    } catch (const InputError&) {
      throw;
    } catch (const std::exception&) {
      fail("bad value for " + key);
    }
  }

  void release_line(std::string_view line) {
    std::istringstream fields{std::string(line)};
    std::vector<std::string> parts;
    for (std::string f; fields >> f;) parts.push_back(f);
    if (parts.size() < 2 || parts.size() > 3) fail("expected: id root [YYYY-MM-DD]");
    ReleaseEntry e{parts[0], resolve(parts[1]), std::nullopt};
    if (!ids_.insert(e.id).second) fail("duplicate release id " + e.id);
    if (parts.size() == 3) {
      if (!valid_date(parts[2])) fail("bad date " + parts[2]);
      if (last_date_ && parts[2] < *last_date_) {
        fail("release " + e.id + " is dated before the release listed above it");
      }
      last_date_ = parts[2];
      e.date = parts[2];
    }
    manifest_.releases.push_back(std::move(e));
  }

  fs::path base_;
  ReleaseManifest manifest_;
  Section section_ = Section::kNone;
  int line_no_ = 0;
  std::set<std::string> ids_;
  std::optional<std::string> last_date_;
};

}  // namespace

ReleaseManifest parse_manifest(std::string_view text, const fs::path& base_dir) {
  return ManifestParser(base_dir).run(text);
}

ReleaseManifest load_manifest(const fs::path& path) {
  return parse_manifest(read_text_file(path), path.parent_path());
}

}  // namespace promoscan
