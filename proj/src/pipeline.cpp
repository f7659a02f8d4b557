#include "promoscan/pipeline.h"

#include <openssl/evp.h>

#include <array>
#include <iostream>
#include <memory>

#include "promoscan/clone_detect.h"
#include "promoscan/error.h"
#include "promoscan/extractor.h"
#include "promoscan/promotion.h"
#include "promoscan/reporting.h"

namespace promoscan {

namespace fs = std::filesystem;

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), &EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1) {
      throw Error("cannot initialise SHA-256");
    }
  }

  void update(std::string_view data) {
    if (EVP_DigestUpdate(ctx_.get(), data.data(), data.size()) != 1) throw Error("SHA-256 update failed");
  }

  // Length-prefixed so that field boundaries are unambiguous.
  void field(std::string_view data) {
    update(std::to_string(data.size()));
    update(":");
    update(data);
  }

  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), md.data(), &len) != 1) throw Error("SHA-256 final failed");
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += kDigits[md[i] >> 4];
      out += kDigits[md[i] & 15];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

std::string pair_stem(const std::string& old_id, const std::string& new_id) {
  return old_id + "__" + new_id;
}

class BundleWriter {
 public:
  explicit BundleWriter(fs::path root) : root_(std::move(root)) {}

  void write(const fs::path& relative, std::string_view content) {
    fs::path target = root_ / relative;
    fs::create_directories(target.parent_path());
    write_atomic(target, content);
    written_.push_back(relative);
  }

  std::vector<fs::path> take() { return std::move(written_); }

 private:
  fs::path root_;
  std::vector<fs::path> written_;
};

}  // namespace

std::string source_tree_digest(const fs::path& root, std::string_view release_id, int min_lines) {
  Sha256 h;
  h.field(kExtractorVersion);
  h.field(release_id);
  h.field(std::to_string(min_lines));
  for (const std::string& rel : list_java_files(root)) {
    std::string text = read_text_file(root / rel);
    h.field(rel);
    h.field(text);
  }
  return h.hex();
}

ReleaseCatalog load_or_extract(const fs::path& root, const std::string& release_id, int min_lines,
                               unsigned workers, const std::optional<fs::path>& cache_dir) {
  if (!cache_dir) return extract_methods(root, release_id, {min_lines, workers});
  if (!fs::is_directory(root)) {
    throw InputError("source root '" + root.string() + "' is not a readable directory");
  }
  fs::path entry = *cache_dir / (source_tree_digest(root, release_id, min_lines) + ".json");
  if (fs::exists(entry)) {
    try {
      return parse_catalog_json(read_text_file(entry));
    } catch (const InputError& e) {
      std::cerr << "warning: ignoring unreadable cache entry " << entry.string() << ": "
                << e.what() << "\n";
    }
  }
  ReleaseCatalog catalog = extract_methods(root, release_id, {min_lines, workers});
  fs::create_directories(*cache_dir);
  write_atomic(entry, catalog_json(catalog));
  return catalog;
}

PipelineResult run_pipeline(const ReleaseManifest& manifest, const PipelineOptions& options) {
  manifest.config.validate();
  if (manifest.releases.empty()) throw InputError("manifest lists no releases");
  const MatchMode mode = manifest.match_mode;
  std::optional<fs::path> cache;
  if (options.use_cache) cache = manifest.cache_dir.value_or(manifest.output / ".cache");

  PipelineResult result;
  std::vector<ReleaseCatalog> catalogs;
  for (const ReleaseEntry& r : manifest.releases) {
    try {
      ReleaseCatalog c = load_or_extract(r.source_root, r.id, manifest.config.min_lines,
                                         options.workers, cache);
      if (c.empty()) throw InputError("no methods extracted");
      catalogs.push_back(std::move(c));
    } catch (const InputError& e) {
      std::string message = "release " + r.id + ": " + e.what();
      if (!options.keep_going) throw InputError(message);
      std::cerr << "error: " << message << "\n";
      result.failures.push_back({r.id, e.what()});
    }
  }

  BundleWriter out(manifest.output);
  for (std::size_t i = 0; i < catalogs.size(); ++i) {
    const ReleaseCatalog& c = catalogs[i];
    out.write(fs::path("catalogs") / (c.release_id() + ".json"), catalog_json(c));
    out.write(fs::path("methods") / (c.release_id() + ".xml"), method_report_xml(c, mode));
    FragmentSet fresh = new_nonapis(c, std::span(catalogs).subspan(0, i), mode);
    out.write(fs::path("new_nonapis") / (c.release_id() + ".json"),
              fragment_set_json(c.release_id(), fresh));
  }

  std::vector<SeriesPoint> series = percentage_series(catalogs, mode);
  out.write("series.csv", series_csv(series));
  out.write("series.json", series_json(series));
  for (const SeriesPoint& p : series) {
    std::cerr << p.release_id << ": " << catalogs[&p - series.data()].total_methods()
              << " methods, " << p.percentage.str() << "% non-API\n";
  }

  if (catalogs.size() >= 2) {
    auto observer = [&](const CellResult& cell) {
      const std::string& o = catalogs[cell.old_index].release_id();
      const std::string& n = catalogs[cell.new_index].release_id();
      XmlAttributes attrs{{"old", o}, {"new", n}};
      std::string stem = pair_stem(o, n);
      out.write(fs::path("clones") / (stem + ".xml"), clone_report_xml(cell.pairs, attrs, mode));
      out.write(fs::path("clones") / (stem + ".json"), clone_pairs_json(cell.pairs, attrs, mode));
      out.write(fs::path("promotions") / (stem + ".json"),
                promotions_json(cell.promotions, cell.promoted, mode));
    };
    PromotionMatrix matrix =
        promotion_matrix(catalogs, manifest.config, {mode, options.workers}, observer);
    out.write("matrix.csv", matrix_csv(matrix));
    out.write("matrix.json", matrix_json(matrix));
  }

  result.written = out.take();
  return result;
}

}  // namespace promoscan
