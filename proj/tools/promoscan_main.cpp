// promoscan: detect non-API methods promoted to API across releases.

#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "promoscan/catalog.h"
#include "promoscan/clone_detect.h"
#include "promoscan/error.h"
#include "promoscan/extractor.h"
#include "promoscan/manifest.h"
#include "promoscan/pipeline.h"
#include "promoscan/promotion.h"
#include "promoscan/reporting.h"

namespace fs = std::filesystem;
using namespace promoscan;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInput = 2, kInternal = 3 };

struct Flags {
  int min_lines = 10;
  double type3_threshold = 0.70;
  std::string rename_mode = "blind";
  std::string max_type = "III";
  std::string match_mode = "segment";
  unsigned workers = 1;
  std::string out;
  std::string format;
};

struct Handles {
  CLI::Option* min_lines = nullptr;
  CLI::Option* type3_threshold = nullptr;
  CLI::Option* rename_mode = nullptr;
  CLI::Option* max_type = nullptr;
  CLI::Option* match_mode = nullptr;
};

void add_match_mode(CLI::App* cmd, Flags& f, Handles& h) {
  h.match_mode = cmd->add_option("--match-mode", f.match_mode, "segment | substring")
                     ->check(CLI::IsMember({"segment", "substring"}));
}

void add_clone_flags(CLI::App* cmd, Flags& f, Handles& h) {
  h.min_lines = cmd->add_option("--min-lines", f.min_lines, "minimum pretty-printed lines")
                    ->check(CLI::PositiveNumber);
  h.type3_threshold =
      cmd->add_option("--type3-threshold", f.type3_threshold, "Type-III similarity threshold");
  h.rename_mode = cmd->add_option("--rename-mode", f.rename_mode, "blind | consistent")
                      ->check(CLI::IsMember({"blind", "consistent"}));
  h.max_type = cmd->add_option("--max-type", f.max_type, "I | II | III")
                   ->check(CLI::IsMember({"I", "II", "III", "1", "2", "3"}));
  add_match_mode(cmd, f, h);
}

void add_workers(CLI::App* cmd, Flags& f) {
  cmd->add_option("--workers", f.workers, "parallel workers")->check(CLI::PositiveNumber);
}

void add_output(CLI::App* cmd, Flags& f, const std::string& formats) {
  cmd->add_option("--out", f.out, "output file (default: standard output)");
  cmd->add_option("--format", f.format, formats);
}

CloneConfig clone_config(const Flags& f) {
  CloneConfig c;
  c.min_lines = f.min_lines;
  c.type3_threshold = f.type3_threshold;
  c.rename_mode = rename_mode_from_string(f.rename_mode);
  c.max_type = clone_type_from_string(f.max_type);
  c.validate();
  return c;
}

ReportFormat pick_format(const Flags& f, ReportFormat fallback,
                         std::initializer_list<ReportFormat> allowed) {
  ReportFormat chosen = f.format.empty() ? fallback : report_format_from_string(f.format);
  for (ReportFormat a : allowed) {
    if (a == chosen) return chosen;
  }
  throw InputError("format '" + f.format + "' is not available for this command");
}

void emit(const Flags& f, const std::string& content) {
  if (f.out.empty()) {
    std::cout << content;
    if (content.empty() || content.back() != '\n') std::cout << '\n';
    return;
  }
  fs::path target(f.out);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  write_atomic(target, content);
}

ReleaseCatalog load_catalog(const std::string& path) {
  return parse_catalog_json(read_text_file(path));
}

std::vector<ReleaseCatalog> load_catalogs(const std::vector<std::string>& paths) {
  std::vector<ReleaseCatalog> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(load_catalog(p));
  return out;
}

FragmentSet resolve_set(const ReleaseCatalog& catalog, const std::string& set_path) {
  std::map<std::pair<std::string_view, int>, const MethodFragment*> by_location;
  for (const auto& frag : catalog.fragments()) {
    by_location[{frag.file_path, frag.begin_line}] = &frag;
  }
  FragmentSet out;
  for (const auto& [file, line] : parse_fragment_set_json(read_text_file(set_path))) {
    auto it = by_location.find({file, line});
    if (it == by_location.end()) {
      throw InputError("fragment " + file + ":" + std::to_string(line) + " of '" + set_path +
                       "' is not in release " + catalog.release_id());
    }
    out.push_back(it->second);
  }
  return out;
}

XmlAttributes cross_attributes(const ReleaseCatalog& old_catalog, const ReleaseCatalog& new_catalog) {
  return {{"old", old_catalog.release_id()}, {"new", new_catalog.release_id()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"promoscan: find non-API methods promoted to API across releases"};
  app.require_subcommand(1);
  Flags f;
  Handles h;

  // extract
  std::string root;
  std::string release;
  auto* extract = app.add_subcommand("extract", "extract the method catalog of one source tree");
  extract->add_option("root", root, "release source root")->required();
  extract->add_option("--release", release, "release id")->required();
  extract->add_option("--min-lines", f.min_lines, "minimum pretty-printed lines")
      ->check(CLI::PositiveNumber);
  add_match_mode(extract, f, h);
  add_workers(extract, f);
  add_output(extract, f, "json (catalog) | method-xml");

  // classify
  std::string catalog_path;
  auto* classify = app.add_subcommand("classify", "write the method report of a catalog");
  classify->add_option("catalog", catalog_path, "catalog JSON")->required();
  add_match_mode(classify, f, h);
  add_output(classify, f, "method-xml | json");

  // new-nonapis
  std::vector<std::string> earlier;
  auto* fresh = app.add_subcommand("new-nonapis", "non-APIs of a release absent from earlier ones");
  fresh->add_option("catalog", catalog_path, "target catalog JSON")->required();
  fresh->add_option("--earlier", earlier, "catalogs of earlier releases");
  add_match_mode(fresh, f, h);
  add_output(fresh, f, "json");

  // clones
  auto* clones = app.add_subcommand("clones", "clone pairs within one release");
  clones->add_option("catalog", catalog_path, "catalog JSON")->required();
  add_clone_flags(clones, f, h);
  add_workers(clones, f);
  add_output(clones, f, "clone-xml | json");

  // cross-clones and promotions
  std::string old_path;
  std::string old_set_path;
  std::string new_path;
  auto add_cross = [&](CLI::App* cmd) {
    cmd->add_option("--old", old_path, "old catalog JSON")->required();
    cmd->add_option("--old-set", old_set_path, "fragment set of the old release (new-nonapis)");
    cmd->add_option("--new", new_path, "new catalog JSON")->required();
    add_clone_flags(cmd, f, h);
    add_workers(cmd, f);
  };
  auto* cross = app.add_subcommand("cross-clones", "clone pairs between two releases");
  add_cross(cross);
  add_output(cross, f, "clone-xml | json");
  auto* promotions = app.add_subcommand("promotions", "old non-APIs cloned as new APIs");
  add_cross(promotions);
  add_output(promotions, f, "json");

  // matrix and series
  std::vector<std::string> catalog_paths;
  auto* matrix = app.add_subcommand("matrix", "promotion matrix over releases in order");
  matrix->add_option("catalogs", catalog_paths, "catalog JSON files, oldest first")->required();
  add_clone_flags(matrix, f, h);
  add_workers(matrix, f);
  add_output(matrix, f, "matrix-csv | json");
  auto* series = app.add_subcommand("series", "non-API percentage per release");
  series->add_option("catalogs", catalog_paths, "catalog JSON files, oldest first")->required();
  add_match_mode(series, f, h);
  add_output(series, f, "series-csv | json");

  // run
  std::string manifest_path;
  bool keep_going = false;
  bool no_cache = false;
  auto* run = app.add_subcommand("run", "run every stage over a release manifest");
  run->add_option("manifest", manifest_path, "manifest file")->required();
  add_clone_flags(run, f, h);
  add_workers(run, f);
  run->add_option("--out", f.out, "output directory (overrides the manifest)");
  run->add_flag("--keep-going", keep_going, "skip failing releases instead of stopping");
  run->add_flag("--no-cache", no_cache, "always re-extract");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (extract->parsed()) {
      ReleaseCatalog c = extract_methods(root, release, {f.min_lines, f.workers});
      ReportFormat fmt = pick_format(f, ReportFormat::kJson, {ReportFormat::kJson, ReportFormat::kMethodXml});
      emit(f, fmt == ReportFormat::kJson ? catalog_json(c)
                                         : method_report_xml(c, match_mode_from_string(f.match_mode)));
    } else if (classify->parsed()) {
      ReleaseCatalog c = load_catalog(catalog_path);
      ReportFormat fmt =
          pick_format(f, ReportFormat::kMethodXml, {ReportFormat::kMethodXml, ReportFormat::kJson});
      emit(f, fmt == ReportFormat::kJson ? catalog_json(c)
                                         : method_report_xml(c, match_mode_from_string(f.match_mode)));
    } else if (fresh->parsed()) {
      pick_format(f, ReportFormat::kJson, {ReportFormat::kJson});
      ReleaseCatalog target = load_catalog(catalog_path);
      std::vector<ReleaseCatalog> before = load_catalogs(earlier);
      FragmentSet set = new_nonapis(target, before, match_mode_from_string(f.match_mode));
      emit(f, fragment_set_json(target.release_id(), set));
    } else if (clones->parsed()) {
      ReportFormat fmt =
          pick_format(f, ReportFormat::kCloneXml, {ReportFormat::kCloneXml, ReportFormat::kJson});
      CloneConfig config = clone_config(f);
      MatchMode mode = match_mode_from_string(f.match_mode);
      ReleaseCatalog c = load_catalog(catalog_path);
      auto pairs = detect_clones_within(c, config, {f.workers, true});
      XmlAttributes attrs{{"release", c.release_id()}};
      emit(f, fmt == ReportFormat::kJson ? clone_pairs_json(pairs, attrs, mode)
                                         : clone_report_xml(pairs, attrs, mode));
    } else if (cross->parsed() || promotions->parsed()) {
      ReportFormat fmt = cross->parsed()
                             ? pick_format(f, ReportFormat::kCloneXml,
                                           {ReportFormat::kCloneXml, ReportFormat::kJson})
                             : pick_format(f, ReportFormat::kJson, {ReportFormat::kJson});
      CloneConfig config = clone_config(f);
      MatchMode mode = match_mode_from_string(f.match_mode);
      ReleaseCatalog old_catalog = load_catalog(old_path);
      ReleaseCatalog new_catalog = load_catalog(new_path);
      FragmentSet old_set =
          old_set_path.empty() ? all_fragments(old_catalog) : resolve_set(old_catalog, old_set_path);
      auto pairs = cross_clones(old_set, new_catalog, config, {f.workers, true});
      if (cross->parsed()) {
        XmlAttributes attrs = cross_attributes(old_catalog, new_catalog);
        emit(f, fmt == ReportFormat::kJson ? clone_pairs_json(pairs, attrs, mode)
                                           : clone_report_xml(pairs, attrs, mode));
      } else {
        auto records = find_promotions(old_set, pairs, mode);
        emit(f, promotions_json(records, promoted_count(records), mode));
      }
    } else if (matrix->parsed()) {
      ReportFormat fmt =
          pick_format(f, ReportFormat::kMatrixCsv, {ReportFormat::kMatrixCsv, ReportFormat::kJson});
      CloneConfig config = clone_config(f);
      std::vector<ReleaseCatalog> cats = load_catalogs(catalog_paths);
      PromotionMatrix m =
          promotion_matrix(cats, config, {match_mode_from_string(f.match_mode), f.workers});
      emit(f, fmt == ReportFormat::kJson ? matrix_json(m) : matrix_csv(m));
    } else if (series->parsed()) {
      ReportFormat fmt =
          pick_format(f, ReportFormat::kSeriesCsv, {ReportFormat::kSeriesCsv, ReportFormat::kJson});
      std::vector<ReleaseCatalog> cats = load_catalogs(catalog_paths);
      auto points = percentage_series(cats, match_mode_from_string(f.match_mode));
      emit(f, fmt == ReportFormat::kJson ? series_json(points) : series_csv(points));
    } else if (run->parsed()) {
      ReleaseManifest m = load_manifest(manifest_path);
      if (h.min_lines->count()) m.config.min_lines = f.min_lines;
      if (h.type3_threshold->count()) m.config.type3_threshold = f.type3_threshold;
      if (h.rename_mode->count()) m.config.rename_mode = rename_mode_from_string(f.rename_mode);
      if (h.max_type->count()) m.config.max_type = clone_type_from_string(f.max_type);
      if (h.match_mode->count()) m.match_mode = match_mode_from_string(f.match_mode);
      if (!f.out.empty()) {
        if (!m.cache_dir) m.cache_dir = fs::path(f.out) / ".cache";
        m.output = f.out;
      }
      PipelineResult r = run_pipeline(m, {f.workers, keep_going, !no_cache});
      std::cerr << "wrote " << r.written.size() << " files to " << m.output.string() << "\n";
      if (!r.failures.empty()) {
        std::cerr << r.failures.size() << " release(s) failed\n";
        return kInput;
      }
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
