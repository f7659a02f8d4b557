#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "promoscan/catalog.h"
#include "promoscan/clone_detect.h"
#include "promoscan/promotion.h"

namespace promoscan {

enum class ReportFormat { kMethodXml, kCloneXml, kMatrixCsv, kSeriesCsv, kJson };

std::string_view to_string(ReportFormat format);
ReportFormat report_format_from_string(std::string_view s);

struct ReportSink {
  std::filesystem::path destination;
  ReportFormat format = ReportFormat::kJson;
};

/// Writes `content` through a temporary file and a rename. The file always
/// ends with exactly one newline. Throws InputError naming the path.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Reads a whole file; throws InputError naming the path.
std::string read_text_file(const std::filesystem::path& path);

// Method report -----------------------------------------------------------
// <sources release=".." nmethods=".." nnonapi="..">
//   <source file="release/path" startline endline interface fqn>signature</source>

std::string method_report_xml(const ReleaseCatalog& catalog, MatchMode mode = MatchMode::kSegment);

struct MethodReportEntry {
  std::string file_path;  // relative to the release root
  int startline = 0;
  int endline = 0;
  InterfaceKind interface_kind = InterfaceKind::kApi;
  std::string fqn;
  std::string signature;

  friend bool operator==(const MethodReportEntry&, const MethodReportEntry&) = default;
};

struct MethodReport {
  std::string release_id;
  std::vector<MethodReportEntry> entries;
};

MethodReport parse_method_report(std::string_view xml_document);

// Clone report ------------------------------------------------------------
// <clones ...root attributes...>
//   <clone nlines similarity type><source .../><source .../></clone>

using XmlAttributes = std::vector<std::pair<std::string, std::string>>;

std::string clone_report_xml(std::span<const ClonePair> pairs, const XmlAttributes& root_attributes,
                             MatchMode mode = MatchMode::kSegment);

struct CloneSourceEntry {
  std::string release_id;
  std::string file_path;
  int startline = 0;
  int endline = 0;
  InterfaceKind interface_kind = InterfaceKind::kApi;
  std::string fqn;

  friend bool operator==(const CloneSourceEntry&, const CloneSourceEntry&) = default;
};

struct CloneReportEntry {
  std::size_t nlines = 0;
  int similarity = 0;
  CloneType clone_type = CloneType::kI;
  CloneSourceEntry left;
  CloneSourceEntry right;

  friend bool operator==(const CloneReportEntry&, const CloneReportEntry&) = default;
};

std::vector<CloneReportEntry> parse_clone_report(std::string_view xml_document);

// CSV ---------------------------------------------------------------------

std::string matrix_csv(const PromotionMatrix& matrix);
/// Header-only when `series` is empty.
std::string series_csv(std::span<const SeriesPoint> series);

// JSON mirrors ------------------------------------------------------------

std::string catalog_json(const ReleaseCatalog& catalog);
ReleaseCatalog parse_catalog_json(std::string_view json_document);
std::string fragment_set_json(std::string_view release_id, std::span<const MethodFragment* const> set);
/// (file_path, begin_line) locations listed in a fragment-set document.
std::vector<std::pair<std::string, int>> parse_fragment_set_json(std::string_view json_document);
std::string clone_pairs_json(std::span<const ClonePair> pairs, const XmlAttributes& root_attributes,
                             MatchMode mode = MatchMode::kSegment);
std::string promotions_json(std::span<const PromotionRecord> records, std::size_t promoted,
                            MatchMode mode = MatchMode::kSegment);
std::string matrix_json(const PromotionMatrix& matrix);
std::string series_json(std::span<const SeriesPoint> series);

// Sink writers ------------------------------------------------------------

void write_method_report(const ReleaseCatalog& catalog, const ReportSink& sink,
                         MatchMode mode = MatchMode::kSegment);
void write_clone_report(std::span<const ClonePair> pairs, const XmlAttributes& root_attributes,
                        const ReportSink& sink, MatchMode mode = MatchMode::kSegment);
void write_matrix_csv(const PromotionMatrix& matrix, const ReportSink& sink);
/// Returns false (and warns on stderr) when the series is empty.
bool write_percentage_series(std::span<const SeriesPoint> series, const ReportSink& sink);

}  // namespace promoscan
