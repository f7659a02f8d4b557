#include "promoscan/reporting.h"

#include <fstream>
#include <iostream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "json.hpp"
#include "promoscan/error.h"
#include "promoscan/xml.h"

namespace promoscan {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::string_view kXmlDeclaration = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
constexpr int kCatalogFormatVersion = 1;

std::string dump(const ojson& j) {
  return j.dump(2, ' ', false, ojson::error_handler_t::replace) + "\n";
}

std::string attr(std::string_view key, std::string_view value) {
  std::string out = " ";
  out += key;
  out += "=\"";
  out += xml::escape(value);
  out += '"';
  return out;
}

std::string attr(std::string_view key, long long value) { return attr(key, std::to_string(value)); }

std::string report_path(const MethodFragment& f) { return f.release_id + "/" + f.file_path; }

// Splits "release/rel/path" given the release id carried elsewhere.
std::string strip_release(const std::string& path, const std::string& release) {
  std::string prefix = release + "/";
  if (!release.empty() && path.starts_with(prefix)) return path.substr(prefix.size());
  return path;
}

int to_int(const std::string& s, std::string_view what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError("bad integer '" + s + "' for " + std::string(what));
  }
}

InterfaceKind interface_from_string(const std::string& s) {
  if (s == "api") return InterfaceKind::kApi;
  if (s == "nonapi") return InterfaceKind::kNonApi;
  throw InputError("unknown interface kind '" + s + "'");
}

std::string source_element(const MethodFragment& f, MatchMode mode, bool with_release) {
  std::string out = "<source";
  if (with_release) out += attr("release", f.release_id);
  out += attr("file", report_path(f));
  out += attr("startline", f.begin_line);
  out += attr("endline", f.end_line);
  out += attr("interface", to_string(classify_interface(f, mode)));
  out += attr("fqn", fully_qualified_name(f));
  out += ">";
  out += xml::escape(f.signature());
  out += "</source>";
  return out;
}

ojson fragment_ref_json(const MethodFragment& f, MatchMode mode) {
  return ojson{{"release", f.release_id},
               {"file", f.file_path},
               {"startline", f.begin_line},
               {"endline", f.end_line},
               {"interface", to_string(classify_interface(f, mode))},
               {"fqn", fully_qualified_name(f)}};
}

void require_format(const ReportSink& sink, std::initializer_list<ReportFormat> allowed,
                    std::string_view what) {
  for (ReportFormat f : allowed) {
    if (sink.format == f) return;
  }
  throw InputError("format '" + std::string(to_string(sink.format)) + "' cannot hold a " +
                   std::string(what));
}

}  // namespace

std::string_view to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::kMethodXml:
      return "method-xml";
    case ReportFormat::kCloneXml:
      return "clone-xml";
    case ReportFormat::kMatrixCsv:
      return "matrix-csv";
    case ReportFormat::kSeriesCsv:
      return "series-csv";
    case ReportFormat::kJson:
      return "json";
  }
  return "json";
}

ReportFormat report_format_from_string(std::string_view s) {
  for (ReportFormat f : {ReportFormat::kMethodXml, ReportFormat::kCloneXml, ReportFormat::kMatrixCsv,
                         ReportFormat::kSeriesCsv, ReportFormat::kJson}) {
    if (to_string(f) == s) return f;
  }
  throw InputError("unknown format '" + std::string(s) + "'");
}

void write_atomic(const fs::path& path, std::string_view content) {
  while (!content.empty() && content.back() == '\n') content.remove_suffix(1);
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.put('\n');
    out.close();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw InputError("error writing '" + path.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw InputError("cannot write '" + path.string() + "': " + ec.message());
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

// Method report -----------------------------------------------------------

std::string method_report_xml(const ReleaseCatalog& catalog, MatchMode mode) {
  std::string out(kXmlDeclaration);
  out += "<sources";
  out += attr("release", catalog.release_id());
  out += attr("nmethods", static_cast<long long>(catalog.total_methods()));
  out += attr("nnonapi", static_cast<long long>(catalog.nonapi_methods(mode)));
  if (catalog.empty()) return out + "/>\n";
  out += ">\n";
  for (const auto& f : catalog.fragments()) {
    out += "  " + source_element(f, mode, false) + "\n";
  }
  out += "</sources>\n";
  return out;
}

MethodReport parse_method_report(std::string_view xml_document) {
  xml::Element root = xml::parse(xml_document);
  if (root.name != "sources") throw InputError("method report root must be <sources>");
  MethodReport report;
  report.release_id = root.required("release");
  for (const auto& el : root.children) {
    if (el.name != "source") throw InputError("unexpected <" + el.name + "> in method report");
    MethodReportEntry e;
    e.file_path = strip_release(el.required("file"), report.release_id);
    e.startline = to_int(el.required("startline"), "startline");
    e.endline = to_int(el.required("endline"), "endline");
    e.interface_kind = interface_from_string(el.required("interface"));
    e.fqn = el.required("fqn");
    e.signature = el.text;
    report.entries.push_back(std::move(e));
  }
  return report;
}

// Clone report ------------------------------------------------------------

std::string clone_report_xml(std::span<const ClonePair> pairs, const XmlAttributes& root_attributes,
                             MatchMode mode) {
  std::string out(kXmlDeclaration);
  out += "<clones";
  for (const auto& [k, v] : root_attributes) out += attr(k, v);
  out += attr("npairs", static_cast<long long>(pairs.size()));
  if (pairs.empty()) return out + "/>\n";
  out += ">\n";
  for (const ClonePair& p : pairs) {
    out += "  <clone";
    out += attr("nlines", static_cast<long long>(p.nlines));
    out += attr("similarity", p.similarity_percent());
    out += attr("type", to_string(p.clone_type));
    out += ">\n";
    out += "    " + source_element(*p.left, mode, true) + "\n";
    out += "    " + source_element(*p.right, mode, true) + "\n";
    out += "  </clone>\n";
  }
  out += "</clones>\n";
  return out;
}

std::vector<CloneReportEntry> parse_clone_report(std::string_view xml_document) {
  xml::Element root = xml::parse(xml_document);
  if (root.name != "clones") throw InputError("clone report root must be <clones>");
  auto source = [](const xml::Element& el) {
    if (el.name != "source") throw InputError("expected <source> in <clone>");
    CloneSourceEntry s;
    s.release_id = el.required("release");
    s.file_path = strip_release(el.required("file"), s.release_id);
    s.startline = to_int(el.required("startline"), "startline");
    s.endline = to_int(el.required("endline"), "endline");
    s.interface_kind = interface_from_string(el.required("interface"));
    s.fqn = el.required("fqn");
    return s;
  };
  std::vector<CloneReportEntry> out;
  for (const auto& el : root.children) {
    if (el.name != "clone" || el.children.size() != 2) {
      throw InputError("each <clone> needs exactly two <source> children");
    }
    CloneReportEntry e;
    e.nlines = static_cast<std::size_t>(to_int(el.required("nlines"), "nlines"));
    e.similarity = to_int(el.required("similarity"), "similarity");
    e.clone_type = clone_type_from_string(el.required("type"));
    e.left = source(el.children[0]);
    e.right = source(el.children[1]);
    out.push_back(std::move(e));
  }
  return out;
}

// CSV ---------------------------------------------------------------------

std::string matrix_csv(const PromotionMatrix& matrix) {
  const auto& releases = matrix.releases();
  std::size_t cols = matrix.column_count();
  std::string out = "release";
  for (std::size_t o = 0; o < cols; ++o) out += "," + releases[o];
  out += "\nNew";
  for (std::size_t o = 0; o < cols; ++o) out += "," + std::to_string(matrix.new_count(o));
  out += "\n";
  for (std::size_t n = 1; n < releases.size(); ++n) {
    out += releases[n];
    for (std::size_t o = 0; o < cols; ++o) {
      out += ",";
      if (o >= n) continue;
      if (!matrix.column_applicable(o)) {
        out += "n/a";
      } else if (auto c = matrix.cell(o, n)) {
        out += c->percentage.str();
      }
    }
    out += "\n";
  }
  const char* labels[] = {"Min", "Max", "Average"};
  for (int row = 0; row < 3; ++row) {
    out += labels[row];
    for (std::size_t o = 0; o < cols; ++o) {
      out += ",";
      auto s = matrix.summary(o);
      if (!s) {
        out += "n/a";
        continue;
      }
      Percentage p = row == 0 ? s->min : row == 1 ? s->max : s->average;
      out += p.str();
    }
    out += "\n";
  }
  return out;
}

std::string series_csv(std::span<const SeriesPoint> series) {
  std::string out = "release,nonapi_percentage\n";
  for (const auto& p : series) out += p.release_id + "," + p.percentage.str() + "\n";
  return out;
}

// JSON --------------------------------------------------------------------

std::string catalog_json(const ReleaseCatalog& catalog) {
  ojson frags = ojson::array();
  for (const auto& f : catalog.fragments()) {
    frags.push_back(ojson{{"file_path", f.file_path},
                          {"begin_line", f.begin_line},
                          {"end_line", f.end_line},
                          {"begin_column", f.begin_column},
                          {"end_column", f.end_column},
                          {"package_path", f.package_path},
                          {"type_nesting", f.type_nesting},
                          {"method_name", f.method_name},
                          {"param_types", f.param_types},
                          {"visibility", to_string(f.visibility)},
                          {"recovered", f.recovered},
                          {"fqn", fully_qualified_name(f)},
                          {"pretty_lines", f.pretty_lines}});
  }
  ojson diags = ojson::array();
  for (const auto& d : catalog.diagnostics()) {
    diags.push_back(ojson{{"file_path", d.file_path}, {"message", d.message}});
  }
  ojson doc{{"format", "promoscan-catalog"},
            {"version", kCatalogFormatVersion},
            {"release_id", catalog.release_id()},
            {"total_methods", catalog.total_methods()},
            {"nonapi_methods", catalog.nonapi_methods()},
            {"fragments", std::move(frags)},
            {"diagnostics", std::move(diags)}};
  return dump(doc);
}

ReleaseCatalog parse_catalog_json(std::string_view json_document) {
  try {
    auto doc = ojson::parse(json_document);
    if (doc.value("format", "") != "promoscan-catalog") {
      throw InputError("not a catalog document");
    }
    if (doc.at("version").get<int>() != kCatalogFormatVersion) {
      throw InputError("unsupported catalog version");
    }
    std::string release = doc.at("release_id").get<std::string>();
    std::vector<MethodFragment> frags;
    for (const auto& j : doc.at("fragments")) {
      MethodFragment f;
      f.release_id = release;
      f.file_path = j.at("file_path").get<std::string>();
      f.begin_line = j.at("begin_line").get<int>();
      f.end_line = j.at("end_line").get<int>();
      f.begin_column = j.at("begin_column").get<int>();
      f.end_column = j.at("end_column").get<int>();
      f.package_path = j.at("package_path").get<std::vector<std::string>>();
      f.type_nesting = j.at("type_nesting").get<std::vector<std::string>>();
      f.method_name = j.at("method_name").get<std::string>();
      f.param_types = j.at("param_types").get<std::vector<std::string>>();
      f.visibility = visibility_from_string(j.at("visibility").get<std::string>());
      f.recovered = j.at("recovered").get<bool>();
      f.pretty_lines = j.at("pretty_lines").get<std::vector<std::string>>();
      frags.push_back(std::move(f));
    }
    std::vector<Diagnostic> diags;
    for (const auto& j : doc.at("diagnostics")) {
      diags.push_back({j.at("file_path").get<std::string>(), j.at("message").get<std::string>()});
    }
    return ReleaseCatalog::seal(std::move(release), std::move(frags), std::move(diags));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed catalog: ") + e.what());
  }
}

std::string fragment_set_json(std::string_view release_id, std::span<const MethodFragment* const> set) {
  ojson frags = ojson::array();
  for (const MethodFragment* f : set) {
    frags.push_back(ojson{{"file", f->file_path},
                          {"startline", f->begin_line},
                          {"endline", f->end_line},
                          {"fqn", fully_qualified_name(*f)}});
  }
  return dump(ojson{{"release", release_id}, {"count", set.size()}, {"fragments", std::move(frags)}});
}

std::vector<std::pair<std::string, int>> parse_fragment_set_json(std::string_view json_document) {
  try {
    auto doc = ojson::parse(json_document);
    std::vector<std::pair<std::string, int>> out;
    for (const auto& j : doc.at("fragments")) {
      out.emplace_back(j.at("file").get<std::string>(), j.at("startline").get<int>());
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed fragment set: ") + e.what());
  }
}

std::string clone_pairs_json(std::span<const ClonePair> pairs, const XmlAttributes& root_attributes,
                             MatchMode mode) {
  ojson doc = ojson::object();
  for (const auto& [k, v] : root_attributes) doc[k] = v;
  doc["npairs"] = pairs.size();
  ojson list = ojson::array();
  for (const ClonePair& p : pairs) {
    list.push_back(ojson{{"nlines", p.nlines},
                         {"similarity", p.similarity_percent()},
                         {"type", to_string(p.clone_type)},
                         {"matched_lines", p.matched_lines},
                         {"left", fragment_ref_json(*p.left, mode)},
                         {"right", fragment_ref_json(*p.right, mode)}});
  }
  doc["clones"] = std::move(list);
  return dump(doc);
}

std::string promotions_json(std::span<const PromotionRecord> records, std::size_t promoted,
                            MatchMode mode) {
  ojson list = ojson::array();
  for (const auto& r : records) {
    list.push_back(ojson{{"old_release", r.old_release},
                         {"new_release", r.new_release},
                         {"type", to_string(r.clone_type)},
                         {"similarity", static_cast<int>(100 * r.matched_lines / r.nlines)},
                         {"nlines", r.nlines},
                         {"old", fragment_ref_json(*r.old_fragment, mode)},
                         {"new", fragment_ref_json(*r.new_fragment, mode)}});
  }
  return dump(ojson{{"promoted", promoted}, {"records", std::move(list)}});
}

std::string matrix_json(const PromotionMatrix& matrix) {
  const auto& releases = matrix.releases();
  ojson columns = ojson::array();
  for (std::size_t o = 0; o < matrix.column_count(); ++o) {
    ojson cells = ojson::array();
    for (std::size_t n = o + 1; n < releases.size(); ++n) {
      auto c = matrix.cell(o, n);
      if (!c) continue;
      cells.push_back(ojson{{"new_release", releases[n]},
                            {"promoted", c->promoted},
                            {"percentage", c->percentage.str()}});
    }
    ojson col{{"old_release", releases[o]},
              {"new", matrix.new_count(o)},
              {"applicable", matrix.column_applicable(o)},
              {"cells", std::move(cells)}};
    if (auto s = matrix.summary(o)) {
      col["min"] = s->min.str();
      col["max"] = s->max.str();
      col["average"] = s->average.str();
    }
    columns.push_back(std::move(col));
  }
  return dump(ojson{{"releases", releases}, {"columns", std::move(columns)}});
}

std::string series_json(std::span<const SeriesPoint> series) {
  ojson list = ojson::array();
  for (const auto& p : series) {
    list.push_back(ojson{{"release", p.release_id}, {"nonapi_percentage", p.percentage.str()}});
  }
  return dump(ojson{{"series", std::move(list)}});
}

// Sink writers ------------------------------------------------------------

void write_method_report(const ReleaseCatalog& catalog, const ReportSink& sink, MatchMode mode) {
  require_format(sink, {ReportFormat::kMethodXml, ReportFormat::kJson}, "method report");
  write_atomic(sink.destination, sink.format == ReportFormat::kJson
                                     ? catalog_json(catalog)
                                     : method_report_xml(catalog, mode));
}

void write_clone_report(std::span<const ClonePair> pairs, const XmlAttributes& root_attributes,
                        const ReportSink& sink, MatchMode mode) {
  require_format(sink, {ReportFormat::kCloneXml, ReportFormat::kJson}, "clone report");
  write_atomic(sink.destination, sink.format == ReportFormat::kJson
                                     ? clone_pairs_json(pairs, root_attributes, mode)
                                     : clone_report_xml(pairs, root_attributes, mode));
}

void write_matrix_csv(const PromotionMatrix& matrix, const ReportSink& sink) {
  require_format(sink, {ReportFormat::kMatrixCsv, ReportFormat::kJson}, "promotion matrix");
  write_atomic(sink.destination,
               sink.format == ReportFormat::kJson ? matrix_json(matrix) : matrix_csv(matrix));
}

bool write_percentage_series(std::span<const SeriesPoint> series, const ReportSink& sink) {
  require_format(sink, {ReportFormat::kSeriesCsv, ReportFormat::kJson}, "percentage series");
  write_atomic(sink.destination,
               sink.format == ReportFormat::kJson ? series_json(series) : series_csv(series));
  if (series.empty()) {
    std::cerr << "warning: percentage series for " << sink.destination.string() << " is empty\n";
    return false;
  }
  return true;
}

}  // namespace promoscan
