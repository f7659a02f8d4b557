// Acceptance gates: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "corpus.h"
#include "oracles.h"
#include "promoscan/catalog.h"
#include "promoscan/clone_detect.h"
#include "promoscan/extractor.h"
#include "promoscan/lcs.h"
#include "promoscan/promotion.h"
#include "promoscan/reporting.h"

namespace fs = std::filesystem;
using namespace promoscan;
using testgen::JavaGen;
using testgen::Rng;
using testgen::TempDir;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failure descriptions; only the first few are printed.
struct Check {
  std::size_t cases = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok) failures.push_back(what);
  }
  std::string detail() const {
    std::ostringstream out;
    out << cases << " cases";
    if (!failures.empty()) {
      out << ", " << failures.size() << " failed";
      for (std::size_t i = 0; i < failures.size() && i < 3; ++i) out << "; " << failures[i];
    }
    return out.str();
  }
};

int run_cli(const std::string& args) {
  std::string cmd = std::string(PROMOSCAN_CLI) + " " + args + " > /dev/null 2>&1";
  int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::map<std::string, std::string> bundle(const fs::path& root) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    std::string rel = fs::relative(e.path(), root).generic_string();
    if (e.is_regular_file() && !rel.starts_with(".cache/")) out[rel] = read_text_file(e.path());
  }
  return out;
}

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string ac1() {
  Check check;
  const double thresholds[] = {0.5, 0.7, 0.9};
  const RenameMode modes[] = {RenameMode::kBlind, RenameMode::kConsistent};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    JavaGen gen(1000 + seed);
    testgen::FamilyOptions fo{200, 3, 25, 0.6};
    auto frags = testgen::clone_family_corpus(gen, "R", fo);
    std::vector<MethodFragment> older, newer;
    for (std::size_t i = 0; i < frags.size(); ++i) {
      MethodFragment f = frags[i];
      f.release_id = i < frags.size() / 2 ? "O" : "N";
      (i < frags.size() / 2 ? older : newer).push_back(std::move(f));
    }
    FragmentSet all = testgen::pointers(frags);
    FragmentSet old_set = testgen::pointers(older);
    FragmentSet new_set = testgen::pointers(newer);
    for (double t : thresholds) {
      for (RenameMode mode : modes) {
        CloneConfig config;
        config.min_lines = static_cast<int>(3 + seed % 8);
        config.type3_threshold = t;
        config.rename_mode = mode;
        std::string tag = "seed " + std::to_string(seed) + " t=" + two_decimals(t) + " " +
                          std::string(to_string(mode));
        check.expect(oracle::keys_of(detect_clones_within(all, config)) == oracle::brute_within(all, config),
                     tag + " within");
        check.expect(oracle::keys_of(cross_clones(old_set, new_set, config)) ==
                         oracle::brute_cross(old_set, new_set, config),
                     tag + " cross");
      }
    }
  }
  return check.failures.empty() ? "PASS " + check.detail() : "FAIL " + check.detail();
}

std::string ac2() {
  Check check;
  Rng rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    auto len = [&] { return std::uniform_int_distribution<std::size_t>(1, 100)(rng); };
    std::size_t alphabet = std::uniform_int_distribution<std::size_t>(1, 12)(rng);
    auto line = [&] { return "l" + std::to_string(std::uniform_int_distribution<std::size_t>(0, alphabet)(rng)); };
    std::vector<std::string> a(len()), b(len());
    for (auto& s : a) s = line();
    for (auto& s : b) s = line();
    double expected = static_cast<double>(oracle::dp_lcs(a, b)) /
                      static_cast<double>(std::max(a.size(), b.size()));
    check.expect(line_similarity(a, b) == expected, "trial " + std::to_string(trial));
  }
  return check.failures.empty() ? "PASS " + check.detail() : "FAIL " + check.detail();
}

std::string ac3() {
  Check check;
  JavaGen gen(33);
  Rng& rng = gen.rng();
  CloneConfig config;
  config.min_lines = 1;
  auto frag = [](const std::string& source, int line) {
    return testgen::make_fragment("R", "p/A.java", line, source);
  };
  for (int i = 0; i < 500; ++i) {
    auto spec = gen.method(std::uniform_int_distribution<std::size_t>(1, 30)(rng));
    MethodFragment a = frag(testgen::render_method(spec, rng), 1);
    MethodFragment b = frag(testgen::render_method(spec, rng, {true}), 100);
    bool pretty_equal = a.pretty_lines == b.pretty_lines;
    auto na = normalize_type2(a.pretty_lines, RenameMode::kBlind);
    auto nb = normalize_type2(b.pretty_lines, RenameMode::kBlind);
    check.expect(pretty_equal, "re-render " + std::to_string(i) + " not pretty-equal");
    check.expect(!pretty_equal || na == nb, "chain " + std::to_string(i) + " not renamed-equal");
    check.expect(na != nb || line_similarity(na, nb) == 1.0, "chain " + std::to_string(i) + " similarity");
  }
  for (int i = 0; i < 500; ++i) {
    auto spec = gen.method(std::uniform_int_distribution<std::size_t>(1, 30)(rng));
    MethodFragment base = frag(testgen::render_method(spec, rng), 1);
    MethodFragment renamed = frag(testgen::render_method(testgen::rename_identifiers(spec, gen), rng), 100);
    MethodFragment spaced = frag(testgen::render_method(spec, rng, {true}), 200);
    auto r2 = classify_pair_type(base, renamed, config);
    check.expect(r2 && r2->clone_type == CloneType::kII && r2->similarity() == 1.0,
                 "identifier mutation " + std::to_string(i));
    auto r1 = classify_pair_type(base, spaced, config);
    check.expect(r1 && r1->clone_type == CloneType::kI && r1->similarity() == 1.0,
                 "whitespace mutation " + std::to_string(i));
  }
  return check.failures.empty() ? "PASS " + check.detail() : "FAIL " + check.detail();
}

std::string ac4() {
  Check check;
  auto start = Clock::now();
  const std::size_t n = 100;
  for (std::size_t k : {0u, 2u, 10u}) {
    TempDir dir("ac4");
    auto corpus = testgen::planted_corpus(4000 + k, n, k);
    fs::path manifest = testgen::write_planted(dir.path(), corpus);
    fs::path out = dir.path() / "bundle";
    std::string tag = "K=" + std::to_string(k);
    if (run_cli("run " + manifest.string() + " --out " + out.string()) != 0) {
      check.expect(false, tag + " run failed");
      continue;
    }
    auto matrix = nlohmann::json::parse(read_text_file(out / "matrix.json"));
    const auto& column = matrix["columns"][0];
    check.expect(column["new"] == n, tag + " new count");
    check.expect(column["cells"][0]["percentage"] == two_decimals(100.0 * k / n), tag + " cell");
    check.expect(read_text_file(out / "matrix.csv").find("R2.0," + two_decimals(100.0 * k / n) + "\n") !=
                     std::string::npos,
                 tag + " csv cell");
    auto promotions = nlohmann::json::parse(read_text_file(out / "promotions/R1.0__R2.0.json"));
    std::set<std::string> listed;
    for (const auto& r : promotions["records"]) listed.insert(r["old"]["fqn"].get<std::string>());
    check.expect(listed == corpus.planted_fqns, tag + " listed methods");
    check.expect(promotions["promoted"] == k, tag + " promoted count");
  }
  double elapsed = seconds_since(start);
  check.expect(elapsed < 30.0, "runtime " + two_decimals(elapsed) + " s");
  return (check.failures.empty() ? "PASS " : "FAIL ") + check.detail() + ", " + two_decimals(elapsed) + " s";
}

std::string ac5() {
  Check check;
  TempDir dir("ac5");
  testgen::write_tree(dir.path() / "old", testgen::sample_release_old());
  testgen::write_tree(dir.path() / "new", testgen::sample_release_new());
  std::vector<ReleaseCatalog> cats;
  cats.push_back(extract_methods(dir.path() / "old", "eclipse-1.0"));
  cats.push_back(extract_methods(dir.path() / "new", "eclipse-4.6"));

  MethodReport report = parse_method_report(method_report_xml(cats[0]));
  std::set<std::string> paths;
  std::size_t internal = 0;
  for (const auto& e : report.entries) {
    paths.insert(e.file_path);
    if (e.interface_kind == InterfaceKind::kNonApi) ++internal;
  }
  check.expect(paths == std::set<std::string>{"org/eclipse/p1/sp1/pk1/F1.java",
                                              "org/eclipse/p3/internal/sp3/pk3/F3.java",
                                              "org/eclipse/p5/internal/sp5/pk5/F5.java",
                                              "org/eclipse/p6/sp6/pk6/F6.java"},
               "four paths");
  check.expect(report.entries.size() == 4 && internal == 2, "2 of 4 internal");
  check.expect(nonapi_percentage(cats[0]).str() == "50.00", "50.00%");

  FragmentSet m3;
  for (const auto& f : cats[0].fragments())
    if (f.method_name == "m3") m3.push_back(&f);
  auto pairs = cross_clones(m3, cats[1], CloneConfig{});
  auto records = find_promotions(m3, pairs);
  check.expect(records.size() == 1, "one promotion record");
  if (records.size() == 1) {
    check.expect(records[0].old_fragment->file_path == "org/eclipse/p5/internal/sp5/pk5/F5.java" &&
                     records[0].new_fragment->file_path == "org/eclipse/p6/sp6/pk6/F6.java" &&
                     records[0].nlines == 90 && records[0].similarity() == 1.0,
                 "third pair F5 -> F6");
  }
  return check.failures.empty() ? "PASS " + check.detail() : "FAIL " + check.detail();
}

std::string ac6() {
  Check check;
  TempDir dir("ac6");
  auto corpus = testgen::planted_corpus(606, 100, 10);
  fs::path manifest = testgen::write_planted(dir.path(), corpus);
  std::map<std::string, std::string> reference;
  for (int rep = 0; rep < 3; ++rep) {
    for (int workers : {1, 8}) {
      fs::path out = dir.path() / ("w" + std::to_string(workers) + "_" + std::to_string(rep));
      std::string tag = "workers " + std::to_string(workers) + " rep " + std::to_string(rep);
      int rc = run_cli("run " + manifest.string() + " --no-cache --workers " + std::to_string(workers) +
                       " --out " + out.string());
      check.expect(rc == 0, tag + " exit " + std::to_string(rc));
      auto files = bundle(out);
      if (reference.empty()) {
        reference = files;
        check.expect(files.size() == 13, "bundle has " + std::to_string(files.size()) + " files");
      } else {
        check.expect(files == reference, tag + " differs");
      }
    }
  }
  return check.failures.empty() ? "PASS " + check.detail() : "FAIL " + check.detail();
}

std::string ac7() {
  Check threshold, history;
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    JavaGen gen(rng());
    auto frags = testgen::clone_family_corpus(gen, "R", {40, 3, 25, 0.7});
    FragmentSet set = testgen::pointers(frags);
    CloneConfig high;
    high.min_lines = 4;
    high.rename_mode = trial % 2 ? RenameMode::kConsistent : RenameMode::kBlind;
    high.type3_threshold = std::uniform_int_distribution<int>(2, 100)(rng) / 100.0;
    CloneConfig low = high;
    low.type3_threshold = std::uniform_int_distribution<int>(1, static_cast<int>(high.type3_threshold * 100) - 1)(rng) / 100.0;
    std::set<std::pair<const MethodFragment*, const MethodFragment*>> hi, lo;
    for (const auto& p : detect_clones_within(set, high)) hi.emplace(p.left, p.right);
    for (const auto& p : detect_clones_within(set, low)) lo.emplace(p.left, p.right);
    threshold.expect(std::ranges::includes(lo, hi), "trial " + std::to_string(trial));
  }
  for (int trial = 0; trial < 200; ++trial) {
    MatchMode mode = trial % 2 ? MatchMode::kSubstring : MatchMode::kSegment;
    std::vector<ReleaseCatalog> earlier;
    std::size_t depth = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    for (std::size_t i = 0; i < depth; ++i) earlier.push_back(testgen::random_key_catalog(rng, "E" + std::to_string(i)));
    ReleaseCatalog target = testgen::random_key_catalog(rng, "T");
    ReleaseCatalog added = testgen::random_key_catalog(rng, "X");
    auto before = new_nonapis(target, std::span<const ReleaseCatalog>(earlier), mode);
    std::vector<const ReleaseCatalog*> more;
    for (const auto& c : earlier) more.push_back(&c);
    more.insert(more.begin() + static_cast<std::ptrdiff_t>(std::uniform_int_distribution<std::size_t>(0, more.size())(rng)), &added);
    auto after = new_nonapis(target, std::span<const ReleaseCatalog* const>(more), mode);
    std::set<const MethodFragment*> b(before.begin(), before.end()), a(after.begin(), after.end());
    history.expect(std::ranges::includes(b, a), "trial " + std::to_string(trial));
  }
  bool ok = threshold.failures.empty() && history.failures.empty();
  return std::string(ok ? "PASS " : "FAIL ") + "threshold: " + threshold.detail() + "; history: " + history.detail();
}

std::string ac8() {
  Check check;
  JavaGen gen(8080);
  auto frags = testgen::clone_family_corpus(gen, "R", {10000, 8, 30, 0.01});
  FragmentSet all = testgen::pointers(frags);
  CloneConfig config;
  auto start = Clock::now();
  auto pairs = detect_clones_within(all, config, {4, true});
  double elapsed = seconds_since(start);
  check.expect(elapsed < 300.0, "runtime " + two_decimals(elapsed) + " s");

  FragmentSet sample(all.begin(), all.begin() + 1000);
  auto filtered = oracle::keys_of(detect_clones_within(sample, config, {4, true}));
  auto unfiltered = oracle::keys_of(detect_clones_within(sample, config, {4, false}));
  check.expect(filtered == unfiltered, "subsample differs from the unfiltered run");
  check.expect(!filtered.empty(), "subsample has no clone pairs");
  std::ostringstream out;
  out << (check.failures.empty() ? "PASS " : "FAIL ") << check.detail() << ", " << pairs.size()
      << " pairs in " << two_decimals(elapsed) << " s, subsample " << filtered.size() << " pairs";
  return out.str();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"AC1 clone detection equals brute force", ac1},
      {"AC2 line similarity equals DP LCS", ac2},
      {"AC3 type chain", ac3},
      {"AC4 planted promotions", ac4},
      {"AC5 sample report fidelity", ac5},
      {"AC6 run determinism across workers", ac6},
      {"AC7 monotonicity", ac7},
      {"AC8 scale smoke", ac8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    std::string line;
    auto start = Clock::now();
    try {
      line = fn();
    } catch (const std::exception& e) {
      line = std::string("FAIL exception: ") + e.what();
    }
    if (line.starts_with("FAIL")) ++failed;
    std::cout << line.substr(0, 4) << " " << name << ": " << line.substr(5) << " ["
              << two_decimals(seconds_since(start)) << " s]" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
