#include <gtest/gtest.h>

#include <fstream>

#include "java_gen.h"
#include "promoscan/error.h"
#include "promoscan/manifest.h"

namespace promoscan {
namespace {

namespace fs = std::filesystem;

TEST(Manifest, ParsesConfigAndReleases) {
  auto m = parse_manifest(
      "# study\n"
      "[config]\n"
      "min_lines = 12\n"
      "type3_threshold = 0.8   # stricter\n"
      "rename_mode = consistent\n"
      "max_type = II\n"
      "match_mode = substring\n"
      "output = results\n"
      "\n"
      "[releases]\n"
      "E-1.0   src/e10   2001-11-07\n"
      "E-2.0   /abs/e20  2002-06-27\n"
      "E-2.1   src/e21\n",
      "/base");
  EXPECT_EQ(m.config.min_lines, 12);
  EXPECT_DOUBLE_EQ(m.config.type3_threshold, 0.8);
  EXPECT_EQ(m.config.rename_mode, RenameMode::kConsistent);
  EXPECT_EQ(m.config.max_type, CloneType::kII);
  EXPECT_EQ(m.match_mode, MatchMode::kSubstring);
  EXPECT_EQ(m.output, fs::path("/base/results"));
  EXPECT_FALSE(m.cache_dir);
  ASSERT_EQ(m.releases.size(), 3u);
  EXPECT_EQ(m.releases[0].id, "E-1.0");
  EXPECT_EQ(m.releases[0].source_root, fs::path("/base/src/e10"));
  EXPECT_EQ(m.releases[1].source_root, fs::path("/abs/e20"));
  EXPECT_EQ(*m.releases[1].date, "2002-06-27");
  EXPECT_FALSE(m.releases[2].date);
}

TEST(Manifest, Defaults) {
  auto m = parse_manifest("[releases]\nr1 a\n", "/x");
  EXPECT_EQ(m.config.min_lines, 10);
  EXPECT_DOUBLE_EQ(m.config.type3_threshold, 0.70);
  EXPECT_EQ(m.output, fs::path("/x/out"));
}

void expect_error(const std::string& text, const std::string& fragment) {
  try {
    parse_manifest(text, "/b");
    FAIL() << "accepted: " << text;
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(Manifest, Rejections) {
  expect_error("[releases]\nr1 a\nr1 b\n", "duplicate release id r1");
  expect_error("[releases]\nr1 a 2005-01-01\nr2 b 2004-12-31\n", "line 3");
  expect_error("[releases]\nr1 a 2005-13-01\n", "bad date");
  expect_error("[releases]\nr1\n", "expected: id root");
  expect_error("[config]\nmin_lines = ten\n", "bad min_lines");
  expect_error("[config]\nmin_lines = 0\n", "min_lines");
  expect_error("[config]\ntype3_threshold = 1.5\n", "threshold");
  expect_error("[config]\nspeed = 3\n", "unknown key speed");
  expect_error("[config]\nrename_mode = fancy\n", "rename");
  expect_error("[extras]\n", "unknown section");
  expect_error("r1 a\n", "outside of a section");
}

TEST(Manifest, EqualDatesAreAllowed) {
  auto m = parse_manifest("[releases]\na x 2010-01-01\nb y 2010-01-01\n", "/");
  EXPECT_EQ(m.releases.size(), 2u);
}

TEST(Manifest, LoadResolvesAgainstItsDirectory) {
  testgen::TempDir dir("manifest");
  fs::create_directories(dir.path() / "cfg");
  std::ofstream(dir.path() / "cfg" / "m.manifest") << "[releases]\nr1 ../trees/r1\n";
  auto m = load_manifest(dir.path() / "cfg" / "m.manifest");
  EXPECT_EQ(m.releases[0].source_root, dir.path() / "cfg" / "../trees/r1");
  EXPECT_THROW(load_manifest(dir.path() / "missing.manifest"), InputError);
}

TEST(Manifest, ShippedEclipseStudyParses) {
  auto m = load_manifest(fs::path(PROMOSCAN_SOURCE_DIR) / "manifests" / "eclipse.manifest");
  ASSERT_EQ(m.releases.size(), 16u);
  EXPECT_EQ(m.releases.front().id, "E-1.0");
  EXPECT_EQ(*m.releases.front().date, "2001-11-07");
  EXPECT_EQ(m.releases.back().id, "E-4.6");
  EXPECT_EQ(*m.releases.back().date, "2016-06-06");
}

}  // namespace
}  // namespace promoscan
