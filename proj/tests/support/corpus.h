#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "java_gen.h"
#include "promoscan/catalog.h"

namespace promoscan::testgen {

struct FamilyOptions {
  std::size_t count = 100;
  std::size_t min_body = 3;
  std::size_t max_body = 25;
  double derived_share = 0.6;  // fraction derived from an earlier fragment
};

/// Fragments of which a share are Type I/II/III variants of earlier ones.
/// Files alternate between API and `internal` packages.
std::vector<MethodFragment> clone_family_corpus(JavaGen& gen, const std::string& release,
                                                const FamilyOptions& options);

FragmentSet pointers(const std::vector<MethodFragment>& fragments);

/// Two releases: `old` introduces `new_nonapis` non-API methods; `planted`
/// of them reappear in API packages of `new`, cycling through verbatim,
/// renamed and line-edited (at most 20% of lines) copies. Everything else
/// in `new` is either an unchanged carry-over or freshly generated.
struct PlantedCorpus {
  struct Release {
    std::string id;
    std::vector<JavaFile> files;
  };
  std::vector<Release> releases;
  std::set<std::string> planted_fqns;  // keys in the old release
  std::size_t new_nonapis = 0;
};

PlantedCorpus planted_corpus(std::uint64_t seed, std::size_t new_nonapis, std::size_t planted);

/// Writes every release below `root/<id>` and a manifest listing them.
/// Returns the manifest path.
std::filesystem::path write_planted(const std::filesystem::path& root, const PlantedCorpus& corpus,
                                    const std::string& extra_config = "");

/// `pkg.Type#name(T1,T2)` as the extractor should key a generated method.
std::string expected_fqn(const std::string& relative_path, const MethodSpec& spec);

}  // namespace promoscan::testgen

namespace promoscan::testgen {

/// Four methods under org/eclipse/p*/ (md1: 74 lines, m2: 79, m3: 90,
/// m4: 40), two of them in internal packages.
std::vector<JavaFile> sample_release_old();
/// The later release of the cross-clone example: md1 copied to an API
/// package, m2 to another internal package and m3 to an API package.
std::vector<JavaFile> sample_release_new();

}  // namespace promoscan::testgen

namespace promoscan::testgen {

/// Up to 25 two-line fragments drawn from small pools of packages, types,
/// names and parameter lists, so keys collide often across releases.
ReleaseCatalog random_key_catalog(Rng& rng, const std::string& release);

}  // namespace promoscan::testgen
