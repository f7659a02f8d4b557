#include "promoscan/clone_detect.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>
#include <tuple>
#include <unordered_map>

#include "promoscan/error.h"
#include "promoscan/lcs.h"
#include "promoscan/lexer.h"
#include "promoscan/pretty_print.h"

namespace promoscan {

std::string_view to_string(CloneType type) {
  switch (type) {
    case CloneType::kI:
      return "I";
    case CloneType::kII:
      return "II";
    case CloneType::kIII:
      return "III";
  }
  return "III";
}

std::string_view to_string(RenameMode mode) {
  return mode == RenameMode::kConsistent ? "consistent" : "blind";
}

CloneType clone_type_from_string(std::string_view s) {
  if (s == "I" || s == "1") return CloneType::kI;
  if (s == "II" || s == "2") return CloneType::kII;
  if (s == "III" || s == "3") return CloneType::kIII;
  throw InputError("unknown clone type '" + std::string(s) + "' (expected I|II|III)");
}

RenameMode rename_mode_from_string(std::string_view s) {
  if (s == "blind") return RenameMode::kBlind;
  if (s == "consistent") return RenameMode::kConsistent;
  throw InputError("unknown rename mode '" + std::string(s) + "' (expected blind|consistent)");
}

void CloneConfig::validate() const {
  if (min_lines < 1) throw InputError("min_lines must be at least 1");
  if (!(type3_threshold > 0.0 && type3_threshold <= 1.0)) {
    throw InputError("type3_threshold must lie in (0, 1]");
  }
}

std::vector<std::string> normalize_type2(std::span<const std::string> pretty_lines, RenameMode mode) {
  static const std::string kIdent = "X";
  static const std::string kLiteral = "L";
  std::unordered_map<std::string_view, std::size_t> numbering;
  std::vector<std::vector<Token>> lines;
  lines.reserve(pretty_lines.size());

  // Consistent names are materialised up front so that token views into
  // `names` stay valid.
  for (const auto& line : pretty_lines) {
    lines.push_back(lex_java(line, LexMode::kLenient));
    if (mode != RenameMode::kConsistent) continue;
    for (const Token& t : lines.back()) {
      if (t.kind == TokenKind::kIdentifier && t.text != kLiteral) {
        numbering.try_emplace(t.text, numbering.size() + 1);
      }
    }
  }
  std::vector<std::string> names(numbering.size() + 1);
  for (const auto& [ident, n] : numbering) names[n] = "X" + std::to_string(n);

  std::vector<std::string> out;
  out.reserve(lines.size());
  for (auto& toks : lines) {
    for (Token& t : toks) {
      if (t.is_literal() || (t.kind == TokenKind::kIdentifier && t.text == kLiteral)) {
        t.kind = TokenKind::kIdentifier;
        t.text = kLiteral;
      } else if (t.kind == TokenKind::kIdentifier) {
        t.text = mode == RenameMode::kBlind ? std::string_view(kIdent)
                                            : std::string_view(names[numbering.at(t.text)]);
      }
    }
    out.push_back(render_tokens(toks));
  }
  return out;
}

std::size_t min_common_lines(std::size_t n, double threshold) {
  if (n == 0) return 0;
  auto ok = [&](std::size_t lines) {
    return static_cast<double>(lines) / static_cast<double>(n) >= threshold;
  };
  auto guess = static_cast<std::size_t>(std::ceil(threshold * static_cast<double>(n)));
  guess = std::min(guess, n);
  while (guess > 0 && ok(guess - 1)) --guess;
  while (guess < n && !ok(guess)) ++guess;
  return guess;
}

std::optional<PairClass> classify_pair_type(const MethodFragment& a, const MethodFragment& b,
                                            const CloneConfig& config) {
  auto min_lines = static_cast<std::size_t>(config.min_lines);
  if (a.pretty_lines.size() < min_lines || b.pretty_lines.size() < min_lines) return std::nullopt;
  std::size_t nlines = std::max(a.pretty_lines.size(), b.pretty_lines.size());
  if (a.pretty_lines == b.pretty_lines) return PairClass{CloneType::kI, nlines, nlines};
  if (config.max_type == CloneType::kI) return std::nullopt;
  auto ra = normalize_type2(a.pretty_lines, config.rename_mode);
  auto rb = normalize_type2(b.pretty_lines, config.rename_mode);
  if (ra == rb) return PairClass{CloneType::kII, nlines, nlines};
  if (config.max_type == CloneType::kII) return std::nullopt;
  std::unordered_map<std::string_view, std::uint32_t> ids;
  auto intern = [&](const std::vector<std::string>& lines) {
    std::vector<std::uint32_t> out;
    for (const auto& l : lines) {
      out.push_back(ids.try_emplace(l, static_cast<std::uint32_t>(ids.size())).first->second);
    }
    return out;
  };
  auto ia = intern(ra);
  auto ib = intern(rb);
  std::size_t matched = lcs_length(ia, ib);
  if (static_cast<double>(matched) / static_cast<double>(nlines) < config.type3_threshold) {
    return std::nullopt;
  }
  return PairClass{CloneType::kIII, matched, nlines};
}

bool pair_less(const ClonePair& a, const ClonePair& b) {
  return std::tie(a.left->release_id, a.left->file_path, a.left->begin_line, a.right->release_id,
                  a.right->file_path, a.right->begin_line) <
         std::tie(b.left->release_id, b.left->file_path, b.left->begin_line, b.right->release_id,
                  b.right->file_path, b.right->begin_line);
}

FragmentSet all_fragments(const ReleaseCatalog& catalog) {
  FragmentSet out;
  out.reserve(catalog.total_methods());
  for (const auto& f : catalog.fragments()) out.push_back(&f);
  return out;
}

namespace {

// Per-fragment data computed once per detection run.
struct Prepared {
  const MethodFragment* fragment = nullptr;
  std::vector<std::string> renamed;
  std::size_t pretty_hash = 0;
  std::size_t renamed_hash = 0;
  std::vector<std::uint32_t> line_ids;  // interned renamed lines
  std::vector<std::uint32_t> prefix;    // prefix-filter elements
  std::optional<LcsProfile> profile;
};

std::size_t hash_lines(const std::vector<std::string>& lines) {
  std::size_t h = lines.size();
  for (const auto& l : lines) {
    h ^= std::hash<std::string>{}(l) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i, 0u);
    return;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i, w);
    });
  }
}

class Detector {
 public:
  // Fragments [0, probe_count) are probes; with `within`, every fragment is
  // both probe and target and only pairs i < j are produced. Otherwise the
  // targets are [probe_count, size).
  Detector(std::vector<const MethodFragment*> universe, std::size_t probe_count, bool within,
           const CloneConfig& config, const DetectOptions& options)
      : config_(config), options_(options), within_(within), probe_count_(probe_count) {
    config_.validate();
    prepared_.resize(universe.size());
    for (std::size_t i = 0; i < universe.size(); ++i) prepared_[i].fragment = universe[i];
  }

  std::vector<ClonePair> run() {
    prepare();
    std::vector<std::vector<ClonePair>> per_worker(std::max(1u, options_.workers));
    if (!options_.lossless_filter) {
      probe_all(per_worker);
    } else if (config_.max_type == CloneType::kIII) {
      build_prefix_index();
      probe_prefixes(per_worker);
    } else {
      probe_buckets(per_worker);
    }
    std::vector<ClonePair> out;
    for (auto& v : per_worker) out.insert(out.end(), v.begin(), v.end());
    std::sort(out.begin(), out.end(), pair_less);
    return out;
  }

 private:
  bool is_target(std::size_t probe, std::size_t j) const {
    return within_ ? j > probe : j >= probe_count_;
  }

  std::size_t target_begin(std::size_t probe) const { return within_ ? probe + 1 : probe_count_; }

  void prepare() {
    bool need_renamed = config_.max_type != CloneType::kI;
    parallel_for(prepared_.size(), options_.workers, [&](std::size_t i, unsigned) {
      Prepared& p = prepared_[i];
      p.pretty_hash = hash_lines(p.fragment->pretty_lines);
      if (need_renamed) {
        p.renamed = normalize_type2(p.fragment->pretty_lines, config_.rename_mode);
        p.renamed_hash = hash_lines(p.renamed);
      }
    });
    if (config_.max_type != CloneType::kIII) return;
    std::unordered_map<std::string_view, std::uint32_t> ids;
    for (auto& p : prepared_) {
      p.line_ids.reserve(p.renamed.size());
      for (const auto& line : p.renamed) {
        p.line_ids.push_back(ids.try_emplace(line, static_cast<std::uint32_t>(ids.size())).first->second);
      }
    }
    parallel_for(prepared_.size(), options_.workers,
                 [&](std::size_t i, unsigned) { prepared_[i].profile.emplace(prepared_[i].line_ids); });
  }

  std::optional<ClonePair> verify(std::size_t i, std::size_t j) const {
    const Prepared& a = prepared_[i];
    const Prepared& b = prepared_[j];
    const auto& la = a.fragment->pretty_lines;
    const auto& lb = b.fragment->pretty_lines;
    std::size_t nlines = std::max(la.size(), lb.size());
    ClonePair pair{a.fragment, b.fragment, CloneType::kI, nlines, nlines};
    if (within_ && location_less(*b.fragment, *a.fragment)) std::swap(pair.left, pair.right);

    if (a.pretty_hash == b.pretty_hash && la == lb) return pair;
    if (config_.max_type == CloneType::kI) return std::nullopt;
    if (a.renamed_hash == b.renamed_hash && a.renamed == b.renamed) {
      pair.clone_type = CloneType::kII;
      return pair;
    }
    if (config_.max_type == CloneType::kII) return std::nullopt;
    std::size_t need = min_common_lines(nlines, config_.type3_threshold);
    if (std::min(la.size(), lb.size()) < need) return std::nullopt;
    std::size_t common = b.profile->lcs_with(a.line_ids);
    if (static_cast<double>(common) / static_cast<double>(nlines) < config_.type3_threshold) {
      return std::nullopt;
    }
    pair.clone_type = CloneType::kIII;
    pair.matched_lines = common;
    return pair;
  }

  void probe_all(std::vector<std::vector<ClonePair>>& out) const {
    parallel_for(probe_count_, options_.workers, [&](std::size_t i, unsigned w) {
      for (std::size_t j = target_begin(i); j < prepared_.size(); ++j) {
        if (auto p = verify(i, j)) out[w].push_back(*p);
      }
    });
  }

  // Type I/II only: exact matches share a hash bucket.
  void probe_buckets(std::vector<std::vector<ClonePair>>& out) const {
    bool by_renamed = config_.max_type == CloneType::kII;
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
    for (std::size_t j = 0; j < prepared_.size(); ++j) {
      if (within_ || j >= probe_count_) {
        const Prepared& p = prepared_[j];
        buckets[by_renamed ? p.renamed_hash : p.pretty_hash].push_back(j);
      }
    }
    parallel_for(probe_count_, options_.workers, [&](std::size_t i, unsigned w) {
      const Prepared& p = prepared_[i];
      auto it = buckets.find(by_renamed ? p.renamed_hash : p.pretty_hash);
      if (it == buckets.end()) return;
      for (std::size_t j : it->second) {
        if (!is_target(i, j)) continue;
        if (auto pair = verify(i, j)) out[w].push_back(*pair);
      }
    });
  }

  // Prefix filtering over the multiset of renamed lines. A Type-III pair
  // needs LCS >= k = min_common_lines(max length), and LCS never exceeds the
  // multiset overlap, so two fragments whose overlap reaches k must share an
  // element among the first n - k + 1 elements of each in a fixed global
  // order. Using each fragment's own length for k only lengthens prefixes.
  void build_prefix_index() {
    std::unordered_map<std::uint64_t, std::uint32_t> element_ids;
    std::vector<std::vector<std::uint32_t>> elements(prepared_.size());
    std::vector<std::uint32_t> frequency;
    for (std::size_t i = 0; i < prepared_.size(); ++i) {
      std::unordered_map<std::uint32_t, std::uint32_t> occurrence;
      for (std::uint32_t id : prepared_[i].line_ids) {
        std::uint64_t key = (std::uint64_t{id} << 32) | occurrence[id]++;
        auto [it, fresh] = element_ids.try_emplace(key, static_cast<std::uint32_t>(element_ids.size()));
        if (fresh) frequency.push_back(0);
        ++frequency[it->second];
        elements[i].push_back(it->second);
      }
    }
    postings_.assign(element_ids.size(), {});
    for (std::size_t i = 0; i < prepared_.size(); ++i) {
      auto& el = elements[i];
      std::sort(el.begin(), el.end(), [&](std::uint32_t x, std::uint32_t y) {
        return std::tie(frequency[x], x) < std::tie(frequency[y], y);
      });
      std::size_t n = el.size();
      std::size_t k = std::max<std::size_t>(1, min_common_lines(n, config_.type3_threshold));
      el.resize(std::min(n, n - k + 1));
      prepared_[i].prefix = std::move(el);
      if (within_ || i >= probe_count_) {
        for (std::uint32_t e : prepared_[i].prefix) postings_[e].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }

  void probe_prefixes(std::vector<std::vector<ClonePair>>& out) const {
    unsigned workers = std::max(1u, options_.workers);
    std::vector<std::vector<std::size_t>> stamps(workers, std::vector<std::size_t>(prepared_.size(), 0));
    parallel_for(probe_count_, workers, [&](std::size_t i, unsigned w) {
      auto& stamp = stamps[w];
      for (std::uint32_t e : prepared_[i].prefix) {
        for (std::uint32_t j : postings_[e]) {
          if (!is_target(i, j) || stamp[j] == i + 1) continue;
          stamp[j] = i + 1;
          if (auto pair = verify(i, j)) out[w].push_back(*pair);
        }
      }
    });
  }

  CloneConfig config_;
  DetectOptions options_;
  bool within_;
  std::size_t probe_count_;
  std::vector<Prepared> prepared_;
  std::vector<std::vector<std::uint32_t>> postings_;
};

std::vector<const MethodFragment*> long_enough(std::span<const MethodFragment* const> fragments,
                                               int min_lines) {
  std::vector<const MethodFragment*> out;
  for (const MethodFragment* f : fragments) {
    if (static_cast<int>(f->pretty_lines.size()) >= min_lines) out.push_back(f);
  }
  return out;
}

}  // namespace

std::vector<ClonePair> detect_clones_within(std::span<const MethodFragment* const> fragments,
                                            const CloneConfig& config, const DetectOptions& options) {
  auto universe = long_enough(fragments, config.min_lines);
  std::size_t n = universe.size();
  return Detector(std::move(universe), n, true, config, options).run();
}

std::vector<ClonePair> detect_clones_within(const ReleaseCatalog& catalog, const CloneConfig& config,
                                            const DetectOptions& options) {
  FragmentSet all = all_fragments(catalog);
  return detect_clones_within(all, config, options);
}

std::vector<ClonePair> cross_clones(std::span<const MethodFragment* const> old_fragments,
                                    std::span<const MethodFragment* const> new_fragments,
                                    const CloneConfig& config, const DetectOptions& options) {
  auto universe = long_enough(old_fragments, config.min_lines);
  std::size_t probes = universe.size();
  for (const MethodFragment* f : long_enough(new_fragments, config.min_lines)) universe.push_back(f);
  return Detector(std::move(universe), probes, false, config, options).run();
}

std::vector<ClonePair> cross_clones(std::span<const MethodFragment* const> old_fragments,
                                    const ReleaseCatalog& new_catalog, const CloneConfig& config,
                                    const DetectOptions& options) {
  FragmentSet all = all_fragments(new_catalog);
  return cross_clones(old_fragments, all, config, options);
}

}  // namespace promoscan
