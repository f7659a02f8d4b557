#include "promoscan/lcs.h"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace promoscan {

LcsProfile::LcsProfile(std::span<const std::uint32_t> sequence)
    : length_(sequence.size()), words_((sequence.size() + 63) / 64) {
  symbols_.assign(sequence.begin(), sequence.end());
  std::sort(symbols_.begin(), symbols_.end());
  symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());
  masks_.assign(symbols_.size() * words_, 0);
  for (std::size_t j = 0; j < sequence.size(); ++j) {
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), sequence[j]);
    std::size_t row = static_cast<std::size_t>(it - symbols_.begin());
    masks_[row * words_ + j / 64] |= std::uint64_t{1} << (j % 64);
  }
}

const std::uint64_t* LcsProfile::mask_of(std::uint32_t symbol) const {
  auto it = std::lower_bound(symbols_.begin(), symbols_.end(), symbol);
  if (it == symbols_.end() || *it != symbol) return nullptr;
  return masks_.data() + static_cast<std::size_t>(it - symbols_.begin()) * words_;
}

// Hyyrö's formulation: V' = (V + (V & M)) | (V & ~M); the LCS length is the
// number of zero bits of V within the profiled length.
std::size_t LcsProfile::lcs_with(std::span<const std::uint32_t> other) const {
  if (length_ == 0 || other.empty()) return 0;
  std::vector<std::uint64_t> v(words_, ~std::uint64_t{0});
  for (std::uint32_t sym : other) {
    const std::uint64_t* m = mask_of(sym);
    if (m == nullptr) continue;
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t u = v[w] & m[w];
      std::uint64_t sum = v[w] + u;
      std::uint64_t c1 = sum < v[w] ? 1 : 0;
      std::uint64_t sum2 = sum + carry;
      std::uint64_t c2 = sum2 < sum ? 1 : 0;
      carry = c1 | c2;
      v[w] = sum2 | (v[w] & ~m[w]);
    }
  }
  std::size_t zeros = 0;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = ~v[w];
    std::size_t valid = std::min<std::size_t>(64, length_ - w * 64);
    if (valid < 64) bits &= (std::uint64_t{1} << valid) - 1;
    zeros += static_cast<std::size_t>(std::popcount(bits));
  }
  return zeros;
}

std::size_t lcs_length(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return LcsProfile(b).lcs_with(a);
}

double line_similarity(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("line_similarity: empty line list");
  std::unordered_map<std::string_view, std::uint32_t> ids;
  auto intern = [&](std::span<const std::string> lines) {
    std::vector<std::uint32_t> out;
    out.reserve(lines.size());
    for (const auto& l : lines) {
      out.push_back(ids.try_emplace(l, static_cast<std::uint32_t>(ids.size())).first->second);
    }
    return out;
  };
  std::vector<std::uint32_t> ia = intern(a);
  std::vector<std::uint32_t> ib = intern(b);
  std::size_t common = lcs_length(ia, ib);
  return static_cast<double>(common) / static_cast<double>(std::max(a.size(), b.size()));
}

}  // namespace promoscan
