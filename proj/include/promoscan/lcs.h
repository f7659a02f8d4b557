#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace promoscan {

/// Bit-parallel LCS against a fixed sequence: build once, compare many.
/// One 64-bit word per 64 symbols of the profiled sequence.
class LcsProfile {
 public:
  explicit LcsProfile(std::span<const std::uint32_t> sequence);

  std::size_t size() const { return length_; }
  std::size_t lcs_with(std::span<const std::uint32_t> other) const;

 private:
  const std::uint64_t* mask_of(std::uint32_t symbol) const;

  std::size_t length_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint32_t> symbols_;  // sorted, unique
  std::vector<std::uint64_t> masks_;    // symbols_.size() x words_
};

std::size_t lcs_length(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// |LCS(a, b)| / max(|a|, |b|) over whole lines compared for equality.
/// Throws std::invalid_argument when either list is empty.
double line_similarity(std::span<const std::string> a, std::span<const std::string> b);

}  // namespace promoscan
