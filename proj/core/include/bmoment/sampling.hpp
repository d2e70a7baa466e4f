#pragma once

#include <cstdint>
#include <vector>

namespace bmoment {

/// Halton low-discrepancy sequence in [0,1)^d.  The seed offsets the start
/// index, so identical (seed, n) always reproduce the same points bit for bit.
class HaltonSequence {
 public:
  explicit HaltonSequence(std::size_t dimensions, std::uint64_t seed = 0);

  /// Point #i of the stream (0-based, already seed-offset).
  std::vector<double> point(std::uint64_t i) const;

  std::size_t dimensions() const { return bases_.size(); }

 private:
  std::vector<std::uint32_t> bases_;
  std::uint64_t offset_;
};

}  // namespace bmoment
