#include "bmoment/sampling.hpp"

#include <stdexcept>

namespace bmoment {

namespace {

constexpr std::uint32_t kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                     23, 29, 31, 37, 41, 43, 47, 53};

double radical_inverse(std::uint64_t n, std::uint32_t base) {
  double inv_base = 1.0 / base;
  double scale = inv_base;
  double value = 0.0;
  while (n > 0) {
    value += static_cast<double>(n % base) * scale;
    n /= base;
    scale *= inv_base;
  }
  return value;
}

}  // namespace

HaltonSequence::HaltonSequence(std::size_t dimensions, std::uint64_t seed) {
  if (dimensions == 0 || dimensions > std::size(kPrimes))
    throw std::invalid_argument("unsupported Halton dimension");
  bases_.assign(kPrimes, kPrimes + dimensions);
  // Skip the first few points (they cluster) and offset by the seed.
  offset_ = 17 + seed * 0x9E3779B1ull % 1000003ull;
}

std::vector<double> HaltonSequence::point(std::uint64_t i) const {
  std::vector<double> p(bases_.size());
  for (std::size_t d = 0; d < bases_.size(); ++d)
    p[d] = radical_inverse(offset_ + i, bases_[d]);
  return p;
}

}  // namespace bmoment
