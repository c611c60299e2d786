#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "hippo/bitstring.hpp"

namespace hippo {

struct GammaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Elias gamma code of n >= 1: floor(log2 n) zeros, then n in binary.
/// Length 2*floor(log2 n) + 1; self-delimiting.
inline BitString elias_gamma(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("elias_gamma: n must be >= 1");
  int top = 63;
  while (!((n >> top) & 1)) --top;
  BitString out;
  for (int i = 0; i < top; ++i) out.push_back(0);
  for (int i = top; i >= 0; --i) out.push_back((n >> i) & 1);
  return out;
}

/// Decodes a gamma code starting at bits[pos]. Returns (value, bits consumed).
/// Throws GammaError on truncated input.
inline std::pair<std::uint64_t, int> elias_gamma_decode(const BitString& bits,
                                                        std::size_t pos = 0) {
  std::size_t i = pos;
  int zeros = 0;
  while (i < bits.size() && bits.bit(i) == 0) {
    ++zeros;
    ++i;
  }
  if (i >= bits.size() || zeros > 62) throw GammaError("elias_gamma_decode: truncated header");
  // i points at the leading 1; need `zeros` more bits after it.
  if (i + static_cast<std::size_t>(zeros) >= bits.size())
    throw GammaError("elias_gamma_decode: truncated payload");
  std::uint64_t n = 1;
  for (int j = 0; j < zeros; ++j) n = (n << 1) | static_cast<std::uint64_t>(bits.bit(i + 1 + j));
  return {n, 2 * zeros + 1};
}

}  // namespace hippo
