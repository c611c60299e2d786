#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hippo/dyadic.hpp"
#include "hippo/family.hpp"
#include "hippo/gamma.hpp"
#include "hippo/log_approx.hpp"

namespace hippo {

/// A per-level mass sum exceeded 1, implicating either (f, c) or the claimed
/// test property of the family upstream.
struct KraftViolation : std::runtime_error {
  explicit KraftViolation(std::string msg, int level = 0)
      : std::runtime_error(std::move(msg)), level(level) {}
  int level;
};

struct CodingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CodebookEntry {
  BitString x;
  Dyadic q;
  BitString codeword;
};

struct Codebook {
  std::vector<CodebookEntry> entries;
  Dyadic total;

  const CodebookEntry* find(const BitString& x) const {
    for (const auto& e : entries)
      if (e.x == x) return &e;
    return nullptr;
  }
};

/// Shannon-Fano-Elias codebook over items in the caller's (canonical) order:
/// codeword_i = first l_i bits of the cumulative midpoint
/// sum_{j<i} q_j + q_i/2, with l_i = ceil(-log q_i) + 1.
/// Throws KraftViolation when sum q > 1, CodingError on nonpositive q.
Codebook sfe_build(const std::vector<std::pair<BitString, Dyadic>>& items);

/// Longest-match decode of the leading codeword. Throws CodingError when no
/// codeword is a prefix of bits.
std::pair<BitString, int> sfe_decode(const Codebook& cb, const BitString& bits);

/// Level-n scaled submeasure q_n(x) = 2^{n - (f(x)+c)} over the level's
/// entries. The sum bound <= 1 is exactly what the test property guarantees.
struct ScaledSubmeasure {
  int level = 0;
  std::vector<std::pair<BitString, Dyadic>> values;
  Dyadic total;
};

ScaledSubmeasure scaled_submeasure(const PrefixFreeSet& level_set, const LogApproximation& la,
                                   int level);

/// Per-level SFE books behind a self-delimiting gamma level header. The full
/// codeword for (n, x) is gamma(n) ++ level-n codeword of x, prefix-free over
/// all levels jointly.
struct LevelledCode {
  std::string approx_detail;  // serialized (f, c)
  int c = 0;
  std::map<int, Codebook> levels;

  bool has(int n, const BitString& x) const {
    auto it = levels.find(n);
    return it != levels.end() && it->second.find(x) != nullptr;
  }
};

/// Forward construction: builds the scaled submeasure and SFE book per
/// nonempty level, and certifies the per-entry length bound
/// |code(n, x)| <= f(x) - n + 2*floor(log n) + c + 2.
LevelledCode forward_codebook(const TestFamily& family, const LogApproximation& la);

BitString encode_pair(const LevelledCode& lc, int n, const BitString& x);
std::pair<int, BitString> decode_pair(const LevelledCode& lc, const BitString& bits);

/// floor(log2 n) for n >= 1; the gamma header has 2*floor_log2(n) + 1 bits.
inline int floor_log2(int n) {
  if (n < 1) throw std::invalid_argument("floor_log2: n >= 1 required");
  int t = 0;
  while (n >> (t + 1)) ++t;
  return t;
}

}  // namespace hippo
