#include "hippo/coding.hpp"

namespace hippo {

namespace {

// First len bits of the binary expansion of m, 0 <= m < 1.
BitString expansion_bits(const Dyadic& m, int len) {
  BitString out;
  const BigInt& a = m.numerator();
  long b = m.exponent();
  for (int i = 1; i <= len; ++i) {
    int bit = 0;
    if (!m.is_zero() && i <= b) bit = static_cast<int>((a >> static_cast<unsigned>(b - i)) & 1);
    out.push_back(bit);
  }
  return out;
}

}  // namespace

Codebook sfe_build(const std::vector<std::pair<BitString, Dyadic>>& items) {
  Dyadic total;
  for (const auto& [x, q] : items) {
    if (q.is_zero()) throw CodingError("sfe_build: zero mass for \"" + x.str() + "\"");
    total += q;
  }
  if (total > Dyadic::one())
    throw KraftViolation("sfe_build: masses sum to " + total.to_string() + " > 1");

  Codebook cb;
  cb.total = total;
  Dyadic cum;
  Dyadic half(1, 1);
  for (const auto& [x, q] : items) {
    int len = neg_log_bounds(q).ceil_neg_log + 1;
    Dyadic midpoint = cum + q * half;
    cb.entries.push_back({x, q, expansion_bits(midpoint, len)});
    cum += q;
  }
  return cb;
}

std::pair<BitString, int> sfe_decode(const Codebook& cb, const BitString& bits) {
  for (const auto& e : cb.entries) {
    if (is_prefix(e.codeword, bits))
      return {e.x, static_cast<int>(e.codeword.size())};
  }
  throw CodingError("sfe_decode: no codeword matches");
}

ScaledSubmeasure scaled_submeasure(const PrefixFreeSet& level_set, const LogApproximation& la,
                                   int level) {
  ScaledSubmeasure sub;
  sub.level = level;
  for (const auto& x : level_set.elements()) {
    long k = static_cast<long>(la.f(x)) + la.c() - level;
    if (k < 0)
      throw CodingError("scaled_submeasure: level " + std::to_string(level) +
                        " too deep for entry \"" + x.str() + "\" (f+c-n < 0)");
    Dyadic q = Dyadic::pow2_neg(k);
    sub.total += q;
    sub.values.emplace_back(x, q);
  }
  if (sub.total > Dyadic::one())
    throw KraftViolation("scaled submeasure at level " + std::to_string(level) +
                             " sums to " + sub.total.to_string() + " > 1",
                         level);
  return sub;
}

LevelledCode forward_codebook(const TestFamily& family, const LogApproximation& la) {
  LevelledCode lc;
  lc.approx_detail = la.serialize();
  lc.c = la.c();
  for (int n = 1; n <= family.n_max(); ++n) {
    if (family.level(n).empty()) continue;
    ScaledSubmeasure sub = scaled_submeasure(family.level(n), la, n);
    Codebook cb = sfe_build(sub.values);
    // Certify the length bound; the construction makes it an equality.
    for (const auto& e : cb.entries) {
      int full = 2 * floor_log2(n) + 1 + static_cast<int>(e.codeword.size());
      int bound = la.f(e.x) - n + 2 * floor_log2(n) + la.c() + 2;
      if (full > bound)
        throw CodingError("forward_codebook: length bound violated at level " +
                          std::to_string(n) + " entry \"" + e.x.str() + "\"");
    }
    lc.levels.emplace(n, std::move(cb));
  }
  return lc;
}

BitString encode_pair(const LevelledCode& lc, int n, const BitString& x) {
  auto it = lc.levels.find(n);
  const CodebookEntry* e = it == lc.levels.end() ? nullptr : it->second.find(x);
  if (!e)
    throw CodingError("encode_pair: (" + std::to_string(n) + ", \"" + x.str() +
                      "\") not in code");
  BitString out = elias_gamma(static_cast<std::uint64_t>(n));
  out.append(e->codeword);
  return out;
}

std::pair<int, BitString> decode_pair(const LevelledCode& lc, const BitString& bits) {
  auto [n, consumed] = elias_gamma_decode(bits);
  auto it = lc.levels.find(static_cast<int>(n));
  if (it == lc.levels.end())
    throw CodingError("decode_pair: no codebook for level " + std::to_string(n));
  auto [x, used] = sfe_decode(it->second, bits.suffix_from(static_cast<std::size_t>(consumed)));
  (void)used;
  return {static_cast<int>(n), x};
}

}  // namespace hippo
