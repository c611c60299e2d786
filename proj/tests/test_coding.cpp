#include <doctest.h>

#include <random>

#include "hippo/coding.hpp"

using namespace hippo;

namespace {

std::vector<std::pair<BitString, Dyadic>> random_subdistribution(std::mt19937_64& rng) {
  std::vector<std::pair<BitString, Dyadic>> items;
  Dyadic remaining = Dyadic::one();
  int count = 1 + static_cast<int>(rng() % 20);
  for (int i = 0; i < count; ++i) {
    long b = 1 + static_cast<long>(rng() % 10);
    BigInt a = 1 + BigInt(rng() % ((std::uint64_t(1) << b) - 1));
    Dyadic q(a, b);
    if (q > remaining) continue;
    remaining = remaining - q;
    BitString label;
    for (int k = 0; k < 8; ++k) label.push_back(rng() & 1);
    label.push_back(i & 1);  // labels need not be distinct strings; order is what matters
    items.emplace_back(label, q);
  }
  if (items.empty()) items.emplace_back(BitString("0"), Dyadic(1, 1));
  return items;
}

bool pairwise_prefix_free(const std::vector<BitString>& words) {
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = 0; j < words.size(); ++j)
      if (i != j && is_prefix(words[i], words[j])) return false;
  return true;
}

}  // namespace

TEST_CASE("elias gamma") {
  CHECK(elias_gamma(1) == BitString("1"));
  CHECK(elias_gamma(2) == BitString("010"));
  CHECK(elias_gamma(5) == BitString("00101"));
  CHECK_THROWS_AS(elias_gamma(0), std::invalid_argument);

  CHECK(elias_gamma_decode(BitString("11")) == std::pair<std::uint64_t, int>{1, 1});
  CHECK(elias_gamma_decode(BitString("0101")) == std::pair<std::uint64_t, int>{2, 3});
  CHECK_THROWS_AS(elias_gamma_decode(BitString("00")), GammaError);

  for (std::uint64_t n = 1; n <= 1000; ++n) {
    BitString code = elias_gamma(n);
    int floor_log = 0;
    while ((n >> (floor_log + 1)) != 0) ++floor_log;
    CHECK(code.size() == static_cast<std::size_t>(2 * floor_log + 1));
    auto [m, used] = elias_gamma_decode(code);
    CHECK(m == n);
    CHECK(used == static_cast<int>(code.size()));
  }
}

TEST_CASE("sfe_build examples") {
  Codebook single = sfe_build({{BitString("0"), Dyadic(1, 1)}});
  CHECK(single.entries[0].codeword == BitString("01"));  // midpoint 1/4, length 2

  Codebook three = sfe_build({{BitString("0"), Dyadic(1, 1)},
                              {BitString("10"), Dyadic(1, 2)},
                              {BitString("11"), Dyadic(1, 2)}});
  CHECK(three.entries[0].codeword.size() == 2);
  CHECK(three.entries[1].codeword.size() == 3);
  CHECK(three.entries[2].codeword.size() == 3);
  std::vector<BitString> words;
  for (const auto& e : three.entries) words.push_back(e.codeword);
  CHECK(pairwise_prefix_free(words));

  CHECK_THROWS_AS(sfe_build({{BitString("0"), Dyadic(3, 2)}, {BitString("1"), Dyadic(1, 1)}}),
                  KraftViolation);
  CHECK_THROWS_AS(sfe_build({{BitString("0"), Dyadic::zero()}}), CodingError);
}

TEST_CASE("sfe law on random subdistributions") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    auto items = random_subdistribution(rng);
    Codebook cb = sfe_build(items);
    std::vector<BitString> words;
    Dyadic kraft;
    for (const auto& e : cb.entries) {
      CHECK(e.codeword.size() ==
            static_cast<std::size_t>(neg_log_bounds(e.q).ceil_neg_log + 1));
      words.push_back(e.codeword);
      kraft += Dyadic::pow2_neg(static_cast<long>(e.codeword.size()));
    }
    CHECK(pairwise_prefix_free(words));
    CHECK(!(kraft > Dyadic::one()));
  }
}

TEST_CASE("sfe_decode") {
  std::mt19937_64 rng(37);
  auto items = random_subdistribution(rng);
  Codebook cb = sfe_build(items);
  for (const auto& e : cb.entries) {
    BitString padded = e.codeword;
    padded.push_back(1);
    auto [x, used] = sfe_decode(cb, padded);
    CHECK(x == e.x);
    CHECK(used == static_cast<int>(e.codeword.size()));
    if (e.codeword.size() > 1) {
      // a strictly truncated codeword matches nothing
      BitString cut = e.codeword.prefix(e.codeword.size() - 1);
      bool is_full_word = false;
      for (const auto& other : cb.entries)
        if (other.codeword == cut) is_full_word = true;
      if (!is_full_word) CHECK_THROWS_AS(sfe_decode(cb, cut), CodingError);
    }
  }
  CHECK_THROWS_AS(sfe_decode(Codebook{}, BitString("0101")), CodingError);
}

TEST_CASE("scaled submeasure") {
  auto la = LogApproximation::length_minus_k(1, 2);
  PrefixFreeSet level({BitString("00"), BitString("01")});
  ScaledSubmeasure sub = scaled_submeasure(level, la, 1);
  // q = 2^{1-(1+2)} = 1/4 per entry, sum 1/2
  CHECK(sub.values[0].second == Dyadic(1, 2));
  CHECK(sub.values[1].second == Dyadic(1, 2));
  CHECK(sub.total == Dyadic(1, 1));

  // n beyond f+c for an entry is a level/string mismatch
  CHECK_THROWS_AS(scaled_submeasure(PrefixFreeSet({BitString("0")}), la, 5), CodingError);

  // sum above 1: f identically 0 with c = 1 gives q = 1 per entry at level 1
  std::map<BitString, int> zeros{{BitString(), 0}, {BitString("0"), 0}, {BitString("1"), 0}};
  auto flat = LogApproximation::table_to_depth(1, zeros, 1);
  CHECK_THROWS_AS(scaled_submeasure(PrefixFreeSet({BitString("0"), BitString("1")}), flat, 1),
                  KraftViolation);
}

TEST_CASE("forward codebook and pair codec") {
  auto la = LogApproximation::length_minus_k(1, 2);
  TestFamily fam;
  fam.provenance = Provenance::External;
  fam.horizon = 4;
  fam.levels.push_back(PrefixFreeSet({BitString("00"), BitString("01")}));
  fam.levels.push_back(PrefixFreeSet({BitString("0000"), BitString("0111")}));

  LevelledCode lc = forward_codebook(fam, la);
  REQUIRE(lc.levels.count(1) == 1);
  REQUIRE(lc.levels.count(2) == 1);

  // per-entry bound |code(n,x)| <= f(x) - n + 2 floor(log n) + c + 2
  std::vector<BitString> full_words;
  for (const auto& [n, cb] : lc.levels) {
    for (const auto& e : cb.entries) {
      BitString word = encode_pair(lc, n, e.x);
      full_words.push_back(word);
      int bound = la.f(e.x) - n + 2 * floor_log2(n) + la.c() + 2;
      CHECK(static_cast<int>(word.size()) <= bound);
      CHECK(decode_pair(lc, word) == std::pair<int, BitString>{n, e.x});
    }
  }
  CHECK(pairwise_prefix_free(full_words));
  CHECK_THROWS_AS(encode_pair(lc, 1, BitString("11")), CodingError);
  CHECK_THROWS_AS(encode_pair(lc, 3, BitString("00")), CodingError);
}
