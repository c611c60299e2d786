#include <doctest.h>

#include <random>

#include "hippo/complexity.hpp"
#include "hippo/prefix_sets.hpp"

using namespace hippo;

namespace {

// Re-enumerates programs to find, per target string, the first minimal
// program whose output extends it. Independent of the table construction.
std::vector<BitString> minimal_programs(const std::vector<BitString>& targets, int B,
                                        int out_cap) {
  std::vector<BitString> progs(targets.size());
  std::vector<bool> found(targets.size(), false);
  for (int len = 0; len <= B; ++len) {
    for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << len); ++idx) {
      std::string bits(len, '0');
      for (int b = 0; b < len; ++b) bits[b] = ((idx >> b) & 1) ? '1' : '0';
      BitString p(bits);
      BitString out = run_machine(p, out_cap);
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (!found[t] && is_prefix(targets[t], out)) {
          progs[t] = p;
          found[t] = true;
        }
      }
    }
  }
  return progs;
}

}  // namespace

TEST_CASE("run_machine basics") {
  CHECK(run_machine(BitString(), 16) == BitString());
  // LITERAL, length 2 coded as gamma "010", payload "10"
  CHECK(run_machine(BitString("001010"), 16) == BitString("10"));
  // REPEAT: count 3 ("011"), length 1 ("1"), pattern "0"
  CHECK(run_machine(BitString("1" "011" "1" "0"), 16) == BitString("000"));
  // trailing partial instruction contributes nothing
  CHECK(run_machine(BitString("001010" "00"), 16) == BitString("10"));
  // truncation at out_cap
  CHECK(run_machine(BitString("1" "011" "1" "0"), 2) == BitString("00"));
}

TEST_CASE("machine monotonicity, exhaustive to length 10") {
  for (int len = 0; len <= 10; ++len) {
    for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << len); ++idx) {
      std::string bits(len, '0');
      for (int b = 0; b < len; ++b) bits[b] = ((idx >> b) & 1) ? '1' : '0';
      BitString p(bits);
      BitString base = run_machine(p, 64);
      for (int ext = 0; ext < 2; ++ext) {
        BitString pq = p;
        pq.push_back(ext);
        CHECK(is_prefix(base, run_machine(pq, 64)));
      }
    }
  }
}

TEST_CASE("enumerate_km basics") {
  ComplexityTable t = enumerate_km({6, 8});
  CHECK(t.lookup(BitString()) == 0);  // the empty program outputs nothing
  auto km10 = t.lookup(BitString("10"));
  REQUIRE(km10.has_value());
  CHECK(*km10 <= 6);  // witness program above
  CHECK_THROWS_AS(enumerate_km({-1, 8}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_km({23, 8}), std::invalid_argument);
}

TEST_CASE("table entries are prefix monotone") {
  ComplexityTable t = enumerate_km({10, 12});
  for (const auto& [x, km] : t.entries()) {
    if (x.empty()) continue;
    auto parent = t.lookup(x.prefix(x.size() - 1));
    REQUIRE(parent.has_value());
    CHECK(*parent <= km);
  }
}

TEST_CASE("budget monotonicity") {
  ComplexityTable small = enumerate_km({8, 10});
  ComplexityTable big = enumerate_km({10, 10});
  for (const auto& [x, km] : small.entries()) {
    auto refined = big.lookup(x);
    REQUIRE(refined.has_value());
    CHECK(*refined <= km);
  }
  // something reachable at B=10 is absent at B=4
  bool gained = false;
  for (const auto& [x, km] : big.entries())
    if (!enumerate_km({4, 10}).lookup(x)) { gained = true; break; }
  CHECK(gained);
}

TEST_CASE("parallel enumeration matches sequential") {
  ComplexityTable seq = enumerate_km({10, 12}, 1);
  ComplexityTable par = enumerate_km({10, 12}, 4);
  CHECK(seq.entries() == par.entries());
}

TEST_CASE("kraft sums on level sets") {
  ComplexityTable t = enumerate_km({12, 8});
  for (int k = 0; k <= 6; ++k) {
    std::vector<BitString> level;
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << k); ++v) {
      BitString x;
      for (int b = k - 1; b >= 0; --b) x.push_back((v >> b) & 1);
      level.push_back(x);
    }
    CHECK(!(kraft_sum(level, t) > Dyadic::one()));
  }
}

TEST_CASE("minimal programs for a prefix-free set are prefix-incomparable") {
  ComplexityTable t = enumerate_km({12, 10});
  // all length-4 strings present in the table form a prefix-free set
  std::vector<BitString> targets;
  for (std::uint64_t v = 0; v < 16; ++v) {
    BitString x;
    for (int b = 3; b >= 0; --b) x.push_back((v >> b) & 1);
    if (t.lookup(x)) targets.push_back(x);
  }
  REQUIRE(targets.size() >= 2);
  auto progs = minimal_programs(targets, 12, 10);
  for (std::size_t i = 0; i < progs.size(); ++i) {
    CHECK(progs[i].size() == static_cast<std::size_t>(*t.lookup(targets[i])));
    for (std::size_t j = 0; j < i; ++j) {
      CHECK_FALSE(is_prefix(progs[i], progs[j]));
      CHECK_FALSE(is_prefix(progs[j], progs[i]));
    }
  }
}

TEST_CASE("km_upper") {
  ComplexityTable t4 = enumerate_km({4, 12});
  ComplexityTable t10 = enumerate_km({10, 12});
  CHECK(km_upper(BitString(), t10) == 0);
  // a string out of reach at B=4 but reached at B=10
  BitString target("0000000");
  CHECK_FALSE(km_upper(target, t4).has_value());
  auto later = km_upper(target, t10);
  REQUIRE(later.has_value());
  // monotone along prefixes
  CHECK(*km_upper(target.prefix(3), t10) <= *later);
}

TEST_CASE("compressor surrogate") {
  CHECK(compressor_surrogate(BitString()) == 0);
  CHECK(compressor_surrogate(BitString::zeros(64)) < 64);
  // doubling overhead stays within +9 slack, the measured worst case on the
  // exhaustive length <= 10 corpus
  for (int len = 1; len <= 10; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t(1) << len); ++v) {
      BitString x;
      for (int b = len - 1; b >= 0; --b) x.push_back((v >> b) & 1);
      CHECK(compressor_surrogate(concat(x, x)) <= compressor_surrogate(x) + 9);
    }
  }
}
