#include "hippo/measure.hpp"

#include <algorithm>
#include <functional>

namespace hippo {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fold_seed(const std::string& hex) {
  std::uint64_t s = 0x243f6a8885a308d3ull;
  for (char ch : hex) {
    int v;
    if (ch >= '0' && ch <= '9') v = ch - '0';
    else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
    else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
    else throw std::invalid_argument("hidden-seed: seed must be hex");
    s ^= static_cast<std::uint64_t>(v);
    splitmix64(s);
  }
  return s;
}

}  // namespace

HiddenSeedMeasure::HiddenSeedMeasure(std::string seed_hex)
    : seed_hex_(std::move(seed_hex)), state_(fold_seed(seed_hex_)) {}

bool HiddenSeedMeasure::sign_positive(std::size_t depth) const {
  std::uint64_t s = state_ + depth / 64;
  std::uint64_t word = splitmix64(s);
  return (word >> (depth % 64)) & 1;
}

Dyadic HiddenSeedMeasure::next_one_prob(const BitString& prefix) const {
  std::size_t i = prefix.size();
  // 1/2 +- 2^{-(i+2)} = (2^{i+1} +- 1) / 2^{i+2}
  BigInt half = BigInt(1) << static_cast<unsigned>(i + 1);
  BigInt num = sign_positive(i) ? BigInt(half + 1) : BigInt(half - 1);
  return Dyadic(num, static_cast<long>(i + 2));
}

std::pair<std::shared_ptr<Measure>, LogApproximation> hidden_seed(const std::string& seed_hex) {
  return {std::make_shared<HiddenSeedMeasure>(seed_hex),
          LogApproximation::length_minus_k(2, 4)};
}

bool validate_log_approx(const Measure& P, const LogApproximation& la, int depth) {
  // DFS with running mass products; sandwich checked for |x| >= 1 only.
  std::function<bool(const BitString&, const Dyadic&)> walk =
      [&](const BitString& x, const Dyadic& m) -> bool {
    if (!x.empty()) {
      int f = la.f(x);
      if (cmp_dyadic_pow2(m, f + la.c()) != std::strong_ordering::greater) return false;
      if (cmp_dyadic_pow2(m, f) != std::strong_ordering::less) return false;
    }
    if (static_cast<int>(x.size()) >= depth) return true;
    Dyadic q1 = P.next_one_prob(x);
    BitString x0 = x, x1 = x;
    x0.push_back(0);
    x1.push_back(1);
    return walk(x0, m * (Dyadic::one() - q1)) && walk(x1, m * q1);
  };
  return walk(BitString(), Dyadic::one());
}

namespace {

MassInterval sandwich_interval(const LogApproximation& la, const BitString& x) {
  if (x.empty()) {
    // At the root only the upper half of the sandwich applies: P(eps) = 1 is
    // admissible, so the interval is (2^{-c}, 1].
    return {Dyadic::pow2_neg(la.c()), Dyadic::one(), true, false};
  }
  int f = la.f(x);
  return {Dyadic::pow2_neg(f + la.c()), Dyadic::pow2_neg(f), true, true};
}

}  // namespace

FeasibilityReport feasibility_check(const LogApproximation& la, int depth) {
  if (depth < 0) throw std::invalid_argument("feasibility_check: depth >= 0 required");
  FeasibilityReport report;
  report.depth = depth;

  // Returns the propagated interval, or nullopt if this subtree already
  // failed (failure is recorded once, at the node where it surfaced).
  std::function<std::optional<MassInterval>(const BitString&)> walk =
      [&](const BitString& x) -> std::optional<MassInterval> {
    MassInterval own = sandwich_interval(la, x);
    if (static_cast<int>(x.size()) == depth) {
      report.intervals[x] = own;
      return own;
    }
    BitString x0 = x, x1 = x;
    x0.push_back(0);
    x1.push_back(1);
    auto i0 = walk(x0);
    auto i1 = walk(x1);
    if (!i0 || !i1) return std::nullopt;
    MassInterval merged = own.intersect(*i0 + *i1);
    report.intervals[x] = merged;
    if (merged.empty()) {
      report.feasible = false;
      if (!report.violating_node || x < *report.violating_node)
        report.violating_node = x;
      return std::nullopt;
    }
    return merged;
  };
  walk(BitString());
  return report;
}

BitString sample_string(const Measure& P, int length, std::mt19937_64& rng) {
  if (length < 0) throw std::invalid_argument("sample_string: length >= 0 required");
  BitString x;
  for (int i = 0; i < length; ++i) {
    Dyadic q1 = P.next_one_prob(x);
    if (q1.is_zero()) { x.push_back(0); continue; }
    if (q1 == Dyadic::one()) { x.push_back(1); continue; }
    long b = q1.exponent();  // q1 in (0,1) canonical => b >= 1
    BigInt r = 0;
    for (long drawn = 0; drawn < b; drawn += 64) {
      long chunk = std::min<long>(64, b - drawn);
      std::uint64_t w = rng();
      r = (r << static_cast<unsigned>(chunk)) |
          BigInt(chunk == 64 ? w : (w & ((1ull << chunk) - 1)));
    }
    x.push_back(r < q1.numerator() ? 1 : 0);
  }
  return x;
}

}  // namespace hippo
