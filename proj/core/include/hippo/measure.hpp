#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hippo/bitstring.hpp"
#include "hippo/dyadic.hpp"
#include "hippo/log_approx.hpp"

namespace hippo {

/// A probability measure on the binary tree, defined by its conditional
/// next-bit probabilities. Additivity mass(x) = mass(x0) + mass(x1) holds
/// structurally: mass is always the product of conditionals along x.
class Measure {
 public:
  virtual ~Measure() = default;

  /// P(next bit = 1 | prefix). Must lie in [0, 1].
  virtual Dyadic next_one_prob(const BitString& prefix) const = 0;

  /// Identifier used in provenance fields and reports.
  virtual std::string describe() const = 0;

  Dyadic mass(const BitString& x) const {
    Dyadic m = Dyadic::one();
    for (std::size_t i = 0; i < x.size(); ++i) {
      Dyadic q1 = next_one_prob(x.prefix(i));
      m = m * (x.bit(i) ? q1 : Dyadic::one() - q1);
    }
    return m;
  }
};

class BernoulliMeasure final : public Measure {
 public:
  explicit BernoulliMeasure(Dyadic p) : p_(std::move(p)) {
    if (!(p_ > Dyadic::zero() && p_ < Dyadic::one()))
      throw std::invalid_argument("bernoulli: p must be in (0,1)");
  }
  Dyadic next_one_prob(const BitString&) const override { return p_; }
  std::string describe() const override { return "bernoulli p=" + p_.to_string(); }
  const Dyadic& p() const { return p_; }

 private:
  Dyadic p_;
};

/// First-bit distribution plus a 2x2 row-stochastic transition table.
/// transition[b] = P(next bit = 1 | previous bit = b).
class MarkovMeasure final : public Measure {
 public:
  MarkovMeasure(Dyadic initial_one, std::array<Dyadic, 2> transition_one)
      : initial_(std::move(initial_one)), trans_(std::move(transition_one)) {
    auto in_open_unit = [](const Dyadic& d) {
      return d > Dyadic::zero() && d < Dyadic::one();
    };
    if (!in_open_unit(initial_) || !in_open_unit(trans_[0]) || !in_open_unit(trans_[1]))
      throw std::invalid_argument("markov: probabilities must be in (0,1)");
  }
  Dyadic next_one_prob(const BitString& prefix) const override {
    if (prefix.empty()) return initial_;
    return trans_[prefix.bit(prefix.size() - 1)];
  }
  std::string describe() const override {
    return "markov init=" + initial_.to_string() + " t0=" + trans_[0].to_string() +
           " t1=" + trans_[1].to_string();
  }
  const Dyadic& initial_one() const { return initial_; }
  const std::array<Dyadic, 2>& transition_one() const { return trans_; }

 private:
  Dyadic initial_;
  std::array<Dyadic, 2> trans_;
};

/// Log-approximative measure whose exact masses depend on a seed kept behind
/// the oracle boundary. Per-depth conditionals q_i = 1/2 + sigma_i * 2^{-(i+2)}
/// with seed-derived signs sigma_i; every conditional is dyadic and lies in
/// (1/4, 3/4), so -log mass(x) stays within |x| +- 2 and the pair
/// (f(x) = max(|x|-2, 0), c = 4) is a valid approximation.
class HiddenSeedMeasure final : public Measure {
 public:
  explicit HiddenSeedMeasure(std::string seed_hex);

  Dyadic next_one_prob(const BitString& prefix) const override;
  std::string describe() const override { return "hidden-seed"; }
  const std::string& seed_hex() const { return seed_hex_; }

 private:
  bool sign_positive(std::size_t depth) const;
  std::string seed_hex_;
  std::uint64_t state_;
};

/// The constructed witness pair: the auditor half may query the measure,
/// the blind half receives only the approximation.
std::pair<std::shared_ptr<Measure>, LogApproximation> hidden_seed(const std::string& seed_hex);

/// Strict sandwich 2^{-(f(x)+c)} < P(x) < 2^{-f(x)} for all 1 <= |x| <= depth.
/// The empty string is exempt (f(empty) = 0 while -log P(empty) = 0; the
/// strict lower comparison cannot hold there).
bool validate_log_approx(const Measure& P, const LogApproximation& la, int depth);

/// Dyadic interval with independent open/closed endpoint flags, used by the
/// feasibility propagation to honor the strict inequalities exactly.
struct MassInterval {
  Dyadic lo, hi;
  bool lo_open = false, hi_open = false;

  bool empty() const {
    if (lo < hi) return false;
    if (lo > hi) return true;
    return lo_open || hi_open;
  }
  MassInterval operator+(const MassInterval& o) const {
    return {lo + o.lo, hi + o.hi, lo_open || o.lo_open, hi_open || o.hi_open};
  }
  MassInterval intersect(const MassInterval& o) const {
    MassInterval r;
    if (lo > o.lo) { r.lo = lo; r.lo_open = lo_open; }
    else if (lo < o.lo) { r.lo = o.lo; r.lo_open = o.lo_open; }
    else { r.lo = lo; r.lo_open = lo_open || o.lo_open; }
    if (hi < o.hi) { r.hi = hi; r.hi_open = hi_open; }
    else if (hi > o.hi) { r.hi = o.hi; r.hi_open = o.hi_open; }
    else { r.hi = hi; r.hi_open = hi_open || o.hi_open; }
    return r;
  }
};

struct FeasibilityReport {
  int depth = 0;
  bool feasible = true;
  std::optional<BitString> violating_node;
  std::map<BitString, MassInterval> intervals;  // propagated interval per node
};

/// Necessary-condition check: does ANY measure satisfy the (f, c) sandwich
/// down to `depth`? Bottom-up interval propagation; infeasible iff some
/// node's constraint interval misses the sum of its children's intervals.
FeasibilityReport feasibility_check(const LogApproximation& la, int depth);

/// Exact sampling: at each step draw exponent-many uniform bits and compare
/// against the conditional's numerator.
BitString sample_string(const Measure& P, int length, std::mt19937_64& rng);

}  // namespace hippo
