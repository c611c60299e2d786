#pragma once

#include <vector>

#include "hippo/bitstring.hpp"
#include "hippo/measure.hpp"

namespace hippo {

bool is_prefix_free(const std::vector<BitString>& strings);

/// Finite prefix-free set of strings, kept in shortlex order.
class PrefixFreeSet {
 public:
  PrefixFreeSet() = default;

  /// Sorts and validates; throws if two elements are prefix-comparable.
  explicit PrefixFreeSet(std::vector<BitString> elements);

  const std::vector<BitString>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }

  /// Some element is a prefix of x (x's cylinder lies inside the cover).
  bool covers(const BitString& x) const;

  /// Delta(x) intersects the cover: some element is a prefix of x or x is a
  /// prefix of some element. Returns a witness element if so.
  const BitString* cover_intersects(const BitString& x) const;

  bool operator==(const PrefixFreeSet&) const = default;

 private:
  std::vector<BitString> elems_;
};

/// Prefix-minimal elements of s; same cylinder cover, prefix-free.
PrefixFreeSet minimal_cover(const std::vector<BitString>& s);

/// Exact P(cover) = sum of masses over the (disjoint) cylinders.
Dyadic cover_mass(const PrefixFreeSet& s, const Measure& P);

/// Depth-d cylinder indicator: bit j set iff the j-th string of length d
/// (in lexicographic order) extends some element. All elements must have
/// length <= d.
std::vector<bool> cover_indicator(const PrefixFreeSet& s, int depth);

/// Incremental r.e.-to-prefix-free conversion. Inserting x emits the maximal
/// dyadic sub-cylinders of Delta(x) not yet covered; the accepted set stays
/// prefix-free and its cover equals the cover of everything inserted so far.
/// Emitted strings are never retracted, matching enumeration-only semantics.
class StreamingCover {
 public:
  /// Returns the emitted strings (possibly empty), in shortlex order.
  std::vector<BitString> insert(const BitString& x);

  const PrefixFreeSet& accepted() const { return accepted_; }

 private:
  PrefixFreeSet accepted_;
};

}  // namespace hippo
