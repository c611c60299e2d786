#include "hippo/prefix_sets.hpp"

#include <algorithm>
#include <stdexcept>

namespace hippo {

bool is_prefix_free(const std::vector<BitString>& strings) {
  // Shortlex sort puts any prefix before its extensions; each string only
  // needs checking against earlier, shorter ones.
  std::vector<BitString> sorted = strings;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (sorted[j] == sorted[i]) continue;  // duplicates are not overlap
      if (is_prefix(sorted[j], sorted[i])) return false;
    }
  }
  return true;
}

PrefixFreeSet::PrefixFreeSet(std::vector<BitString> elements) : elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
  if (!is_prefix_free(elems_))
    throw std::invalid_argument("PrefixFreeSet: elements are prefix-comparable");
}

bool PrefixFreeSet::covers(const BitString& x) const {
  for (const auto& e : elems_)
    if (is_prefix(e, x)) return true;
  return false;
}

const BitString* PrefixFreeSet::cover_intersects(const BitString& x) const {
  for (const auto& e : elems_)
    if (is_prefix(e, x) || is_prefix(x, e)) return &e;
  return nullptr;
}

PrefixFreeSet minimal_cover(const std::vector<BitString>& s) {
  std::vector<BitString> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<BitString> minimal;
  for (const auto& x : sorted) {
    bool dominated = false;
    for (const auto& m : minimal) {
      if (is_prefix(m, x)) { dominated = true; break; }
    }
    if (!dominated) minimal.push_back(x);
  }
  return PrefixFreeSet(std::move(minimal));
}

Dyadic cover_mass(const PrefixFreeSet& s, const Measure& P) {
  Dyadic total;
  for (const auto& x : s.elements()) total += P.mass(x);
  return total;
}

std::vector<bool> cover_indicator(const PrefixFreeSet& s, int depth) {
  if (depth < 0 || depth > 24) throw std::invalid_argument("cover_indicator: bad depth");
  std::vector<bool> ind(std::size_t(1) << depth, false);
  for (const auto& e : s.elements()) {
    if (static_cast<int>(e.size()) > depth)
      throw std::invalid_argument("cover_indicator: element deeper than indicator depth");
    std::size_t lo = 0;
    for (std::size_t i = 0; i < e.size(); ++i) lo = (lo << 1) | std::size_t(e.bit(i));
    std::size_t width = std::size_t(1) << (depth - e.size());
    lo <<= (depth - e.size());
    for (std::size_t j = lo; j < lo + width; ++j) ind[j] = true;
  }
  return ind;
}

std::vector<BitString> StreamingCover::insert(const BitString& x) {
  for (const auto& a : accepted_.elements())
    if (is_prefix(a, x)) return {};  // already covered

  // Walk Delta(x): emit a node as soon as no accepted element extends it;
  // stop at accepted elements (those parts are covered).
  std::vector<BitString> emitted;
  std::vector<BitString> stack{x};
  while (!stack.empty()) {
    BitString y = stack.back();
    stack.pop_back();
    bool is_accepted = false, has_extension = false;
    for (const auto& a : accepted_.elements()) {
      if (a == y) { is_accepted = true; break; }
      if (is_prefix(y, a)) has_extension = true;
    }
    if (is_accepted) continue;
    if (!has_extension) {
      emitted.push_back(y);
      continue;
    }
    BitString y0 = y, y1 = y;
    y0.push_back(0);
    y1.push_back(1);
    stack.push_back(y1);
    stack.push_back(y0);
  }
  std::sort(emitted.begin(), emitted.end());

  std::vector<BitString> all = accepted_.elements();
  all.insert(all.end(), emitted.begin(), emitted.end());
  accepted_ = PrefixFreeSet(std::move(all));
  return emitted;
}

}  // namespace hippo
