#pragma once

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hippo {

/// Finite binary string. The empty string is written "-" in file formats.
///
/// Ordering is shortlex (length first, then lexicographic), which is the
/// canonical order used for sets, codebooks and reports everywhere in the
/// project.
class BitString {
 public:
  BitString() = default;

  explicit BitString(std::string_view s) : bits_(s) {
    for (char ch : bits_) {
      if (ch != '0' && ch != '1')
        throw std::invalid_argument("BitString: invalid character");
    }
  }

  static BitString zeros(std::size_t n) { return BitString(std::string(n, '0'), 0); }
  static BitString ones(std::size_t n) { return BitString(std::string(n, '1'), 0); }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  /// Bit at position i as 0 or 1.
  int bit(std::size_t i) const { return bits_[i] - '0'; }

  void push_back(int b) { bits_.push_back(b ? '1' : '0'); }

  void append(const BitString& other) { bits_ += other.bits_; }

  BitString prefix(std::size_t len) const {
    return BitString(bits_.substr(0, len), 0);
  }

  BitString suffix_from(std::size_t pos) const {
    return BitString(bits_.substr(pos), 0);
  }

  const std::string& str() const { return bits_; }

  bool operator==(const BitString&) const = default;

  std::strong_ordering operator<=>(const BitString& other) const {
    if (bits_.size() != other.bits_.size())
      return bits_.size() <=> other.bits_.size();
    return bits_.compare(other.bits_) <=> 0;
  }

 private:
  BitString(std::string s, int) : bits_(std::move(s)) {}
  std::string bits_;
};

inline BitString concat(const BitString& a, const BitString& b) {
  BitString r = a;
  r.append(b);
  return r;
}

/// a is a prefix of b (cylinder containment: every extension of b extends a).
inline bool is_prefix(const BitString& a, const BitString& b) {
  if (a.size() > b.size()) return false;
  return b.str().compare(0, a.size(), a.str()) == 0;
}

}  // namespace hippo
