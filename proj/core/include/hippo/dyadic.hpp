#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <stdexcept>
#include <string>

namespace hippo {

using BigInt = boost::multiprecision::cpp_int;

struct LogBounds {
  int floor_neg_log = 0;
  int ceil_neg_log = 0;
  bool operator==(const LogBounds&) const = default;
};

/// Exact nonnegative dyadic rational num / 2^exp.
///
/// Canonical form: num is odd or zero; exp is 0 when num is zero. exp may be
/// negative so that even integers stay canonical (2 == 1/2^-1). All
/// arithmetic is exact; nothing in a verification path ever rounds.
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}

  Dyadic(BigInt num, long exp) : num_(std::move(num)), exp_(exp) {
    if (num_ < 0) throw std::invalid_argument("Dyadic: negative numerator");
    canonicalize();
  }

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(1, 0); }

  /// 2^{-k}; k may be negative for powers >= 2.
  static Dyadic pow2_neg(long k) { return Dyadic(1, k); }

  const BigInt& numerator() const { return num_; }
  long exponent() const { return exp_; }

  bool is_zero() const { return num_ == 0; }

  bool operator==(const Dyadic&) const = default;

  std::strong_ordering operator<=>(const Dyadic& other) const {
    long e = std::max(exp_, other.exp_);
    BigInt lhs = num_ << static_cast<unsigned>(e - exp_);
    BigInt rhs = other.num_ << static_cast<unsigned>(e - other.exp_);
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Dyadic operator+(const Dyadic& other) const {
    long e = std::max(exp_, other.exp_);
    BigInt lhs = num_ << static_cast<unsigned>(e - exp_);
    BigInt rhs = other.num_ << static_cast<unsigned>(e - other.exp_);
    return Dyadic(lhs + rhs, e);
  }

  /// Exact subtraction; requires *this >= other.
  Dyadic operator-(const Dyadic& other) const {
    long e = std::max(exp_, other.exp_);
    BigInt lhs = num_ << static_cast<unsigned>(e - exp_);
    BigInt rhs = other.num_ << static_cast<unsigned>(e - other.exp_);
    if (lhs < rhs) throw std::invalid_argument("Dyadic: subtraction underflow");
    return Dyadic(lhs - rhs, e);
  }

  Dyadic operator*(const Dyadic& other) const {
    return Dyadic(num_ * other.num_, exp_ + other.exp_);
  }

  Dyadic& operator+=(const Dyadic& other) { return *this = *this + other; }

  /// Serialized form "a/2^b" with b >= 0.
  std::string to_string() const;
  static Dyadic parse(std::string_view s);

 private:
  void canonicalize() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    unsigned tz = boost::multiprecision::lsb(num_);
    if (tz > 0) {
      num_ >>= tz;
      exp_ -= static_cast<long>(tz);
    }
  }

  BigInt num_;
  long exp_;
};

/// Exact three-way comparison of d against 2^{-k}.
inline std::strong_ordering cmp_dyadic_pow2(const Dyadic& d, long k) {
  return d <=> Dyadic::pow2_neg(k);
}

/// Integer bracketing of -log2(d) for 0 < d <= 1:
/// 2^{-ceil} <= d <= 2^{-floor}, with floor == ceil iff d is a power of two.
inline LogBounds neg_log_bounds(const Dyadic& d) {
  if (d.is_zero() || d > Dyadic::one())
    throw std::invalid_argument("neg_log_bounds: requires 0 < d <= 1");
  // d = a/2^b with a odd; 2^t <= a < 2^{t+1}.
  long t = static_cast<long>(boost::multiprecision::msb(d.numerator()));
  long b = d.exponent();
  if (d.numerator() == 1) return LogBounds{static_cast<int>(b), static_cast<int>(b)};
  return LogBounds{static_cast<int>(b - t - 1), static_cast<int>(b - t)};
}

}  // namespace hippo
