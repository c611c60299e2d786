#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "hippo/bitstring.hpp"

namespace hippo {

/// The pair (f, c): a computable integer lower bound on -log P plus a slack
/// constant. This is the ONLY measure information blind components may see.
///
/// f comes from a fixed catalogue so that a serialized approximation can be
/// rebuilt bit-for-bit:
///   - length-minus-k:    f(x) = max(|x| - k, 0)
///   - table-to-depth-d:  explicit values for |x| <= d; for longer x the
///     value extends as f(prefix_d(x)) + (|x| - d)
class LogApproximation {
 public:
  enum class RuleKind { LengthMinusK, TableToDepth };

  static LogApproximation length_minus_k(int k, int c) {
    if (k < 0 || c < 1) throw std::invalid_argument("LogApproximation: need k >= 0, c >= 1");
    LogApproximation la;
    la.kind_ = RuleKind::LengthMinusK;
    la.k_ = k;
    la.c_ = c;
    return la;
  }

  static LogApproximation table_to_depth(int depth, std::map<BitString, int> table, int c) {
    if (depth < 0 || c < 1) throw std::invalid_argument("LogApproximation: need depth >= 0, c >= 1");
    LogApproximation la;
    la.kind_ = RuleKind::TableToDepth;
    la.depth_ = depth;
    la.table_ = std::move(table);
    la.c_ = c;
    for (const auto& [x, v] : la.table_) {
      if (static_cast<int>(x.size()) > depth)
        throw std::invalid_argument("LogApproximation: table entry deeper than declared depth");
      if (v < 0) throw std::invalid_argument("LogApproximation: f must be nonnegative");
    }
    // Every node to the declared depth must have a value.
    std::size_t expect = (static_cast<std::size_t>(2) << depth) - 1;
    if (la.table_.size() != expect)
      throw std::invalid_argument("LogApproximation: table must cover every node to its depth");
    return la;
  }

  int f(const BitString& x) const {
    if (kind_ == RuleKind::LengthMinusK) {
      int n = static_cast<int>(x.size()) - k_;
      return n > 0 ? n : 0;
    }
    if (static_cast<int>(x.size()) <= depth_) return table_.at(x);
    return table_.at(x.prefix(depth_)) + (static_cast<int>(x.size()) - depth_);
  }

  int c() const { return c_; }
  RuleKind kind() const { return kind_; }

  std::string serialize() const;
  static LogApproximation parse(const std::string& text);

 private:
  LogApproximation() = default;
  RuleKind kind_ = RuleKind::LengthMinusK;
  int k_ = 0;
  int depth_ = 0;
  std::map<BitString, int> table_;
  int c_ = 1;
};

}  // namespace hippo
