#pragma once

#include <map>
#include <optional>
#include <string>

#include "hippo/bitstring.hpp"
#include "hippo/dyadic.hpp"

namespace hippo {

/// Any change to the interpreter invalidates cached tables and every
/// measured constant; bump this tag with the change.
inline constexpr const char* kMachineVersion = "mm-gamma-v1";

/// Runs the reference monotone machine on program p, truncating output at
/// out_cap bits.
///
/// Instruction stream, parsed left to right:
///   0 <gamma len> <len raw bits>              LITERAL: append the raw bits
///   1 <gamma count> <gamma len> <len bits>    REPEAT: append pattern count times
/// A trailing partial instruction contributes no output, which makes the
/// machine monotone: run(p) is a prefix of run(p.q).
BitString run_machine(const BitString& program, int out_cap);

struct EnumerationBudget {
  int max_program_len = 0;  // B
  int out_cap = 1;
};

/// Machine-relative complexity upper bounds:
/// Km_B(x) = min{ |p| : |p| <= B, x is a prefix of run(p) }.
/// Strings reached by no program within budget are absent (treated as
/// +infinity by every consumer).
class ComplexityTable {
 public:
  ComplexityTable(EnumerationBudget budget, std::map<BitString, int> entries)
      : budget_(budget), entries_(std::move(entries)) {}

  std::optional<int> lookup(const BitString& x) const {
    auto it = entries_.find(x);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  const EnumerationBudget& budget() const { return budget_; }
  const std::map<BitString, int>& entries() const { return entries_; }

  std::string version_tag() const {
    return std::string(kMachineVersion) + " B=" + std::to_string(budget_.max_program_len) +
           " out_cap=" + std::to_string(budget_.out_cap);
  }

 private:
  EnumerationBudget budget_;
  std::map<BitString, int> entries_;  // shortlex keyed
};

/// Exhaustive program enumeration up to length B. Desk scale: B <= 22.
/// With jobs > 1 the program space is partitioned by index range and the
/// partial tables merged by pointwise minimum.
ComplexityTable enumerate_km(const EnumerationBudget& budget, int jobs = 1);

inline std::optional<int> km_upper(const BitString& x, const ComplexityTable& t) {
  return t.lookup(x);
}

/// Exact Kraft sum over a set of table entries; the defining admissibility
/// property demands this stays <= 1 on every prefix-free set.
Dyadic kraft_sum(const std::vector<BitString>& strings, const ComplexityTable& t);

/// Compressed-length proxy (greedy literal/repeat choice). NOT
/// Kraft-admissible; exploratory reporting only, never an input to test
/// builders.
int compressor_surrogate(const BitString& x);

}  // namespace hippo
