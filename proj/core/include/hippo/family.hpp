#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hippo/prefix_sets.hpp"

namespace hippo {

enum class Provenance { Blind, MeasureBuilt, External };

/// Nested test levels n -> prefix-free set, n = 1..n_max. Level covers must
/// be non-increasing in n down to the horizon.
struct TestFamily {
  Provenance provenance = Provenance::External;
  std::string provenance_detail;  // serialized (f, c) for blind, measure id otherwise
  int horizon = 0;                // L: strings up to this length were scanned
  std::string table_version;
  std::vector<PrefixFreeSet> levels;  // levels[i] is level i+1

  int n_max() const { return static_cast<int>(levels.size()); }

  const PrefixFreeSet& level(int n) const {
    if (n < 1 || n > n_max()) throw std::out_of_range("TestFamily: level out of range");
    return levels[static_cast<std::size_t>(n - 1)];
  }
};

inline std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Blind: return "blind";
    case Provenance::MeasureBuilt: return "measure";
    case Provenance::External: return "external";
  }
  throw std::logic_error("provenance_name");
}

}  // namespace hippo
