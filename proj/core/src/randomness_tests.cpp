#include "hippo/randomness_tests.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hippo {

namespace {

// Visits every string of length <= horizon in DFS order, carrying its mass.
void walk_tree(const Measure* P, int horizon,
               const std::function<void(const BitString&, const Dyadic&)>& visit) {
  std::function<void(const BitString&, const Dyadic&)> rec =
      [&](const BitString& x, const Dyadic& m) {
        visit(x, m);
        if (static_cast<int>(x.size()) >= horizon) return;
        Dyadic q1 = P ? P->next_one_prob(x) : Dyadic();
        BitString x0 = x, x1 = x;
        x0.push_back(0);
        x1.push_back(1);
        rec(x0, P ? m * (Dyadic::one() - q1) : m);
        rec(x1, P ? m * q1 : m);
      };
  rec(BitString(), Dyadic::one());
}

}  // namespace

TestFamily build_blind_test(const LogApproximation& la, const ComplexityTable& table,
                            int n_max, int horizon) {
  if (n_max < 1 || horizon < 0) throw std::invalid_argument("build_blind_test: bad parameters");
  TestFamily fam;
  fam.provenance = Provenance::Blind;
  fam.provenance_detail = la.serialize();
  fam.horizon = horizon;
  fam.table_version = table.version_tag();
  for (int n = 1; n <= n_max; ++n) {
    std::vector<BitString> members;
    walk_tree(nullptr, horizon, [&](const BitString& x, const Dyadic&) {
      auto km = table.lookup(x);
      if (km && *km < la.f(x) - n) members.push_back(x);
    });
    fam.levels.push_back(minimal_cover(members));
  }
  return fam;
}

TestFamily build_measure_test(const Measure& P, const ComplexityTable& table,
                              int n_max, int horizon) {
  if (n_max < 1 || horizon < 0) throw std::invalid_argument("build_measure_test: bad parameters");
  TestFamily fam;
  fam.provenance = Provenance::MeasureBuilt;
  fam.provenance_detail = P.describe();
  fam.horizon = horizon;
  fam.table_version = table.version_tag();
  for (int n = 1; n <= n_max; ++n) {
    std::vector<BitString> members;
    walk_tree(&P, horizon, [&](const BitString& x, const Dyadic& m) {
      auto km = table.lookup(x);
      if (km && cmp_dyadic_pow2(m, *km + n) == std::strong_ordering::less)
        members.push_back(x);
    });
    fam.levels.push_back(minimal_cover(members));
  }
  return fam;
}

VerificationReport verify_test(const TestFamily& T, const Measure& P, const LevelBound& bound) {
  VerificationReport report;
  report.bound_kind = bound.pow2 ? "pow2" : "table";
  bool all_ok = true;
  std::vector<bool> prev_ind;
  for (int n = 1; n <= T.n_max(); ++n) {
    LevelVerdict v;
    v.n = n;
    v.mass = cover_mass(T.level(n), P);
    v.bound = bound.at(n);
    v.mass_ok = v.mass < v.bound;
    std::vector<bool> ind = cover_indicator(T.level(n), T.horizon);
    if (n == 1) {
      v.nesting_ok = true;
    } else {
      v.nesting_ok = true;
      for (std::size_t j = 0; j < ind.size(); ++j)
        if (ind[j] && !prev_ind[j]) { v.nesting_ok = false; break; }
    }
    prev_ind = std::move(ind);
    all_ok = all_ok && v.mass_ok && v.nesting_ok;
    report.levels.push_back(std::move(v));
  }
  report.pass = all_ok;
  return report;
}

SandwichResult sandwich_check(const TestFamily& V, const TestFamily& U, int c) {
  if (V.horizon != U.horizon || V.n_max() != U.n_max())
    throw std::invalid_argument("sandwich_check: mismatched horizons");
  if (c < 0) throw std::invalid_argument("sandwich_check: c >= 0 required");
  const int L = V.horizon;
  const std::size_t cells = std::size_t(1) << L;

  auto cover_at = [&](const TestFamily& fam, int n) -> std::vector<bool> {
    if (n < 1) return std::vector<bool>(cells, true);  // full space below level 1
    return cover_indicator(fam.level(n), L);
  };
  auto cell_string = [&](std::size_t j) {
    BitString x;
    for (int b = L - 1; b >= 0; --b) x.push_back((j >> b) & 1);
    return x;
  };

  for (int n = 1; n <= V.n_max(); ++n) {
    std::vector<bool> v_n = cover_at(V, n);
    std::vector<bool> u_n = cover_at(U, n);
    std::vector<bool> v_nc = cover_at(V, n - c);
    for (std::size_t j = 0; j < cells; ++j) {
      if ((v_n[j] && !u_n[j]) || (u_n[j] && !v_nc[j]))
        return {false, std::make_pair(n, cell_string(j))};
    }
  }
  return {true, std::nullopt};
}

DeficiencyProfile deficiency_profile(const BitString& x, const Measure& P,
                                     const ComplexityTable& table) {
  DeficiencyProfile profile;
  std::optional<int> running;
  Dyadic m = Dyadic::one();
  for (std::size_t len = 0; len <= x.size(); ++len) {
    BitString prefix = x.prefix(len);
    if (len > 0) {
      Dyadic q1 = P.next_one_prob(x.prefix(len - 1));
      m = m * (x.bit(len - 1) ? q1 : Dyadic::one() - q1);
    }
    DeficiencyRow row;
    row.prefix = prefix;
    row.neg_log = neg_log_bounds(m);
    row.km = table.lookup(prefix);
    if (row.km) {
      row.deficiency = {row.neg_log.floor_neg_log - *row.km,
                        row.neg_log.ceil_neg_log - *row.km};
      int n = 0;
      while (cmp_dyadic_pow2(m, *row.km + n + 1) == std::strong_ordering::less) ++n;
      row.deepest_level = n;
      int lower = row.deficiency->first;
      running = running ? std::max(*running, lower) : lower;
    }
    row.running_max = running;
    profile.rows.push_back(std::move(row));
  }
  return profile;
}

EvidenceResult hippocratic_evidence(const BitString& x, const TestFamily& T) {
  for (int n = T.n_max(); n >= 1; --n) {
    if (const BitString* w = T.level(n).cover_intersects(x)) return {n, *w};
  }
  return {0, std::nullopt};
}

}  // namespace hippo
