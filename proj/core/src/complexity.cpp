#include "hippo/complexity.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>
#include <vector>

#include "hippo/gamma.hpp"

namespace hippo {

namespace {

// Gamma decode over a raw char buffer; returns false on truncation.
bool read_gamma(const std::string& bits, std::size_t& pos, std::uint64_t& out) {
  std::size_t i = pos;
  int zeros = 0;
  while (i < bits.size() && bits[i] == '0') {
    ++zeros;
    ++i;
  }
  if (i >= bits.size() || zeros > 62) return false;
  if (i + static_cast<std::size_t>(zeros) >= bits.size()) return false;
  std::uint64_t n = 1;
  for (int j = 0; j < zeros; ++j) n = (n << 1) | std::uint64_t(bits[i + 1 + j] - '0');
  pos = i + 1 + zeros;
  out = n;
  return true;
}

}  // namespace

BitString run_machine(const BitString& program, int out_cap) {
  if (out_cap < 1) throw std::invalid_argument("run_machine: out_cap >= 1 required");
  const std::string& bits = program.str();
  std::string out;
  std::size_t pos = 0;
  while (pos < bits.size() && static_cast<int>(out.size()) < out_cap) {
    char opcode = bits[pos++];
    if (opcode == '0') {
      std::uint64_t len;
      if (!read_gamma(bits, pos, len)) break;
      if (pos + len > bits.size()) break;  // partial payload: no output
      for (std::uint64_t j = 0; j < len && static_cast<int>(out.size()) < out_cap; ++j)
        out.push_back(bits[pos + j]);
      pos += len;
    } else {
      std::uint64_t count, len;
      if (!read_gamma(bits, pos, count)) break;
      if (!read_gamma(bits, pos, len)) break;
      if (pos + len > bits.size()) break;
      for (std::uint64_t r = 0; r < count && static_cast<int>(out.size()) < out_cap; ++r)
        for (std::uint64_t j = 0; j < len && static_cast<int>(out.size()) < out_cap; ++j)
          out.push_back(bits[pos + j]);
      pos += len;
    }
  }
  return BitString(out);
}

namespace {

// Programs of one fixed length over an index range; first writer per prefix
// wins inside a range, lengths are merged in increasing order by the caller.
void enumerate_range(int len, std::uint64_t begin, std::uint64_t end, int out_cap,
                     std::map<BitString, int>& entries) {
  std::string prog(static_cast<std::size_t>(len), '0');
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    for (int b = 0; b < len; ++b) prog[b] = ((idx >> b) & 1) ? '1' : '0';
    BitString out = run_machine(BitString(prog), out_cap);
    for (std::size_t l = 0; l <= out.size(); ++l) entries.emplace(out.prefix(l), len);
  }
}

}  // namespace

ComplexityTable enumerate_km(const EnumerationBudget& budget, int jobs) {
  if (budget.max_program_len < 0 || budget.max_program_len > 22)
    throw std::invalid_argument("enumerate_km: B must be in [0, 22]");
  if (budget.out_cap < 1) throw std::invalid_argument("enumerate_km: out_cap >= 1 required");
  if (jobs < 1) throw std::invalid_argument("enumerate_km: jobs >= 1 required");

  std::map<BitString, int> entries;
  for (int len = 0; len <= budget.max_program_len; ++len) {
    std::uint64_t total = std::uint64_t(1) << len;
    int workers = static_cast<int>(std::min<std::uint64_t>(jobs, total));
    if (workers <= 1) {
      enumerate_range(len, 0, total, budget.out_cap, entries);
      continue;
    }
    std::vector<std::map<BitString, int>> partial(workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      std::uint64_t begin = total * w / workers;
      std::uint64_t end = total * (w + 1) / workers;
      pool.emplace_back(enumerate_range, len, begin, end, budget.out_cap,
                        std::ref(partial[w]));
    }
    for (auto& t : pool) t.join();
    for (auto& p : partial)
      for (auto& [x, km] : p) entries.emplace(x, km);  // same length: any winner is minimal
  }
  return ComplexityTable(budget, std::move(entries));
}

Dyadic kraft_sum(const std::vector<BitString>& strings, const ComplexityTable& t) {
  Dyadic total;
  for (const auto& x : strings) {
    auto km = t.lookup(x);
    if (km) total += Dyadic::pow2_neg(*km);  // absent = +infinity, contributes 0
  }
  return total;
}

int compressor_surrogate(const BitString& x) {
  if (x.empty()) return 0;
  std::size_t n = x.size();
  // LITERAL
  int best = 1 + static_cast<int>(elias_gamma(n).size()) + static_cast<int>(n);
  // REPEAT of each leading pattern length that tiles x
  for (std::size_t len = 1; len < n; ++len) {
    bool tiles = true;
    for (std::size_t i = len; i < n && tiles; ++i)
      if (x.bit(i) != x.bit(i % len)) tiles = false;
    if (!tiles) continue;
    std::uint64_t count = (n + len - 1) / len;
    int cost = 1 + static_cast<int>(elias_gamma(count).size()) +
               static_cast<int>(elias_gamma(len).size()) + static_cast<int>(len);
    if (cost < best) best = cost;
  }
  return best;
}

}  // namespace hippo
