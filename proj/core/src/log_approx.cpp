#include "hippo/log_approx.hpp"

#include <sstream>

namespace hippo {

namespace {

std::string node_to_token(const BitString& x) { return x.empty() ? "-" : x.str(); }

BitString token_to_node(const std::string& tok) {
  return tok == "-" ? BitString() : BitString(tok);
}

}  // namespace

std::string LogApproximation::serialize() const {
  std::ostringstream out;
  if (kind_ == RuleKind::LengthMinusK) {
    out << "f length-minus-k " << k_ << "\n";
  } else {
    out << "f table-to-depth " << depth_ << "\n";
  }
  out << "c " << c_ << "\n";
  if (kind_ == RuleKind::TableToDepth) {
    for (const auto& [x, v] : table_) out << node_to_token(x) << " " << v << "\n";
  }
  return out.str();
}

LogApproximation LogApproximation::parse(const std::string& text) {
  std::istringstream in(text);
  std::string key, rule;
  int param = 0, c = 0;
  if (!(in >> key >> rule >> param) || key != "f")
    throw std::invalid_argument("LogApproximation: expected \"f <rule> <param>\"");
  if (!(in >> key >> c) || key != "c")
    throw std::invalid_argument("LogApproximation: expected \"c <int>\"");
  if (rule == "length-minus-k") return length_minus_k(param, c);
  if (rule == "table-to-depth") {
    std::map<BitString, int> table;
    std::string tok;
    int v;
    while (in >> tok >> v) table[token_to_node(tok)] = v;
    return table_to_depth(param, std::move(table), c);
  }
  throw std::invalid_argument("LogApproximation: unknown rule \"" + rule + "\"");
}

}  // namespace hippo
