#include "hippo/dyadic.hpp"

namespace hippo {

std::string Dyadic::to_string() const {
  BigInt a = num_;
  long b = exp_;
  if (b < 0) {
    a <<= static_cast<unsigned>(-b);
    b = 0;
  }
  return a.str() + "/2^" + std::to_string(b);
}

Dyadic Dyadic::parse(std::string_view s) {
  auto sep = s.find("/2^");
  if (sep == std::string_view::npos)
    throw std::invalid_argument("Dyadic: expected \"a/2^b\", got \"" + std::string(s) + "\"");
  std::string a_str(s.substr(0, sep));
  std::string b_str(s.substr(sep + 3));
  if (a_str.empty() || b_str.empty())
    throw std::invalid_argument("Dyadic: malformed \"" + std::string(s) + "\"");
  BigInt a;
  long b;
  try {
    a = BigInt(a_str);
    b = std::stol(b_str);
  } catch (const std::exception&) {
    throw std::invalid_argument("Dyadic: malformed \"" + std::string(s) + "\"");
  }
  if (b < 0) throw std::invalid_argument("Dyadic: negative exponent in serialized form");
  return Dyadic(a, b);
}

}  // namespace hippo
