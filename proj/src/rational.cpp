#include "ibnls/rational.hpp"

namespace ibnls {

namespace {

bool is_integer_literal(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_literal(text))
      throw std::invalid_argument("malformed rational '" + text + "'");
    return Rational(BigInt(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den))
    throw std::invalid_argument("malformed rational '" + text + "'");
  const BigInt d(den);
  if (d == 0) throw std::invalid_argument("malformed rational '" + text + "': zero denominator");
  return Rational(BigInt(num)) / Rational(d);
}

Exponent parse_exponent(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF") return Exponent::infinity();
  return Exponent(parse_rational(text));
}

}  // namespace ibnls
