#include "polya/rational.hpp"

#include <cctype>

namespace polya {

namespace {

BigInt pow10(std::size_t n) {
  BigInt p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 10;
  return p;
}

// plain base-10 integer parse; Boost would read a leading 0 as octal
BigInt parse_decimal_int(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("malformed rational literal");
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  if (pos == s.size()) throw std::invalid_argument("malformed rational literal");
  BigInt value = 0;
  for (; pos < s.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(s[pos])))
      throw std::invalid_argument("malformed rational literal: " + s);
    value = value * 10 + (s[pos] - '0');
  }
  return negative ? BigInt(-value) : value;
}

}  // namespace

Rational rational_from_string(std::string_view s) {
  std::string str(s);
  if (str.empty()) throw std::invalid_argument("empty rational literal");

  if (auto pos = str.find('/'); pos != std::string::npos) {
    BigInt num = parse_decimal_int(str.substr(0, pos));
    BigInt den = parse_decimal_int(str.substr(pos + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in rational literal");
    return Rational(num, den);
  }

  // decimal with optional exponent: [-]ddd[.ddd][e[-]dd]
  int exp10 = 0;
  if (auto pos = str.find_first_of("eE"); pos != std::string::npos) {
    exp10 = std::stoi(str.substr(pos + 1));
    str = str.substr(0, pos);
  }
  std::size_t frac_digits = 0;
  if (auto pos = str.find('.'); pos != std::string::npos) {
    frac_digits = str.size() - pos - 1;
    str.erase(pos, 1);
  }
  Rational q(parse_decimal_int(str), pow10(frac_digits));
  if (exp10 > 0)
    q *= pow10(static_cast<std::size_t>(exp10));
  else if (exp10 < 0)
    q /= pow10(static_cast<std::size_t>(-exp10));
  return q;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return Rational(0);
  BigInt num = numerator(q), den = denominator(q);
  BigInt rn = sqrt(num), rd = sqrt(den);
  if (rn * rn != num || rd * rd != den) return std::nullopt;
  return Rational(rn, rd);
}

}  // namespace polya
