#include "inj/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace inj {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer pow10(long e) {
  Integer r = 1;
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw std::invalid_argument("empty number");
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed fraction '" + std::string(text) + "'");
    Integer d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num)), d);
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6)
        throw std::invalid_argument("malformed exponent in '" + std::string(text) + "'");
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto whole = s.substr(0, dot);
      auto frac = s.substr(dot + 1);
      if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
          (whole.empty() && frac.empty()))
        throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
      digits = std::string(whole) + std::string(frac);
      exponent -= static_cast<long>(frac.size());
    } else {
      if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
      digits = std::string(s);
    }
    Integer mantissa(digits);
    if (exponent >= 0)
      value = Rational(mantissa * pow10(exponent));
    else
      value = Rational(mantissa, pow10(-exponent));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.str(); }

Rational exact_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  int exp = 0;
  double mant = std::frexp(value, &exp);
  // 53 bits of mantissa as an exact integer.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  Rational r{Integer(scaled)};
  exp -= 53;
  Integer two_pow = 1;
  for (int i = 0; i < std::abs(exp); ++i) two_pow *= 2;
  if (exp >= 0) return r * Rational(two_pow);
  return r / Rational(two_pow);
}

}  // namespace inj
