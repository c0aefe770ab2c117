#include "isoconv/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace isoconv {

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("empty number in '" + std::string(whole) + "'");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw std::invalid_argument("bad number '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("bad number '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

BigInt pow10(unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

Rational make_rational(long long num, long long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  BigInt n(num), d(den);
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return Rational(n, d);
}

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt p = parse_integer(text.substr(0, slash), text);
    BigInt q = parse_integer(text.substr(slash + 1), text);
    if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }

  std::string_view mantissa = text;
  long long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    BigInt ev = parse_integer(text.substr(e + 1), text);
    if (abs(ev) > 4000) throw std::invalid_argument("exponent out of range in '" + std::string(text) + "'");
    exponent = ev.convert_to<long long>();
  }

  std::string digits;
  unsigned frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view frac = mantissa.substr(dot + 1);
    if (frac.find_first_of("+-") != std::string_view::npos)
      throw std::invalid_argument("bad number '" + std::string(text) + "'");
    digits = std::string(mantissa.substr(0, dot)) + std::string(frac);
    frac_digits = static_cast<unsigned>(frac.size());
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("bad number '" + std::string(text) + "'");
  } else {
    digits = std::string(mantissa);
  }

  Rational q(parse_integer(digits, text));
  long long scale = exponent - static_cast<long long>(frac_digits);
  if (scale >= 0)
    q *= Rational(pow10(static_cast<unsigned>(scale)));
  else
    q /= Rational(pow10(static_cast<unsigned>(-scale)));
  return q;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double has no rational value");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // 53 mantissa bits fit in a long long after scaling.
  long long m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational q{BigInt(m)};
  BigInt two_pow = BigInt(1) << std::abs(exp);
  if (exp >= 0)
    q *= Rational(two_pow);
  else
    q /= Rational(two_pow);
  return q;
}

Rational pow(const Rational& base, unsigned exponent) {
  return Rational(boost::multiprecision::pow(numerator(base), exponent),
                  boost::multiprecision::pow(denominator(base), exponent));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace isoconv
