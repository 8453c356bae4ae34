#include "xpkit/rational.hpp"

#include <cctype>

#include "xpkit/error.hpp"

namespace xpkit {

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) fail(ErrorKind::Io, "malformed number '" + std::string(whole) + "'");
  BigInt v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      fail(ErrorKind::Io, "malformed number '" + std::string(whole) + "'");
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  Rational r;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), whole);
    BigInt den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) fail(ErrorKind::Io, "zero denominator in '" + std::string(whole) + "'");
    r = Rational(num, den);
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp = text.substr(e + 1);
      bool neg_exp = false;
      if (!exp.empty() && (exp[0] == '-' || exp[0] == '+')) {
        neg_exp = exp[0] == '-';
        exp.remove_prefix(1);
      }
      exponent = parse_integer(exp, whole).convert_to<long>();
      if (neg_exp) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string_view int_part = text, frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      int_part = text.substr(0, dot);
      frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) {
      fail(ErrorKind::Io, "malformed number '" + std::string(whole) + "'");
    }
    BigInt num = int_part.empty() ? BigInt(0) : parse_integer(int_part, whole);
    BigInt den = 1;
    for (char c : frac_part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        fail(ErrorKind::Io, "malformed number '" + std::string(whole) + "'");
      }
      num = num * 10 + (c - '0');
      den *= 10;
    }
    BigInt scale = 1;
    for (long i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) scale *= 10;
    if (exponent >= 0) {
      num *= scale;
    } else {
      den *= scale;
    }
    r = Rational(num, den);
  }
  return negative ? Rational(-r) : r;
}

std::string to_fraction_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_decimal_string(const Rational& r, int digits) {
  const bool negative = r < 0;
  Rational a = negative ? Rational(-r) : r;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Rational scaled = a * scale;
  // Round half up.
  BigInt q = (numerator(scaled) * 2 + denominator(scaled)) / (denominator(scaled) * 2);
  std::string s = q.str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    }
    s.insert(s.size() - digits, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (negative && s != "0") s.insert(0, "-");
  return s;
}

}  // namespace xpkit
