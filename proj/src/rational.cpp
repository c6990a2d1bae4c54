#include "winofir/rational.hpp"

#include <cctype>
#include <cmath>

namespace winofir {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

BigInt numerator_of(const Rational& v) {
  return boost::multiprecision::numerator(v);
}

BigInt denominator_of(const Rational& v) {
  return boost::multiprecision::denominator(v);
}

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  if (s.empty()) throw ParseError("empty rational literal");

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  auto slash = s.find('/');
  auto dot = s.find('.');
  Rational value;
  if (slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("bad rational literal '" + std::string(text) + "'");
    }
    BigInt d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(BigInt{std::string(num)}, d);
  } else if (dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) ||
        (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac))) {
      throw ParseError("bad decimal literal '" + std::string(text) + "'");
    }
    BigInt scaled = whole.empty() ? BigInt(0) : BigInt{std::string(whole)};
    BigInt den = 1;
    for (char c : frac) {
      scaled = scaled * 10 + (c - '0');
      den *= 10;
    }
    value = Rational(scaled, den);
  } else {
    if (!all_digits(s)) {
      throw ParseError("bad integer literal '" + std::string(text) + "'");
    }
    value = Rational(BigInt{std::string(s)});
  }
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& v) {
  if (denominator_of(v) == 1) return numerator_of(v).str();
  return v.str();
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw ParseError("non-finite value is not a rational");
  return Rational(v);  // exact binary expansion
}

double rational_to_double(const Rational& v) {
  return v.convert_to<double>();
}

}  // namespace winofir
