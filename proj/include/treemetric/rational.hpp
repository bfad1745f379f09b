#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <iomanip>
#include <sstream>
#include <string>
#include <string_view>

#include "treemetric/error.hpp"

namespace treemetric {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "3", "-2", "3/7" or a decimal such as "0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { return ValidationError("not a rational number: '" + std::string(text) + "'"); };
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw fail();

  auto parse_int = [&](std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      neg = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) throw fail();
    BigInt v = 0;
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw fail();
      v = v * 10 + (c - '0');
    }
    return neg ? BigInt(-v) : v;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(trim(text.substr(0, slash)));
    BigInt den = parse_int(trim(text.substr(slash + 1)));
    if (den == 0) throw fail();
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool neg = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty() && frac.empty()) throw fail();
    BigInt w = whole.empty() ? BigInt(0) : parse_int(whole);
    BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
    if (!frac.empty() && (frac.front() == '-' || frac.front() == '+')) throw fail();
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    Rational r(w * scale + f, scale);
    return neg ? Rational(-r) : r;
  }

  return Rational(parse_int(text));
}

/// "8", "3/7", "-1/2".
inline std::string format_exact(const Rational& value) { return value.str(); }

/// Decimal rendering with up to `precision` significant digits.
inline std::string format_decimal(const Rational& value, int precision = 12) {
  std::ostringstream os;
  os << std::setprecision(precision) << value.convert_to<double>();
  return os.str();
}

}  // namespace treemetric
