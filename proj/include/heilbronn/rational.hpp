#pragma once

// Arbitrary-precision rationals for the lower-bound side.  Certificates are
// exact by construction: no floating-point value ever enters a comparison.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace heilbronn {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "num/den" or a bare integer.  Decimal literals are rejected, not
// rounded: a coordinate like "0.5" silently rounded elsewhere would poison
// the certificate, so it is an error here.
inline Rational parse_rational(const std::string& text) {
  const auto bad = [&](const char* why) {
    throw std::invalid_argument("invalid rational '" + text + "': " + why);
  };
  if (text.empty()) bad("empty string");
  if (text.find('.') != std::string::npos)
    bad("decimal literals are not exact; write num/den");

  const auto slash = text.find('/');
  const std::string num_text = text.substr(0, slash);
  try {
    BigInt num(num_text);
    if (slash == std::string::npos) return Rational(num);
    BigInt den(text.substr(slash + 1));
    if (den == 0) bad("zero denominator");
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    bad("not an integer fraction");
  }
  return Rational();  // unreachable
}

inline std::string to_fraction_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace heilbronn
