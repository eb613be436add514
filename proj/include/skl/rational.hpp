#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74's mixed rational/integer operator== recurses forever once C++20
// adds reversed candidates. Exact non-template overloads win resolution.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == static_cast<std::int64_t>(b); }
}  // namespace boost

namespace skl {

using Rational = boost::rational<std::int64_t>;

/// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

/// Accepts "a/b", integers and finite decimals ("2.5", "1e-3"). Decimals are
/// converted exactly, so "0.1" becomes 1/10 rather than the nearest double.
Rational parse_rational(std::string_view text);

/// Best rational approximation with denominator <= max_den; throws InputError
/// when none is within 1e-12 relative of x.
Rational rational_from_double(double x, std::int64_t max_den = 1'000'000);

inline double to_double(const Rational& r) {
  return boost::rational_cast<double>(r);
}

}  // namespace skl
