#include "skl/rational.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "skl/errors.hpp"

namespace skl {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("not a rational number: '" + std::string(whole) + "'");
  }
  return v;
}

std::int64_t pow10(int e, std::string_view whole) {
  std::int64_t v = 1;
  for (int i = 0; i < e; ++i) {
    if (v > std::numeric_limits<std::int64_t>::max() / 10) {
      throw InputError("rational out of range: '" + std::string(whole) + "'");
    }
    v *= 10;
  }
  return v;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  int exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string_view::npos) {
    exponent = static_cast<int>(parse_int(s.substr(epos + 1), whole));
    s = s.substr(0, epos);
  }
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  int frac_digits = 0;
  bool seen_dot = false;
  for (char c : s) {
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw InputError("not a rational number: '" + std::string(whole) + "'");
    }
  }
  if (digits.empty()) throw InputError("not a rational number: '" + std::string(whole) + "'");
  Rational r(parse_int(digits, whole));
  int shift = exponent - frac_digits;
  if (shift >= 0) {
    r *= pow10(shift, whole);
  } else {
    r /= pow10(-shift, whole);
  }
  return negative ? -r : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::int64_t num = parse_int(text.substr(0, slash), text);
    std::int64_t den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw InputError("zero denominator: '" + std::string(text) + "'");
    return Rational(num, den);
  }
  return parse_decimal(text, text);
}

Rational rational_from_double(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw InputError("cannot represent non-finite value as a rational");
  if (x == std::floor(x) && std::abs(x) < 9.0e15) {
    return Rational(static_cast<std::int64_t>(x));
  }
  // Continued-fraction convergents.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double rem = x;
  Rational best(static_cast<std::int64_t>(std::llround(x)));
  for (int iter = 0; iter < 64; ++iter) {
    double a = std::floor(rem);
    if (std::abs(a) > 9.0e15) break;
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t h2 = ai * h1 + h0;
    std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    best = Rational(h2, k2);
    h0 = h1; h1 = h2; k0 = k1; k1 = k2;
    double frac = rem - a;
    if (std::abs(to_double(best) - x) <= 1e-15 * std::max(1.0, std::abs(x)) || frac == 0.0) break;
    rem = 1.0 / frac;
  }
  if (std::abs(to_double(best) - x) > 1e-12 * std::max(1.0, std::abs(x))) {
    throw InputError("no rational with denominator <= " + std::to_string(max_den) +
                     " matches " + std::to_string(x));
  }
  return best;
}

}  // namespace skl
