#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cmkit {

// Exact rational over int64, reduced with positive denominator. Covers the
// factorial-ratio constants (factorials up to 20!).
struct Rational {
  std::int64_t num{0};
  std::int64_t den{1};

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    num = g ? n / g : 0;
    den = g ? d / g : 1;
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  std::string str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
  }
};

// n! as an exact int64; n <= 20.
inline std::int64_t factorial_exact(int n) {
  if (n < 0 || n > 20)
    throw std::invalid_argument("factorial_exact: n must be in [0, 20], got " + std::to_string(n));
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace cmkit
