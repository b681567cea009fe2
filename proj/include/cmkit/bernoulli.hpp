#pragma once

#include <array>

namespace cmkit {
namespace detail {

// Exact rational arithmetic over __int128, reduced after every operation.
// The magnitudes appearing in the B_40 recurrence stay below ~2e25, far
// inside the __int128 range.
struct Rat128 {
  __int128 num;
  __int128 den;
};

constexpr __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr Rat128 reduce128(__int128 n, __int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const __int128 g = gcd128(n, d);
  return g == 0 ? Rat128{0, 1} : Rat128{n / g, d / g};
}

constexpr Rat128 add128(Rat128 a, Rat128 b) {
  return reduce128(a.num * b.den + b.num * a.den, a.den * b.den);
}

inline constexpr int kBernoulliMax = 40;

// Solves sum_{k=0}^{n-1} C(n+1,k) B_k = -(n+1) B_n for B_1..B_40.
constexpr std::array<double, kBernoulliMax + 1> make_bernoulli_table() {
  std::array<Rat128, kBernoulliMax + 1> b{};
  b[0] = Rat128{1, 1};
  for (int n = 1; n <= kBernoulliMax; ++n) {
    Rat128 acc{0, 1};
    __int128 binom = 1;  // C(n+1, k), starting at k = 0
    for (int k = 0; k < n; ++k) {
      acc = add128(acc, reduce128(b[k].num * binom, b[k].den));
      binom = binom * (n + 1 - k) / (k + 1);
    }
    b[n] = reduce128(-acc.num, acc.den * (n + 1));
  }
  std::array<double, kBernoulliMax + 1> out{};
  for (int n = 0; n <= kBernoulliMax; ++n)
    out[n] = static_cast<double>(b[n].num) / static_cast<double>(b[n].den);
  return out;
}

}  // namespace detail

// B_0 .. B_40 (odd entries beyond B_1 are zero).
inline constexpr std::array<double, detail::kBernoulliMax + 1> kBernoulli =
    detail::make_bernoulli_table();

// B_{2k}, valid for 1 <= k <= 20.
constexpr double bernoulli_2k(int k) { return kBernoulli[2 * k]; }

}  // namespace cmkit
