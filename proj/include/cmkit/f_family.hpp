#pragma once

#include <cmath>
#include <vector>

#include "cmkit/polygamma.hpp"
#include "cmkit/rational.hpp"

namespace cmkit {

// Integer quadruple indexing the function family. Valid when
// p > m >= n > q >= 0 and m + n = p + q.
struct FamilyIndex {
  int p{0}, m{0}, n{0}, q{0};

  void validate() const;
  static FamilyIndex checked(int p, int m, int n, int q) {
    FamilyIndex idx{p, m, n, q};
    idx.validate();
    return idx;
  }
};

// Index plus the multiplier s and forward-difference step c >= 0; c = 0
// selects the derivative family (difference quotients become derivatives).
struct FamilyParams {
  FamilyIndex index;
  double s{0.0};
  double c{0.0};

  void validate() const;
};

// alpha = (m-1)!(n-1)! / ((p-1)!(q-1)!) for q >= 1,
//         (m-1)!(n-1)! / (p-1)!         for q = 0.
Rational alpha(const FamilyIndex& index);

// beta = m! n! / (p! q!); requires q >= 1. Always alpha < beta < 1.
Rational beta(const FamilyIndex& index);

// Forward difference of psi^(j) with the conventions psi^(0) = psi and
// psi^(-1)(t) = -t:
//   c > 0: (psi^(j)(x+c) - psi^(j)(x)) / c  (j = -1 gives the constant -1)
//   c = 0: psi^(j+1)(x)                     (j = -1 gives the constant -1)
double delta_psi(int j, double x, double c, const EngineConfig& cfg = {});

// F(x; s; c) = (-1)^{m+n} D^{m-1} D^{n-1} - s (-1)^{p+q} D^{p-1} D^{q-1},
// where D^j is delta_psi(j, x, c).
double f_eval(const FamilyParams& params, double x, const EngineConfig& cfg = {});

// k-th x-derivative split into its two bilinear halves, F^(k) = first - second.
// The scale |first| + |second| is the natural magnitude for sign tolerances.
struct DerivativeParts {
  double first{0.0};
  double second{0.0};
  double value() const { return first - second; }
  double scale() const { return std::fabs(first) + std::fabs(second); }
};

DerivativeParts f_derivative_parts(const FamilyParams& params, int k, double x,
                                   const EngineConfig& cfg = {});

double f_derivative(const FamilyParams& params, int k, double x, const EngineConfig& cfg = {});

// Ratio of the two bilinear terms; tends to alpha as x -> +infinity.
double ratio_infinity(const FamilyIndex& index, double c, double x, const EngineConfig& cfg = {});

// Same ratio for q = 0 indices; tends to alpha / c as x -> 0+.
double ratio_zero(const FamilyIndex& index, double c, double x, const EngineConfig& cfg = {});

// All valid indices with p <= max_p, ordered by (p, m, n) ascending.
std::vector<FamilyIndex> enumerate_indices(int max_p);

}  // namespace cmkit
