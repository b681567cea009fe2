#include "cmkit/f_family.hpp"

#include <stdexcept>
#include <string>

namespace cmkit {
namespace {

std::string index_str(const FamilyIndex& i) {
  return "(" + std::to_string(i.p) + "," + std::to_string(i.m) + "," + std::to_string(i.n) + "," +
         std::to_string(i.q) + ")";
}

// psi^(j) with psi^(0) = psi; callers guarantee j >= 0.
double psi_j(int j, double x, const EngineConfig& cfg) {
  return j == 0 ? digamma(x, cfg) : polygamma(j, x, cfg);
}

// Binomial coefficients stay well inside double for k <= 64.
double binom(int k, int i) {
  double b = 1.0;
  for (int j = 1; j <= i; ++j) b = b * (k - j + 1) / j;
  return b;
}

}  // namespace

void FamilyIndex::validate() const {
  if (!(p > m && m >= n && n > q && q >= 0))
    throw std::invalid_argument("invalid family index " + index_str(*this) +
                                ": p>m>=n>q>=0 violated");
  if (m + n != p + q)
    throw std::invalid_argument("invalid family index " + index_str(*this) +
                                ": m+n=p+q violated");
}

void FamilyParams::validate() const {
  index.validate();
  if (!(c >= 0.0) || !std::isfinite(c))
    throw std::invalid_argument("FamilyParams: c must be finite and >= 0");
  if (!std::isfinite(s)) throw std::invalid_argument("FamilyParams: s must be finite");
}

Rational alpha(const FamilyIndex& index) {
  index.validate();
  const std::int64_t num = factorial_exact(index.m - 1) * factorial_exact(index.n - 1);
  if (index.q == 0) return Rational(num, factorial_exact(index.p - 1));
  return Rational(num, factorial_exact(index.p - 1) * factorial_exact(index.q - 1));
}

Rational beta(const FamilyIndex& index) {
  index.validate();
  if (index.q == 0)
    throw std::invalid_argument("beta: undefined for q = 0 index " + index_str(index));
  return Rational(factorial_exact(index.m) * factorial_exact(index.n),
                  factorial_exact(index.p) * factorial_exact(index.q));
}

double delta_psi(int j, double x, double c, const EngineConfig& cfg) {
  if (j < -1) throw std::invalid_argument("delta_psi: order must be >= -1");
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("delta_psi: x must be finite and positive");
  if (j == -1) return -1.0;  // (-(x+c) + x)/c and the c = 0 convention alike
  if (c == 0.0) return polygamma(j + 1, x, cfg);

  // Direct differencing loses ~ eps/c relative accuracy once c is small
  // against x. Below the crossover, average the Taylor series of
  // psi^(j+1) around the midpoint instead:
  //   (1/c) int_x^{x+c} psi^(j+1) = sum_{i even} psi^(j+1+i)(x+c/2) (c/2)^i / (i+1)!
  const double rho = c * (j + 9) / (2.0 * x);
  if (rho <= 0.05 && j + 9 <= EngineConfig::kMaxOrder) {
    const double mid = x + 0.5 * c;
    const double h = 0.5 * c;
    double acc = psi_j(j + 1, mid, cfg);
    double pw = 1.0;
    double fact = 1.0;  // (i+1)! running
    for (int i = 2; i <= 8; i += 2) {
      pw *= h * h;
      fact *= i * (i + 1);
      const double term = psi_j(j + 1 + i, mid, cfg) * pw / fact;
      acc += term;
      if (std::fabs(term) <= 1e-17 * std::fabs(acc)) break;
    }
    return acc;
  }
  return (psi_j(j, x + c, cfg) - psi_j(j, x, cfg)) / c;
}

double f_eval(const FamilyParams& params, double x, const EngineConfig& cfg) {
  return f_derivative_parts(params, 0, x, cfg).value();
}

DerivativeParts f_derivative_parts(const FamilyParams& params, int k, double x,
                                   const EngineConfig& cfg) {
  params.validate();
  if (k < 0) throw std::invalid_argument("f_derivative: k must be >= 0");
  const auto& [p, m, n, q] = params.index;
  // Highest polygamma order touched: p-1+k as a difference order, +1 when
  // c = 0 turns differences into derivatives.
  const int top = p - 1 + k + (params.c == 0.0 ? 1 : 0);
  if (top > EngineConfig::kMaxOrder)
    throw std::out_of_range("f_derivative: required order " + std::to_string(top) +
                            " exceeds engine maximum");

  const double sign_mn = (m + n) % 2 == 0 ? 1.0 : -1.0;
  const double sign_pq = (p + q) % 2 == 0 ? 1.0 : -1.0;

  // d/dx delta_psi(j) = delta_psi(j+1) for j >= 0; the j = -1 factor is the
  // constant -1 with derivative zero.
  double first = 0.0;
  for (int i = 0; i <= k; ++i)
    first += binom(k, i) * delta_psi(m - 1 + i, x, params.c, cfg) *
             delta_psi(n - 1 + k - i, x, params.c, cfg);
  first *= sign_mn;

  double second;
  if (q == 0) {
    second = params.s * sign_pq * delta_psi(p - 1 + k, x, params.c, cfg) * (-1.0);
  } else {
    second = 0.0;
    for (int i = 0; i <= k; ++i)
      second += binom(k, i) * delta_psi(p - 1 + i, x, params.c, cfg) *
                delta_psi(q - 1 + k - i, x, params.c, cfg);
    second *= params.s * sign_pq;
  }
  return DerivativeParts{first, second};
}

double f_derivative(const FamilyParams& params, int k, double x, const EngineConfig& cfg) {
  return f_derivative_parts(params, k, x, cfg).value();
}

namespace {

double term_ratio(const FamilyIndex& index, double c, double x, const EngineConfig& cfg) {
  index.validate();
  if (!(c > 0.0)) throw std::invalid_argument("ratio: c must be positive");
  const auto& [p, m, n, q] = index;
  const double sign_mn = (m + n) % 2 == 0 ? 1.0 : -1.0;
  const double sign_pq = (p + q) % 2 == 0 ? 1.0 : -1.0;
  const double num =
      sign_mn * delta_psi(m - 1, x, c, cfg) * delta_psi(n - 1, x, c, cfg);
  const double den =
      sign_pq * delta_psi(p - 1, x, c, cfg) * delta_psi(q - 1, x, c, cfg);
  if (std::fabs(den) < 1e-300)
    throw std::domain_error("ratio: denominator magnitude below 1e-300 at x=" + std::to_string(x));
  return num / den;
}

}  // namespace

double ratio_infinity(const FamilyIndex& index, double c, double x, const EngineConfig& cfg) {
  return term_ratio(index, c, x, cfg);
}

double ratio_zero(const FamilyIndex& index, double c, double x, const EngineConfig& cfg) {
  if (index.q != 0) throw std::invalid_argument("ratio_zero: requires a q = 0 index");
  return term_ratio(index, c, x, cfg);
}

std::vector<FamilyIndex> enumerate_indices(int max_p) {
  std::vector<FamilyIndex> out;
  for (int p = 2; p <= max_p; ++p)
    for (int m = 1; m < p; ++m)
      for (int n = 1; n <= m; ++n) {
        const int q = m + n - p;
        if (q >= 0 && n > q) out.push_back(FamilyIndex{p, m, n, q});
      }
  return out;
}

}  // namespace cmkit
