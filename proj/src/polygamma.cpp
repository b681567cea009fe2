#include "cmkit/polygamma.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cmkit/bernoulli.hpp"

namespace cmkit {
namespace {

void check_domain(int n, double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::domain_error("polygamma: argument must be finite and positive, got " +
                            std::to_string(x));
  if (n > EngineConfig::kMaxOrder)
    throw std::out_of_range("polygamma: order " + std::to_string(n) + " exceeds maximum " +
                            std::to_string(EngineConfig::kMaxOrder));
}

// psi(x) for x >= shift_threshold: ln x - 1/(2x) - sum B_2k / (2k x^2k).
double digamma_asymptotic(double x, int terms) {
  double sum = std::log(x) - 0.5 / x;
  const double x2 = x * x;
  double p = 1.0;
  for (int k = 1; k <= terms; ++k) {
    p /= x2;
    const double term = bernoulli_2k(k) / (2 * k) * p;
    sum -= term;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
  }
  return sum;
}

// |psi^(n)(x)| for x >= shift_threshold + n:
//   (n-1)!/x^n * [1 + n/(2x) + sum B_2k g_k],
//   g_1 = n(n+1)/(2x^2),  g_{k+1} = g_k (2k+n)(2k+n+1) / ((2k+1)(2k+2) x^2).
double polygamma_asymptotic_abs(int n, double x, int terms) {
  double base;
  if (n * std::log(x) < 650.0) {
    base = std::tgamma(static_cast<double>(n)) / std::pow(x, static_cast<double>(n));
  } else {
    base = std::exp(std::lgamma(static_cast<double>(n)) - n * std::log(x));
  }
  const double x2 = x * x;
  double sum = 1.0 + n / (2.0 * x);
  double g = n * (n + 1.0) / (2.0 * x2);
  for (int k = 1; k <= terms; ++k) {
    const double term = bernoulli_2k(k) * g;
    sum += term;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum)) break;
    g *= (2.0 * k + n) * (2.0 * k + n + 1.0) / ((2.0 * k + 1.0) * (2.0 * k + 2.0) * x2);
  }
  return base * sum;
}

}  // namespace

double digamma(double x, const EngineConfig& cfg) {
  cfg.validate();
  check_domain(0, x);
  double shift = 0.0;
  while (x < cfg.shift_threshold) {
    shift += 1.0 / x;
    x += 1.0;
  }
  return digamma_asymptotic(x, cfg.asymptotic_terms) - shift;
}

double polygamma(int n, double x, const EngineConfig& cfg) {
  cfg.validate();
  if (n < 1) throw std::invalid_argument("polygamma: order must be >= 1");
  check_domain(n, x);
  const double target = cfg.shift_threshold + n;
  // Recurrence terms all carry the sign (-1)^n, so the shifted sum
  // accumulates without cancellation.
  double fact_n = std::tgamma(n + 1.0);
  double shift = 0.0;
  while (x < target) {
    shift += fact_n / std::pow(x, n + 1.0);
    x += 1.0;
  }
  const double mag = polygamma_asymptotic_abs(n, x, cfg.asymptotic_terms) + shift;
  return (n % 2 == 1) ? mag : -mag;
}

double polygamma_asymptotic_leading(int n, double x) {
  if (n < 1) throw std::invalid_argument("polygamma_asymptotic_leading: order must be >= 1");
  check_domain(n, x);
  const double lead = std::tgamma(static_cast<double>(n)) / std::pow(x, static_cast<double>(n));
  const double next = std::tgamma(n + 1.0) / (2.0 * std::pow(x, n + 1.0));
  const double out = lead + next;
  if (!std::isfinite(out))
    throw std::overflow_error("polygamma_asymptotic_leading: value overflows double at n=" +
                              std::to_string(n) + ", x=" + std::to_string(x));
  return out;
}

double integral_representation_oracle(int n, double x, const QuadratureSpec& spec,
                                      const EngineConfig& cfg) {
  cfg.validate();
  spec.validate();
  if (n < 0) throw std::invalid_argument("integral_representation_oracle: order must be >= 0");
  check_domain(n, x);

  // Integrand of the representation; stable down to t -> 0 via expm1.
  //   n = 0: (e^{-t} - e^{-xt}) / (1 - e^{-t})   -> x - 1 at t -> 0
  //   n >= 1: e^{-xt} t^n / (1 - e^{-t})         -> t^{n-1} at t -> 0
  auto integrand = [n, x](double t) {
    const double den = -std::expm1(-t);
    if (n == 0) return (std::expm1(-t) - std::expm1(-x * t)) / den;
    return std::exp(-x * t) * std::pow(t, static_cast<double>(n)) / den;
  };

  // Truncation point for the t-integral: extend T until the analytic tail
  // bound drops below abs_tol. Tail of |integrand| is at most
  // 2 e^{-min(x,1) T} T^n / min(x,1) once T >= 2(n+1)/min(x,1).
  const double decay = std::min(x, 1.0);
  double T = std::max({spec.outer_truncation, 2.0 * (n + 1) / decay, 4.0});
  auto tail_bound = [&](double t) {
    return 2.0 * std::exp(-decay * t + n * std::log(t)) / decay;
  };
  while (tail_bound(T) > 0.25 * spec.abs_tol) {
    T *= 1.5;
    if (T > 1e7)
      throw quadrature_error("integral_representation_oracle: truncation bound unreachable at x=" +
                             std::to_string(x));
  }

  // Split at t = 1: the left panel carries the removable singularity, the
  // right one the exponential decay; adaptive panels resolve both.
  const double head = integrate(integrand, 0.0, 1.0, spec);
  const double tail = integrate(integrand, 1.0, T, spec);

  const double value = head + tail;
  if (n == 0) return value - cfg.gamma_constant;
  // The integral equals (-1)^{n+1} psi^(n)(x); flip for even n.
  return (n % 2 == 1) ? value : -value;
}

}  // namespace cmkit
