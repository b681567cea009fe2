#pragma once

#include <stdexcept>

#include "cmkit/quadrature.hpp"

namespace cmkit {

// Evaluation strategy for psi and psi^(n): raise the argument by the
// recurrence psi^(n)(x+1) = psi^(n)(x) + (-1)^n n!/x^{n+1} until
// x >= shift_threshold + n, then sum the Bernoulli asymptotic series
// truncated at asymptotic_terms terms (with early exit at roundoff).
struct EngineConfig {
  double shift_threshold = 14.0;
  int asymptotic_terms = 16;
  double gamma_constant = 0.57721566490153286061;

  static constexpr int kMaxOrder = 64;

  void validate() const {
    if (!(shift_threshold >= 10.0))
      throw std::invalid_argument("EngineConfig: shift_threshold must be >= 10");
    if (asymptotic_terms < 4 || asymptotic_terms > 20)
      throw std::invalid_argument("EngineConfig: asymptotic_terms must be in [4, 20]");
    if (!(gamma_constant > 0.57721 - 1e-5 && gamma_constant < 0.57721 + 1e-5))
      throw std::invalid_argument("EngineConfig: gamma_constant does not match 0.57721");
  }
};

// psi(x) for x > 0.
double digamma(double x, const EngineConfig& cfg = {});

// psi^(n)(x) for n >= 1, x > 0. Sign satisfies (-1)^{n+1} psi^(n)(x) > 0.
double polygamma(int n, double x, const EngineConfig& cfg = {});

// Two leading asymptotic terms (n-1)!/x^n + n!/(2 x^{n+1}); throws
// std::overflow_error when they exceed the double range.
double polygamma_asymptotic_leading(int n, double x);

// psi^(n)(x) (n >= 1) or psi(x) (n = 0) by direct quadrature of the
// integral representations; independent of the series/asymptotic engine.
double integral_representation_oracle(int n, double x, const QuadratureSpec& spec,
                                      const EngineConfig& cfg = {});

}  // namespace cmkit
