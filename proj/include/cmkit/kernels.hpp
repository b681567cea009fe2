#pragma once

#include <stdexcept>

#include "cmkit/f_family.hpp"
#include "cmkit/quadrature.hpp"
#include "cmkit/rational.hpp"

namespace cmkit {

struct bracket_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// h_c(s) = (1 - e^{-cs}) / (1 - e^{-s}), extended continuously by h_c(0) = c.
double h(double c, double s);

// v_c(x) = 1/(e^x - 1) - c/(e^{cx} - 1), extended by v_c(0) = (c-1)/2.
double v(double c, double x);

// z(x, c) = c^2 e^{cx} / (e^{cx} - 1)^2 = c^2 / (4 sinh^2(cx/2)).
double z(double x, double c);

// f(t) = (2 - t) e^t - (2 + t); zero at t = 0 and nonpositive for t >= 0.
// Saturates to the lowest finite double once e^t overflows.
double f_aux(double t);

// u(s; a, c) = h_c(a(1-s)) h_c(a(1+s)); monotone in s on (0,1), decreasing
// for c <= 1 and increasing for c >= 1.
double u(double s, double a, double c);

// a(t; m, n, c) = t^{m-n} + t^n - c (1 + t^m) for m > n >= 1, 0 < c < 1.
double a_poly(double t, int mm, int nn, double cc);

// Unique root of a_poly on [1, inf) with its certificate, plus the
// preimage s0 of t0 under t = (1+s)/(1-s).
struct KernelRootResult {
  double t0{0.0};
  double bracket_lo{0.0};
  double bracket_hi{0.0};
  double residual{0.0};
  double s0{0.0};
};

KernelRootResult find_root(int mm, int nn, double cc);

// r_{s,t}(c) = (1 - e^{-cs})(1 - e^{-c(t-s)}) / (1 - e^{-ct}); increasing in c.
double r(double s, double t, double c);

// Convolution kernel for q >= 1 indices:
//   t^{m+n-1} int_0^1 [(1-o)^{m-1} o^{n-1} - s_thresh (1-o)^{p-1} o^{q-1}]
//             h_c(t(1-o)) h_c(t o) do
double g_kernel(const FamilyIndex& index, double s_thresh, double c, double t,
                const QuadratureSpec& spec);

// Rebuilds F(x; s; c) from its Laplace representation (outer t-integral of
// e^{-xt}/c^2 times the convolution kernel); requires c > 0.
double laplace_oracle_F(const FamilyParams& params, double x, const QuadratureSpec& spec);

// a^{-2} (1-s^2)^{-1} u(s; a, c); increasing in s on (0,1) for every c > 0.
double assertion3_kernel(double s, double a, double c);

// ln h_c(s) + ln h_c(t-s) - ln h_c(t) - ln c; nonnegative for c <= 1 and
// nonpositive for c >= 1, with limit 0 as t -> s+.
double log_superadditivity_gap(double c, double s, double t);

// int_0^1 o^{ix-1} (1-o)^{iy-1} do by quadrature, and its exact value
// (ix-1)!(iy-1)!/(ix+iy-1)!.
double beta_integral_quadrature(int ix, int iy, const QuadratureSpec& spec);
Rational beta_exact(int ix, int iy);

// Residual of the identity that makes the kernel integrate to zero at the
// alpha threshold: for q >= 1 the signed combination, for q = 0 the plain
// beta integral minus alpha.
double zero_integral_residual(const FamilyIndex& index, const QuadratureSpec& spec);

}  // namespace cmkit
