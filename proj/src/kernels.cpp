#include "cmkit/kernels.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace cmkit {
namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw std::domain_error(msg);
}

double ipow(double t, int k) {
  double acc = 1.0;
  for (double base = t; k > 0; k >>= 1, base *= base)
    if (k & 1) acc *= base;
  return acc;
}

}  // namespace

double h(double c, double s) {
  require(c > 0.0, "h: c must be positive");
  require(s >= 0.0, "h: s must be nonnegative");
  if (s == 0.0) return c;
  return std::expm1(-c * s) / std::expm1(-s);
}

double v(double c, double x) {
  require(c > 0.0, "v: c must be positive");
  require(x >= 0.0, "v: x must be nonnegative");
  // 1/(e^x - 1) = 1/x - 1/2 + x/12 - x^3/720 + x^5/30240 - ..., so the two
  // 1/x poles cancel exactly; switch to the series before the subtraction
  // loses digits.
  if (c * x < 1e-3 && x < 1e-3) {
    const double x2 = x * x;
    const double c2 = c * c;
    return (c - 1.0) / 2.0 + x * (1.0 - c2) / 12.0 - x * x2 * (1.0 - c2 * c2) / 720.0 +
           x2 * x2 * x * (1.0 - c2 * c2 * c2) / 30240.0;
  }
  return 1.0 / std::expm1(x) - c / std::expm1(c * x);
}

double z(double x, double c) {
  require(c > 0.0, "z: c must be positive");
  require(x > 0.0, "z: x must be positive");
  const double sh = std::sinh(0.5 * c * x);
  if (std::isinf(sh)) return 0.0;
  return c * c / (4.0 * sh * sh);
}

double f_aux(double t) {
  require(t >= 0.0, "f_aux: t must be nonnegative");
  if (t == 0.0) return 0.0;
  const double val = (2.0 - t) * std::exp(t) - (2.0 + t);
  if (std::isinf(val)) return std::numeric_limits<double>::lowest();
  return val;
}

double u(double s, double a, double c) {
  require(s >= 0.0 && s <= 1.0, "u: s must lie in [0, 1]");
  require(a > 0.0, "u: a must be positive");
  return h(c, a * (1.0 - s)) * h(c, a * (1.0 + s));
}

double a_poly(double t, int mm, int nn, double cc) {
  require(mm > nn && nn >= 1, "a_poly: requires m > n >= 1");
  require(cc > 0.0 && cc < 1.0, "a_poly: requires 0 < c < 1");
  require(t >= 1.0, "a_poly: requires t >= 1");
  return ipow(t, mm - nn) + ipow(t, nn) - cc * (1.0 + ipow(t, mm));
}

KernelRootResult find_root(int mm, int nn, double cc) {
  // a(1) = 2 - 2c > 0 and the leading term -c t^m eventually dominates, so
  // geometric doubling must find a sign change.
  double lo = 1.0;
  double flo = a_poly(lo, mm, nn, cc);
  double hi = 2.0;
  double fhi = a_poly(hi, mm, nn, cc);
  int guard = 0;
  while (fhi > 0.0) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = a_poly(hi, mm, nn, cc);
    if (++guard > 600) throw bracket_error("find_root: no sign change found (engine bug)");
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = a_poly(mid, mm, nn, cc);
    if (fmid > 0.0) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  (void)flo;
  KernelRootResult res;
  res.bracket_lo = lo;
  res.bracket_hi = hi;
  res.t0 = 0.5 * (lo + hi);
  res.residual = a_poly(res.t0, mm, nn, cc);
  res.s0 = (res.t0 - 1.0) / (res.t0 + 1.0);
  return res;
}

double r(double s, double t, double c) {
  require(t > s && s > 0.0, "r: requires t > s > 0");
  require(c > 0.0, "r: c must be positive");
  return std::expm1(-c * s) * std::expm1(-c * (t - s)) / (-std::expm1(-c * t));
}

namespace {

// Inner sigma-integral of the convolution kernel at threshold multiplier
// s_thresh; covers both index shapes. For q = 0 the second product
// collapses to the analytic term s c t^{p-1} h_c(t).
double kernel_inner(const FamilyIndex& idx, double s_thresh, double c, double t,
                    const QuadratureSpec& spec) {
  const auto& [p, m, n, q] = idx;
  const double tp = std::pow(t, m + n - 1);
  if (q == 0) {
    const double conv = integrate(
        [&](double o) {
          return std::pow(1.0 - o, m - 1) * std::pow(o, n - 1) * h(c, t * (1.0 - o)) *
                 h(c, t * o);
        },
        0.0, 1.0, spec);
    return tp * conv - s_thresh * c * std::pow(t, p - 1) * h(c, t);
  }
  return tp * integrate(
                  [&](double o) {
                    const double w = std::pow(1.0 - o, m - 1) * std::pow(o, n - 1) -
                                     s_thresh * std::pow(1.0 - o, p - 1) * std::pow(o, q - 1);
                    return w * h(c, t * (1.0 - o)) * h(c, t * o);
                  },
                  0.0, 1.0, spec);
}

}  // namespace

double g_kernel(const FamilyIndex& index, double s_thresh, double c, double t,
                const QuadratureSpec& spec) {
  index.validate();
  spec.validate();
  require(index.q >= 1, "g_kernel: requires a q >= 1 index");
  require(c > 0.0, "g_kernel: c must be positive");
  require(t > 0.0, "g_kernel: t must be positive");
  return kernel_inner(index, s_thresh, c, t, spec);
}

double laplace_oracle_F(const FamilyParams& params, double x, const QuadratureSpec& spec) {
  params.validate();
  spec.validate();
  require(params.c > 0.0, "laplace_oracle_F: requires c > 0");
  require(x > 0.0, "laplace_oracle_F: x must be positive");
  const auto& [p, m, n, q] = params.index;
  const double c = params.c;

  // |inner(t)| <= t^{m+n-1} max(1,c)^2 (1 + |s| max(1,c)), and the
  // exponential factor makes the tail beyond T at most twice the value of
  // the integrand at T divided by x once xT >= 2(m+n).
  const double maxh = std::max(1.0, c);
  const double bound_coeff = maxh * maxh * (1.0 + std::fabs(params.s) * maxh) * 2.0 / x;
  double T = std::max({spec.outer_truncation, 2.0 * (m + n) / x, 4.0});
  auto tail_bound = [&](double t) {
    return bound_coeff * std::exp(-x * t + (m + n - 1) * std::log(t));
  };
  int guard = 0;
  while (tail_bound(T) > 0.25 * spec.abs_tol) {
    T *= 1.5;
    if (++guard > 200)
      throw quadrature_error("laplace_oracle_F: truncation bound unreachable at x=" +
                             std::to_string(x));
  }

  // The outer adaptivity sees inner quadrature error as integrand noise.
  // The sigma-integrand is bounded by maxh^2 (1 + |s|), so holding the inner
  // integral to 1e-13 of that (absolute) keeps the injected outer error
  // under 1e-13 times the exponential-weighted parts integral
  // maxh^2 (1 + |s| maxh) (m+n-1)!/x^{m+n}; the outer absolute tolerance
  // stays a factor 20 above it. Near t = 0 the kernel cancels to O(t) of its
  // parts, which rules out a purely relative inner target.
  const double inner_coeff = maxh * maxh * (1.0 + std::fabs(params.s));
  QuadratureSpec inner_spec = spec;
  inner_spec.rel_tol = 1e-12;
  inner_spec.abs_tol = std::max(1e-18, 1e-13 * inner_coeff);
  const double parts_integral =
      maxh * maxh * (1.0 + std::fabs(params.s) * maxh) * std::tgamma(m + n) / std::pow(x, m + n);
  QuadratureSpec outer_spec = spec;
  outer_spec.abs_tol = std::max(spec.abs_tol, 20.0 * 1e-13 * parts_integral);

  const double outer = integrate(
      [&](double t) { return std::exp(-x * t) * kernel_inner(params.index, params.s, c, t, inner_spec); },
      0.0, T, outer_spec);
  return outer / (c * c);
}

double assertion3_kernel(double s, double a, double c) {
  require(s > 0.0 && s < 1.0, "assertion3_kernel: s must lie in (0, 1)");
  return u(s, a, c) / (a * a * (1.0 - s * s));
}

double log_superadditivity_gap(double c, double s, double t) {
  require(t > s && s > 0.0, "log_superadditivity_gap: requires t > s > 0");
  require(c > 0.0, "log_superadditivity_gap: c must be positive");
  return std::log(h(c, s)) + std::log(h(c, t - s)) - std::log(h(c, t)) - std::log(c);
}

double beta_integral_quadrature(int ix, int iy, const QuadratureSpec& spec) {
  require(ix >= 1 && iy >= 1, "beta_integral_quadrature: integer arguments must be >= 1");
  return integrate(
      [&](double o) { return std::pow(o, ix - 1) * std::pow(1.0 - o, iy - 1); }, 0.0, 1.0, spec);
}

Rational beta_exact(int ix, int iy) {
  require(ix >= 1 && iy >= 1, "beta_exact: integer arguments must be >= 1");
  return Rational(factorial_exact(ix - 1) * factorial_exact(iy - 1),
                  factorial_exact(ix + iy - 1));
}

double zero_integral_residual(const FamilyIndex& index, const QuadratureSpec& spec) {
  index.validate();
  const auto& [p, m, n, q] = index;
  const double a = alpha(index).value();
  if (q == 0) return beta_integral_quadrature(m, n, spec) - a;
  return integrate(
      [&](double o) {
        return std::pow(1.0 - o, m - 1) * std::pow(o, n - 1) -
               a * std::pow(1.0 - o, p - 1) * std::pow(o, q - 1);
      },
      0.0, 1.0, spec);
}

}  // namespace cmkit
