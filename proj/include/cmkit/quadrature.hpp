#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cmkit {

struct quadrature_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Tolerances and budget for the integral oracles. outer_truncation is the
// starting upper limit T for semi-infinite t-integrals; callers extend it
// until the analytic tail bound drops below abs_tol.
struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  long max_nodes = 4000000;
  double outer_truncation = 60.0;

  void validate() const {
    if (!(rel_tol >= 1e-14)) throw std::invalid_argument("QuadratureSpec: rel_tol must be >= 1e-14");
    if (!(abs_tol > 0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be positive");
    if (!(max_nodes > 0)) throw std::invalid_argument("QuadratureSpec: max_nodes must be positive");
    if (!(outer_truncation > 0))
      throw std::invalid_argument("QuadratureSpec: outer_truncation must be positive");
  }
};

namespace detail {

inline constexpr int kGaussOrder = 15;

struct GaussRule {
  std::array<double, kGaussOrder> node;    // on [-1, 1]
  std::array<double, kGaussOrder> weight;
};

// Legendre nodes by Newton iteration on P_15; converges to full double
// precision from the Chebyshev initial guess.
inline const GaussRule& gauss_rule() {
  static const GaussRule rule = [] {
    GaussRule r{};
    const int n = kGaussOrder;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-15) {
          p0 = 1.0;
          p1 = x;
          for (int k = 2; k <= n; ++k) {
            const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
          }
          dp = n * (x * p1 - p0) / (x * x - 1.0);
          break;
        }
      }
      r.node[i] = x;
      r.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

template <class F>
double gauss_panel(F&& f, double lo, double hi, long& nodes) {
  const GaussRule& r = gauss_rule();
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (int i = 0; i < kGaussOrder; ++i) acc += r.weight[i] * f(mid + half * r.node[i]);
  nodes += kGaussOrder;
  return acc * half;
}

template <class F>
double adapt(F&& f, double lo, double hi, double tol, double whole, long& nodes, long max_nodes,
             int depth) {
  if (nodes > max_nodes)
    throw quadrature_error("quadrature did not converge within the node budget");
  const double mid = 0.5 * (lo + hi);
  const double left = gauss_panel(f, lo, mid, nodes);
  const double right = gauss_panel(f, mid, hi, nodes);
  const double err = std::fabs(left + right - whole);
  if (err <= tol) return left + right;
  if (depth >= 60)
    throw quadrature_error("quadrature did not converge within the recursion depth limit");
  return adapt(f, lo, mid, 0.5 * tol, left, nodes, max_nodes, depth + 1) +
         adapt(f, mid, hi, 0.5 * tol, right, nodes, max_nodes, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Legendre on [lo, hi]. Terminates when the panel refinement
// estimate falls under max(abs_tol, rel_tol * |first pass|).
template <class F>
double integrate(F&& f, double lo, double hi, const QuadratureSpec& spec) {
  spec.validate();
  if (!(lo < hi)) {
    if (lo == hi) return 0.0;
    throw std::invalid_argument("integrate: lo must be <= hi");
  }
  long nodes = 0;
  const double first = detail::gauss_panel(f, lo, hi, nodes);
  const double tol = std::max(spec.abs_tol, spec.rel_tol * std::fabs(first));
  return detail::adapt(f, lo, hi, tol, first, nodes, spec.max_nodes, 0);
}

}  // namespace cmkit
