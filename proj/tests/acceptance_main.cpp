// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cmkit/kernels.hpp"
#include "cmkit/verifier.hpp"

using namespace cmkit;

namespace {

std::vector<double> log_grid(double lo, double hi, int pts) {
  std::vector<double> xs(pts);
  const double l0 = std::log(lo), dl = (std::log(hi) - std::log(lo)) / (pts - 1);
  for (int i = 0; i < pts; ++i) xs[i] = std::exp(l0 + i * dl);
  return xs;
}

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

struct Checker {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail << what;
    }
  }
};

bool criterion_1_polygamma_accuracy(Checker& c) {
  const double gamma_5digits = 0.57721;
  c.require(std::fabs(-digamma(1.0) - gamma_5digits) < 1e-5, "digamma(1) vs 0.57721");
  QuadratureSpec spec;
  c.require(std::fabs(digamma(1.0) - integral_representation_oracle(0, 1.0, spec)) <= 1e-12,
            "digamma(1) vs oracle beyond 1e-12");
  for (int n = 0; n <= 10 && c.ok; ++n) {
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    for (double x : log_grid(0.01, 100.0, 25)) {
      const double at_x = n == 0 ? digamma(x) : polygamma(n, x);
      const double at_x1 = n == 0 ? digamma(x + 1.0) : polygamma(n, x + 1.0);
      const double step = (n % 2 == 0 ? 1.0 : -1.0) * fact / std::pow(x, n + 1.0);
      const double resid = std::fabs(at_x1 - at_x - step);
      c.require(resid <= 1e-10 * std::max(1.0, std::fabs(at_x)),
                "recurrence residual at n=" + std::to_string(n) + " x=" + std::to_string(x));
    }
  }
  return c.ok;
}

bool criterion_2_oracle_crosscheck(Checker& c) {
  QuadratureSpec spec;
  for (int n = 0; n <= 6; ++n)
    for (double x : {0.5, 1.0, 2.0, 10.0}) {
      const double engine = n == 0 ? digamma(x) : polygamma(n, x);
      const double oracle = integral_representation_oracle(n, x, spec);
      c.require(rel_err(oracle, engine) <= 1e-8,
                "engine vs oracle at n=" + std::to_string(n) + " x=" + std::to_string(x));
    }
  return c.ok;
}

bool criterion_3_constants(Checker& c) {
  c.require(alpha(FamilyIndex{3, 2, 2, 1}) == Rational(1, 2), "alpha(3,2,2,1) != 1/2");
  c.require(beta(FamilyIndex{3, 2, 2, 1}) == Rational(2, 3), "beta(3,2,2,1) != 2/3");
  for (int n = 2; n <= 6; ++n)
    c.require(alpha(FamilyIndex{n + 1, n, n, n - 1}) == Rational(n - 1, n),
              "alpha(n+1,n,n,n-1) != (n-1)/n at n=" + std::to_string(n));
  return c.ok;
}

bool criterion_4_theorem_suite(Checker& c) {
  SuiteOptions opt;
  opt.max_index = 4;
  opt.c_list = {0.25, 0.5, 1.0, 2.0, 4.0};
  opt.grid = GridSpec{0.05, 50.0, 60, GridSpec::Spacing::log};
  opt.max_order = 12;
  opt.tol = 1e-9;
  for (const CMReport& r : theorem_suite(opt)) {
    std::ostringstream id;
    id << "clause " << r.clause << " (" << r.params.index.p << "," << r.params.index.m << ","
       << r.params.index.n << "," << r.params.index.q << ") c=" << r.params.c;
    c.require(r.verdict == Verdict::pass, id.str() + " verdict " + to_string(r.verdict));
  }
  return c.ok;
}

bool criterion_5_sharpness(Checker& c) {
  try {
    const SharpnessResult above =
        sharpness_probe({{3, 2, 2, 1}, 0.5, 0.5}, Direction::above, 0.02, 1.0, 1e6, 1e-9);
    c.require(above.witness_value < 0.0, "above-threshold witness value not violating");
  } catch (const std::exception& e) {
    c.require(false, std::string("above-threshold probe: ") + e.what());
  }
  try {
    const SharpnessResult below =
        sharpness_probe({{2, 1, 1, 0}, 2.0, 0.5}, Direction::below, 0.02, 1e-8, 1.0, 1e-9);
    c.require(below.witness_value < 0.0, "below-threshold witness value not violating");
  } catch (const std::exception& e) {
    c.require(false, std::string("below-threshold probe: ") + e.what());
  }
  return c.ok;
}

bool criterion_6_limits(Checker& c) {
  for (const FamilyIndex& idx : {FamilyIndex{3, 2, 2, 1}, FamilyIndex{2, 1, 1, 0}})
    for (double cc : {0.5, 2.0}) {
      const double a = alpha(idx).value();
      const double gap = std::fabs(ratio_infinity(idx, cc, 1e4) - a);
      c.require(gap <= 5e-4 * a, "ratio_infinity gap at x=1e4");
    }
  for (const FamilyIndex& idx : {FamilyIndex{2, 1, 1, 0}, FamilyIndex{3, 2, 1, 0}})
    for (double cc : {0.5, 2.0}) {
      const double limit = alpha(idx).value() / cc;
      const double gap = std::fabs(ratio_zero(idx, cc, 1e-6) - limit);
      c.require(gap <= 1e-3 * limit, "ratio_zero gap at x=1e-6");
    }
  return c.ok;
}

bool criterion_7_kernel_lemmas(Checker& c) {
  c.require(std::fabs(find_root(2, 1, 0.5).t0 - 3.7320508075688772935) <= 1e-10,
            "find_root(2,1,0.5) off 2+sqrt(3)");
  for (double a : {0.5, 2.0, 10.0})
    for (double cc : {0.25, 0.5, 2.0, 4.0}) {
      double prev_u = u(1.0 / 201.0, a, cc);
      double prev_k = assertion3_kernel(1.0 / 201.0, a, cc);
      for (int i = 2; i <= 200; ++i) {
        const double s = static_cast<double>(i) / 201.0;
        const double cur_u = u(s, a, cc);
        if (cc <= 1.0)
          c.require(cur_u <= prev_u * (1 + 1e-12) + 1e-15, "u not decreasing (c<=1)");
        else
          c.require(cur_u >= prev_u * (1 - 1e-12) - 1e-15, "u not increasing (c>=1)");
        const double cur_k = assertion3_kernel(s, a, cc);
        c.require(cur_k > prev_k, "assertion-3 kernel not increasing");
        prev_u = cur_u;
        prev_k = cur_k;
      }
    }
  for (int i = 0; i <= 100; ++i) c.require(f_aux(0.5 * i) <= 0.0, "f_aux positive");
  for (double x : log_grid(1e-6, 40.0, 50)) {
    c.require(v(1.0, x) == 0.0, "v(1, x) != 0");
    c.require(h(1.0, x) == 1.0, "h(1, s) != 1");
  }
  return c.ok;
}

bool criterion_8_representation(Checker& c) {
  QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  spec.abs_tol = 1e-14;
  for (double x : {1.0, 5.0}) {
    const FamilyParams p1{{3, 2, 2, 1}, 0.5, 0.5};
    c.require(rel_err(laplace_oracle_F(p1, x, spec), f_eval(p1, x)) <= 1e-6,
              "laplace oracle vs f_eval (3,2,2,1)");
    const FamilyParams p2{{2, 1, 1, 0}, 1.0, 0.5};
    c.require(rel_err(laplace_oracle_F(p2, x, spec), f_eval(p2, x)) <= 1e-6,
              "laplace oracle vs f_eval (2,1,1,0)");
  }
  QuadratureSpec gs;
  gs.rel_tol = 1e-11;
  gs.abs_tol = 1e-15;
  const FamilyIndex idx{3, 2, 2, 1};
  for (double t : log_grid(0.01, 50.0, 10)) {
    const double P = g_kernel(idx, 0.0, 0.5, t, gs);
    const double Q05 = P - g_kernel(idx, 1.0, 0.5, t, gs);
    const double scale05 = std::fabs(P) + 0.5 * std::fabs(Q05);
    c.require(g_kernel(idx, 0.5, 0.5, t, gs) >= -1e-10 * scale05, "g sign at c=0.5, s=alpha");

    const double P2 = g_kernel(idx, 0.0, 2.0, t, gs);
    const double Q2 = P2 - g_kernel(idx, 1.0, 2.0, t, gs);
    const double scale2 = std::fabs(P2) + 0.5 * std::fabs(Q2);
    c.require(g_kernel(idx, 0.5, 2.0, t, gs) <= 1e-10 * scale2, "g sign at c=2, s=alpha");

    for (double cc : {0.5, 2.0}) {
      const double Pb = g_kernel(idx, 0.0, cc, t, gs);
      const double Qb = Pb - g_kernel(idx, 1.0, cc, t, gs);
      const double scaleb = std::fabs(Pb) + (2.0 / 3.0) * std::fabs(Qb);
      c.require(g_kernel(idx, 2.0 / 3.0, cc, t, gs) <= 1e-10 * scaleb, "g sign at s=beta");
    }
  }
  return c.ok;
}

bool criterion_9_derivative_consistency(Checker& c) {
  for (const FamilyParams& params :
       {FamilyParams{{3, 2, 2, 1}, 0.5, 0.5}, FamilyParams{{2, 1, 1, 0}, 1.0, 0.5}}) {
    for (int k = 1; k <= 6; ++k)
      for (double x : log_grid(0.1, 10.0, 10)) {
        const double hstep = 1e-4 * x;
        const double fd = (f_derivative(params, k - 1, x + hstep) -
                           f_derivative(params, k - 1, x - hstep)) /
                          (2.0 * hstep);
        c.require(rel_err(fd, f_derivative(params, k, x)) <= 1e-5,
                  "finite difference mismatch at k=" + std::to_string(k));
      }
  }
  return c.ok;
}

bool criterion_10_beta_identities(Checker& c) {
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  spec.abs_tol = 1e-16;
  for (int ix = 1; ix <= 6; ++ix)
    for (int iy = 1; iy <= 6; ++iy)
      c.require(std::fabs(beta_integral_quadrature(ix, iy, spec) - beta_exact(ix, iy).value()) <=
                    1e-10,
                "beta identity residual at (" + std::to_string(ix) + "," + std::to_string(iy) + ")");
  for (const FamilyIndex& idx : enumerate_indices(6))
    c.require(std::fabs(zero_integral_residual(idx, spec)) <= 1e-10,
              "zero-integral residual at p=" + std::to_string(idx.p));
  return c.ok;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(Checker&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {"1 polygamma accuracy (gamma digits, oracle, recurrence)", criterion_1_polygamma_accuracy},
      {"2 engine vs integral oracle <= 1e-8 (n <= 6)", criterion_2_oracle_crosscheck},
      {"3 exact rational thresholds", criterion_3_constants},
      {"4 theorem suite p <= 4, c in {0.25,0.5,1,2,4}, zero failures", criterion_4_theorem_suite},
      {"5 sharpness witnesses off both thresholds", criterion_5_sharpness},
      {"6 ratio limits at infinity and zero", criterion_6_limits},
      {"7 kernel lemmas (root, u, f, v, h, assertion-3)", criterion_7_kernel_lemmas},
      {"8 Laplace representation and g-sign consistency", criterion_8_representation},
      {"9 derivative finite-difference consistency", criterion_9_derivative_consistency},
      {"10 beta and zero-integral identities", criterion_10_beta_identities},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    Checker c;
    bool ok = false;
    std::string detail;
    try {
      ok = cr.fn(c);
      detail = c.detail.str();
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] criterion %s%s%s\n", ok ? "PASS" : "FAIL", cr.name,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
