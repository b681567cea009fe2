#include "cmkit/verifier.hpp"

#include <cmath>
#include <random>

#include "cmkit/kernels.hpp"
#include "doctest.h"

using namespace cmkit;

namespace {

GridSpec default_grid() { return GridSpec{0.05, 50.0, 60, GridSpec::Spacing::log}; }

bool reports_equal(const std::vector<CMReport>& a, const std::vector<CMReport>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].verdict != b[i].verdict || a[i].clause != b[i].clause) return false;
    if (a[i].worst.k != b[i].worst.k || a[i].worst.x != b[i].worst.x ||
        a[i].worst.value != b[i].worst.value || a[i].worst.scale != b[i].worst.scale)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("grid construction") {
  const GridSpec grid = default_grid();
  const auto xs = grid.make();
  REQUIRE(xs.size() == 60);
  CHECK(xs.front() == 0.05);
  CHECK(xs.back() == 50.0);
  for (size_t i = 1; i < xs.size(); ++i) CHECK(xs[i] > xs[i - 1]);

  GridSpec lin{1.0, 2.0, 5, GridSpec::Spacing::linear};
  const auto ls = lin.make();
  CHECK(ls[2] == doctest::Approx(1.5).epsilon(1e-15));

  CHECK_THROWS_AS((GridSpec{0.0, 1.0, 4, GridSpec::Spacing::log}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{2.0, 1.0, 4, GridSpec::Spacing::log}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GridSpec{1.0, 2.0, 1, GridSpec::Spacing::log}.validate()), std::invalid_argument);
}

TEST_CASE("check_cm passes the clause examples") {
  const GridSpec grid = default_grid();

  const CMReport r1 = check_cm({{3, 2, 2, 1}, 0.5, 0.5}, Sign::plus, grid, 12, 1e-9);
  CHECK(r1.verdict == Verdict::pass);
  CHECK(!r1.witness.has_value());
  CHECK(r1.worst.scale > 0.0);

  const CMReport r2 = check_cm({{3, 2, 2, 1}, 2.0 / 3.0, 3.0}, Sign::minus, grid, 12, 1e-9);
  CHECK(r2.verdict == Verdict::pass);

  const CMReport r3 = check_cm({{2, 1, 1, 0}, 0.5, 2.0}, Sign::plus, grid, 12, 1e-9);
  CHECK(r3.verdict == Verdict::pass);
}

TEST_CASE("check_cm fails above the threshold with a witness") {
  const CMReport r = check_cm({{3, 2, 2, 1}, 0.6, 0.5}, Sign::plus, default_grid(), 12, 1e-9);
  CHECK(r.verdict == Verdict::fail);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->value < 0.0);
  CHECK(r.witness->value == r.worst.value);
}

TEST_CASE("check_cm reports engine errors as inconclusive") {
  // c = 0 at order 63 needs polygamma order 66, beyond the engine cap.
  const CMReport r = check_cm({{3, 2, 2, 1}, 0.5, 0.0}, Sign::plus, default_grid(), 63, 1e-9);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK(!r.error.empty());
  CHECK(!r.witness.has_value());
}

TEST_CASE("theorem suite passes every clause up to p = 4") {
  SuiteOptions opt;
  opt.max_index = 4;
  opt.c_list = {0.25, 0.5, 1.0, 2.0, 4.0};
  opt.grid = default_grid();
  const auto reports = theorem_suite(opt);
  // 7 indices (4 with q = 0); two clauses each away from c = 1, and both
  // clause variants at the c = 1 boundary.
  CHECK(reports.size() == 81);
  for (const CMReport& r : reports) {
    INFO("clause ", r.clause, " index (", r.params.index.p, ",", r.params.index.m, ",",
         r.params.index.n, ",", r.params.index.q, ") c=", r.params.c);
    CHECK(r.verdict == Verdict::pass);
  }
}

TEST_CASE("theorem suite recovers the c -> 0 limit family") {
  SuiteOptions opt;
  opt.max_index = 4;
  opt.c_list = {1e-6};
  opt.grid = default_grid();
  const auto reports = theorem_suite(opt);
  CHECK(!reports.empty());
  for (const CMReport& r : reports) CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("suite verdicts are order-stable and deterministic") {
  SuiteOptions opt;
  opt.max_index = 3;
  opt.c_list = {0.5, 2.0};
  opt.grid = default_grid();

  const auto base = theorem_suite(opt);
  const auto again = theorem_suite(opt);
  CHECK(reports_equal(base, again));

  SuiteOptions serial = opt;
  serial.threads = 1;
  CHECK(reports_equal(base, theorem_suite(serial)));

  SuiteOptions low = opt;
  low.max_order = 8;
  const auto low_reports = theorem_suite(low);
  REQUIRE(low_reports.size() == base.size());
  for (size_t i = 0; i < base.size(); ++i) CHECK(base[i].verdict == low_reports[i].verdict);
}

TEST_CASE("suite with inflated thresholds reports witnesses") {
  SuiteOptions opt;
  opt.max_index = 3;
  opt.c_list = {0.5, 2.0};
  opt.grid = default_grid();
  opt.s_scale = 1.05;
  const auto reports = theorem_suite(opt);
  int fails = 0;
  for (const CMReport& r : reports) {
    if (r.clause == "1a") {
      CHECK(r.verdict == Verdict::fail);
      CHECK(r.witness.has_value());
    }
    if (r.verdict == Verdict::fail) ++fails;
  }
  CHECK(fails > 0);
}

TEST_CASE("suite passes couple to the Laplace representation") {
  SuiteOptions opt;
  opt.max_index = 3;
  opt.c_list = {0.5, 2.0};
  opt.grid = default_grid();
  QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  spec.abs_tol = 1e-14;
  for (const CMReport& r : theorem_suite(opt)) {
    REQUIRE(r.verdict == Verdict::pass);
    for (double x : {1.0, 2.0, 5.0}) {
      const double direct = f_eval(r.params, x);
      CHECK(std::fabs(laplace_oracle_F(r.params, x, spec) - direct) <=
            1e-6 * std::fabs(direct) + 1e-12);
    }
  }
}

TEST_CASE("sharpness finds witnesses just off the threshold") {
  const SharpnessResult above =
      sharpness_probe({{3, 2, 2, 1}, 0.5, 0.5}, Direction::above, 0.02, 1.0, 1e6);
  CHECK(above.params.s == doctest::Approx(0.51).epsilon(1e-15));
  CHECK(above.witness_x >= 1.0);
  CHECK(above.witness_x <= 1e6);
  CHECK(above.witness_value < 0.0);

  const SharpnessResult below =
      sharpness_probe({{2, 1, 1, 0}, 2.0, 0.5}, Direction::below, 0.02, 1e-8, 1.0);
  CHECK(below.params.s == doctest::Approx(1.96).epsilon(1e-15));
  CHECK(below.witness_x < 0.1);
  CHECK(below.witness_value < 0.0);
}

TEST_CASE("sharpness at the exact threshold finds nothing") {
  CHECK_THROWS_AS(sharpness_probe({{3, 2, 2, 1}, 0.5, 0.5}, Direction::above, 0.0, 1.0, 1e4),
                  no_witness_error);
  CHECK_THROWS_AS(sharpness_probe({{3, 2, 2, 1}, 0.5, 0.5}, Direction::above, 0.9, 1.0, 1e4),
                  std::invalid_argument);
}

TEST_CASE("the pass set in s is a left ray") {
  // c <= 1: F passes at s in {0, alpha/2, alpha} and fails just above.
  const FamilyIndex idx{3, 2, 2, 1};
  const double a = 0.5;
  const GridSpec grid = default_grid();
  for (double s : {0.0, a / 2.0, a})
    CHECK(check_cm({idx, s, 0.5}, Sign::plus, grid, 12, 1e-9).verdict == Verdict::pass);
  CHECK_NOTHROW(sharpness_probe({idx, a, 0.5}, Direction::above, 0.05, 1.0, 1e6));
}

TEST_CASE("limit tables converge monotonically") {
  const LimitTable t1 = limit_check(FamilyIndex{3, 2, 2, 1}, 0.5, LimitKind::infinity);
  REQUIRE(t1.rows.size() == 4);
  CHECK(t1.limit == 0.5);
  CHECK(t1.monotone);
  CHECK(t1.final_gap <= 5e-4 * 0.5);

  const LimitTable t2 = limit_check(FamilyIndex{2, 1, 1, 0}, 2.0, LimitKind::zero);
  REQUIRE(t2.rows.size() == 5);
  CHECK(t2.limit == 0.5);
  CHECK(t2.monotone);
  CHECK(t2.final_gap <= 1e-3 * 0.5);

  // c = 1 telescopes the difference quotient into exact factorial ratios;
  // the gap is rounding noise from the first row on.
  const LimitTable t3 = limit_check(FamilyIndex{4, 3, 2, 1}, 1.0, LimitKind::infinity);
  CHECK(t3.monotone);
  CHECK(t3.final_gap <= 1e-12);

  const LimitTable t4 = limit_check(FamilyIndex{4, 3, 2, 1}, 0.7, LimitKind::infinity);
  CHECK(t4.monotone);
  for (size_t i = 1; i < t4.rows.size(); ++i) CHECK(t4.rows[i].gap < t4.rows[i - 1].gap);

  CHECK_THROWS_AS(limit_check(FamilyIndex{3, 2, 2, 1}, 0.5, LimitKind::zero),
                  std::invalid_argument);
}

TEST_CASE("random draws below alpha stay completely monotonic (c <= 1)") {
  // Hand-rolled generator with a fixed seed: any s <= alpha with c <= 1
  // keeps F completely monotonic, for every valid index.
  std::mt19937 rng(20240811u);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto indices = enumerate_indices(6);
  const GridSpec grid{0.1, 20.0, 16, GridSpec::Spacing::log};
  for (int trial = 0; trial < 24; ++trial) {
    const FamilyIndex idx = indices[rng() % indices.size()];
    const double c = 0.05 + 0.95 * unit(rng);
    const double s = alpha(idx).value() * unit(rng);
    const CMReport r = check_cm({idx, s, c}, Sign::plus, grid, 6, 1e-9);
    INFO("index (", idx.p, ",", idx.m, ",", idx.n, ",", idx.q, ") s=", s, " c=", c);
    CHECK(r.verdict == Verdict::pass);
  }
}
