#include "cmkit/verifier.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace cmkit {

void GridSpec::validate() const {
  if (!(x_min > 0.0)) throw std::invalid_argument("GridSpec: x_min must be positive");
  if (!(x_min < x_max)) throw std::invalid_argument("GridSpec: x_min must be below x_max");
  if (points < 2) throw std::invalid_argument("GridSpec: points must be >= 2");
}

std::vector<double> GridSpec::make() const {
  validate();
  std::vector<double> xs(points);
  if (spacing == Spacing::log) {
    const double l0 = std::log(x_min);
    const double dl = (std::log(x_max) - l0) / (points - 1);
    for (int i = 0; i < points; ++i) xs[i] = std::exp(l0 + i * dl);
  } else {
    const double dx = (x_max - x_min) / (points - 1);
    for (int i = 0; i < points; ++i) xs[i] = x_min + i * dx;
  }
  xs.front() = x_min;
  xs.back() = x_max;
  return xs;
}

CMReport check_cm(const FamilyParams& params, Sign sign, const GridSpec& grid, int max_order,
                  double tol, const EngineConfig& cfg) {
  CMReport report;
  report.params = params;
  report.sign = sign;
  report.max_order = max_order;
  report.worst = WorstCell{0, 0.0, 0.0, 0.0};

  const double sigma = sign == Sign::plus ? 1.0 : -1.0;
  double worst_norm = std::numeric_limits<double>::infinity();
  bool have_worst = false;
  bool violated = false;

  try {
    params.validate();
    grid.validate();
    if (max_order < 0) throw std::invalid_argument("check_cm: max_order must be >= 0");
    const std::vector<double> xs = grid.make();
    for (int k = 0; k <= max_order; ++k) {
      const double parity = k % 2 == 0 ? 1.0 : -1.0;
      for (double x : xs) {
        const DerivativeParts parts = f_derivative_parts(params, k, x, cfg);
        const double value = sigma * parity * parts.value();
        const double scale = parts.scale();
        if (!std::isfinite(value) || !std::isfinite(scale)) {
          report.verdict = Verdict::inconclusive;
          report.error = "non-finite evaluation at k=" + std::to_string(k) +
                         ", x=" + std::to_string(x);
          return report;
        }
        const double norm = scale > 0.0 ? value / scale : 0.0;
        if (!have_worst || norm < worst_norm) {
          worst_norm = norm;
          have_worst = true;
          report.worst = WorstCell{k, x, value, scale};
        }
        if (value < -tol * scale) violated = true;
      }
    }
  } catch (const std::exception& e) {
    report.verdict = Verdict::inconclusive;
    report.error = e.what();
    return report;
  }

  if (violated) {
    report.verdict = Verdict::fail;
    report.witness = report.worst;
  } else {
    report.verdict = Verdict::pass;
  }
  return report;
}

namespace {

struct SuiteCase {
  FamilyParams params;
  Sign sign;
  std::string clause;
};

std::vector<SuiteCase> build_cases(const SuiteOptions& options) {
  std::vector<SuiteCase> cases;
  for (const FamilyIndex& idx : enumerate_indices(options.max_index)) {
    const double a = alpha(idx).value();
    for (double c : options.c_list) {
      if (c <= 0.0) throw std::invalid_argument("theorem_suite: c values must be positive");
      const double sa = a * options.s_scale;
      if (c <= 1.0) cases.push_back({{idx, sa, c}, Sign::plus, "1a"});
      if (c >= 1.0) cases.push_back({{idx, sa, c}, Sign::minus, "2a"});
      if (idx.q == 0) {
        const double sac = (a / c) * options.s_scale;
        if (c <= 1.0) cases.push_back({{idx, sac, c}, Sign::minus, "1b"});
        if (c >= 1.0) cases.push_back({{idx, sac, c}, Sign::plus, "2b"});
      } else {
        const double sb = beta(idx).value() * options.s_scale;
        cases.push_back({{idx, sb, c}, Sign::minus, "3"});
      }
    }
  }
  return cases;
}

}  // namespace

std::vector<CMReport> theorem_suite(const SuiteOptions& options, const EngineConfig& cfg) {
  if (options.max_index > 8)
    throw std::invalid_argument("theorem_suite: max_index must be <= 8");
  const std::vector<SuiteCase> cases = build_cases(options);
  std::vector<CMReport> reports(cases.size());

  auto run_case = [&](size_t i) {
    reports[i] =
        check_cm(cases[i].params, cases[i].sign, options.grid, options.max_order, options.tol, cfg);
    reports[i].clause = cases[i].clause;
  };

  unsigned workers = options.threads > 0 ? static_cast<unsigned>(options.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, cases.size() ? cases.size() : 1);
  if (workers <= 1) {
    for (size_t i = 0; i < cases.size(); ++i) run_case(i);
    return reports;
  }

  // Cases land in fixed slots, so the report order (and content) does not
  // depend on scheduling.
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < cases.size(); i = next.fetch_add(1)) run_case(i);
    });
  for (auto& t : pool) t.join();
  return reports;
}

SharpnessResult sharpness_probe(const FamilyParams& at_threshold, Direction direction,
                                double epsilon, double x_lo, double x_hi, double tol,
                                const EngineConfig& cfg) {
  at_threshold.validate();
  if (!(epsilon >= 0.0 && epsilon < 0.5))
    throw std::invalid_argument("sharpness_probe: epsilon must lie in [0, 0.5)");
  if (!(x_lo > 0.0 && x_lo < x_hi))
    throw std::invalid_argument("sharpness_probe: need 0 < x_lo < x_hi");

  FamilyParams probe = at_threshold;
  probe.s = direction == Direction::above ? at_threshold.s * (1.0 + epsilon)
                                          : at_threshold.s * (1.0 - epsilon);
  const double sigma = direction == Direction::above ? 1.0 : -1.0;

  auto normalized = [&](double x) {
    const DerivativeParts parts = f_derivative_parts(probe, 0, x, cfg);
    const double scale = parts.scale();
    return scale > 0.0 ? sigma * parts.value() / scale : 0.0;
  };

  constexpr int kScanPoints = 240;
  const double l0 = std::log(x_lo);
  const double dl = (std::log(x_hi) - l0) / (kScanPoints - 1);
  int best = -1;
  double best_norm = -tol;
  for (int i = 0; i < kScanPoints; ++i) {
    const double norm = normalized(std::exp(l0 + i * dl));
    if (norm < best_norm) {
      best_norm = norm;
      best = i;
    }
  }
  if (best < 0)
    throw no_witness_error("sharpness_probe: no violation found in [" + std::to_string(x_lo) +
                               ", " + std::to_string(x_hi) + "]",
                           x_lo, x_hi);

  // Golden-section sharpening of the most negative scan point, in log x.
  double a = l0 + std::max(0, best - 1) * dl;
  double b = l0 + std::min(kScanPoints - 1, best + 1) * dl;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = normalized(std::exp(c1)), f2 = normalized(std::exp(c2));
  for (int it = 0; it < 60 && (b - a) > 1e-10; ++it) {
    if (f1 <= f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = normalized(std::exp(c1));
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = normalized(std::exp(c2));
    }
  }
  // Keep the refined point only if it actually improves on the scan.
  double wx = std::exp(0.5 * (a + b));
  if (normalized(wx) > best_norm) wx = std::exp(l0 + best * dl);

  SharpnessResult res;
  res.params = probe;
  res.direction = direction;
  res.witness_x = wx;
  res.witness_value = sigma * f_eval(probe, wx, cfg);
  res.x_lo = x_lo;
  res.x_hi = x_hi;
  return res;
}

LimitTable limit_check(const FamilyIndex& index, double c, LimitKind kind,
                       const EngineConfig& cfg) {
  index.validate();
  if (!(c > 0.0)) throw std::invalid_argument("limit_check: c must be positive");
  if (kind == LimitKind::zero && index.q != 0)
    throw std::invalid_argument("limit_check: kind=zero requires a q = 0 index");

  LimitTable table;
  table.index = index;
  table.c = c;
  table.kind = kind;
  const double a = alpha(index).value();
  table.limit = kind == LimitKind::infinity ? a : a / c;

  const std::vector<double> xs = kind == LimitKind::infinity
                                     ? std::vector<double>{1e1, 1e2, 1e3, 1e4}
                                     : std::vector<double>{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  // Gaps below the floor are converged-to-rounding (at c = 1 the difference
  // quotient telescopes exactly and the ratio is identically the limit).
  const double floor = 1e-12 * (1.0 + std::fabs(table.limit));
  table.monotone = true;
  for (double x : xs) {
    const double ratio = kind == LimitKind::infinity ? ratio_infinity(index, c, x, cfg)
                                                     : ratio_zero(index, c, x, cfg);
    const double gap = std::fabs(ratio - table.limit);
    if (!table.rows.empty() && gap > std::max(table.rows.back().gap * (1.0 + 1e-9), floor))
      table.monotone = false;
    table.rows.push_back(LimitRow{x, ratio, gap});
  }
  table.final_gap = table.rows.back().gap;
  if (table.final_gap > table.rows.front().gap && table.final_gap > floor)
    throw std::runtime_error("limit_check: ratio gap diverges away from the limit");
  return table;
}

const char* to_string(Sign s) { return s == Sign::plus ? "plus" : "minus"; }

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

const char* to_string(Direction d) { return d == Direction::above ? "above" : "below"; }

}  // namespace cmkit
