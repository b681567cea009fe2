#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmkit/f_family.hpp"

namespace cmkit {

struct GridSpec {
  double x_min = 0.05;
  double x_max = 50.0;
  int points = 60;
  enum class Spacing { log, linear } spacing = Spacing::log;

  void validate() const;
  std::vector<double> make() const;
};

enum class Sign { plus, minus };            // test F or -F
enum class Verdict { pass, fail, inconclusive };
enum class Direction { above, below };
enum class LimitKind { infinity, zero };

struct WorstCell {
  int k{0};
  double x{0.0};
  double value{0.0};
  double scale{0.0};
};

struct CMReport {
  FamilyParams params;
  Sign sign{Sign::plus};
  int max_order{0};
  Verdict verdict{Verdict::inconclusive};
  WorstCell worst;
  std::optional<WorstCell> witness;  // present iff verdict == fail
  std::string clause;                // theorem clause label, empty for ad-hoc checks
  std::string error;                 // set when inconclusive
};

// Evaluates sigma * (-1)^k F^(k)(x) over the grid for k <= max_order; passes
// iff every cell is >= -tol * scale(k, x). Evaluation errors and non-finite
// cells yield an inconclusive verdict, never a pass.
CMReport check_cm(const FamilyParams& params, Sign sign, const GridSpec& grid, int max_order,
                  double tol, const EngineConfig& cfg = {});

struct SuiteOptions {
  int max_index = 4;
  std::vector<double> c_list = {0.25, 0.5, 1.0, 2.0, 4.0};
  GridSpec grid;
  int max_order = 12;
  double tol = 1e-9;
  double s_scale = 1.0;  // multiplies every clause threshold (sharpness runs)
  int threads = 0;       // 0 = one worker per hardware thread
};

// Runs every clause-appropriate check over all valid indices with
// p <= max_index and every c in c_list; c = 1 runs both the c <= 1 and the
// c >= 1 clause variants. Reports come back in deterministic case order.
std::vector<CMReport> theorem_suite(const SuiteOptions& options, const EngineConfig& cfg = {});

struct SharpnessResult {
  FamilyParams params;  // s already perturbed off the threshold
  Direction direction{Direction::above};
  double witness_x{0.0};
  double witness_value{0.0};
  double x_lo{0.0};
  double x_hi{0.0};
};

struct no_witness_error : std::runtime_error {
  double x_lo, x_hi;
  no_witness_error(const std::string& msg, double lo, double hi)
      : std::runtime_error(msg), x_lo(lo), x_hi(hi) {}
};

// Perturbs s off the threshold carried by at_threshold (above: s(1+eps)
// testing F, below: s(1-eps) testing -F) and scans log-spaced x for a
// sign violation at order k = 0, refining the most negative point.
SharpnessResult sharpness_probe(const FamilyParams& at_threshold, Direction direction,
                                double epsilon, double x_lo, double x_hi, double tol = 1e-9,
                                const EngineConfig& cfg = {});

struct LimitRow {
  double x{0.0};
  double ratio{0.0};
  double gap{0.0};
};

struct LimitTable {
  FamilyIndex index;
  double c{0.0};
  LimitKind kind{LimitKind::infinity};
  double limit{0.0};
  std::vector<LimitRow> rows;
  bool monotone{false};
  double final_gap{0.0};
};

// Tabulates the bilinear-term ratio toward its limit (alpha at infinity,
// alpha/c at zero for q = 0); throws if the gap grows overall.
LimitTable limit_check(const FamilyIndex& index, double c, LimitKind kind,
                       const EngineConfig& cfg = {});

const char* to_string(Sign s);
const char* to_string(Verdict v);
const char* to_string(Direction d);

}  // namespace cmkit
