// cmkit command-line front end: evaluate the function family, run the
// theorem verification suite, probe threshold sharpness and dump kernel
// diagnostics as JSON or CSV.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmkit/kernels.hpp"
#include "cmkit/verifier.hpp"
#include "cmkit/version.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace cmkit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerdictFail = 1;
constexpr int kExitBadArgs = 2;
constexpr int kExitEngineError = 3;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Streams either to stdout ("-") or to a file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output path: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Flat JSON config mirroring the long flag names; values apply only where
// the flag was not given on the command line, and unknown keys are an error.
class ConfigFile {
 public:
  ConfigFile(const std::string& path, const std::string& command,
             const std::vector<std::string>& allowed) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    try {
      data_ = json::parse(in);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    if (!data_.is_object()) throw std::invalid_argument("config must be a JSON object");
    for (const auto& [key, _] : data_.items()) {
      if (key == "command") {
        if (data_["command"] != command)
          throw std::invalid_argument("config command '" + data_["command"].get<std::string>() +
                                      "' does not match '" + command + "'");
        continue;
      }
      bool ok = false;
      for (const auto& a : allowed) ok = ok || a == key;
      if (!ok) throw std::invalid_argument("unknown config key: " + key);
    }
  }

  template <class T>
  void apply(const CLI::App& app, const std::string& flag, T& value) const {
    if (app.get_option("--" + flag)->count() > 0) return;  // flags override file
    if (auto it = data_.find(flag); it != data_.end()) value = it->get<T>();
  }

 private:
  json data_;
};

json params_json(const FamilyParams& p) {
  return json{{"p", p.index.p}, {"m", p.index.m}, {"n", p.index.n},
              {"q", p.index.q}, {"s", p.s},       {"c", p.c}};
}

json worst_json(const WorstCell& w) {
  return json{{"k", w.k}, {"x", w.x}, {"value", w.value}, {"scale", w.scale}};
}

json report_json(const CMReport& r) {
  json out{{"params", params_json(r.params)},
           {"clause", r.clause},
           {"sign", to_string(r.sign)},
           {"max_order", r.max_order},
           {"verdict", to_string(r.verdict)},
           {"worst", worst_json(r.worst)}};
  if (r.witness) out["witness"] = worst_json(*r.witness);
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

json wrap_report(const json& config, const json& results, const json& summary) {
  return json{{"tool_version", kVersion}, {"config", config}, {"results", results},
              {"summary", summary}};
}

void emit(Output& out, const json& doc) { out.stream() << doc.dump(2) << "\n"; }

int engine_error(const std::exception& e) {
  std::cerr << "error: " << e.what() << "\n";
  return kExitEngineError;
}

// Engine tuning shared by the evaluation-heavy commands.
struct EngineArgs {
  double shift_threshold = EngineConfig{}.shift_threshold;
  int asymptotic_terms = EngineConfig{}.asymptotic_terms;
  double gamma_constant = EngineConfig{}.gamma_constant;

  EngineConfig make() const {
    EngineConfig cfg{shift_threshold, asymptotic_terms, gamma_constant};
    cfg.validate();
    return cfg;
  }
};

void add_engine_options(CLI::App* cmd, EngineArgs& ea) {
  cmd->add_option("--shift-threshold", ea.shift_threshold);
  cmd->add_option("--asymptotic-terms", ea.asymptotic_terms);
  cmd->add_option("--gamma-constant", ea.gamma_constant);
}

void apply_engine_config(const ConfigFile& cfg, const CLI::App& cmd, EngineArgs& ea) {
  cfg.apply(cmd, "shift-threshold", ea.shift_threshold);
  cfg.apply(cmd, "asymptotic-terms", ea.asymptotic_terms);
  cfg.apply(cmd, "gamma-constant", ea.gamma_constant);
}

json engine_config_json(const EngineArgs& ea) {
  return json{{"shift-threshold", ea.shift_threshold},
              {"asymptotic-terms", ea.asymptotic_terms},
              {"gamma-constant", ea.gamma_constant}};
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  int p{0}, m{0}, n{0}, q{0};
  double s{0.0}, c{0.0};
  std::vector<double> xs;
  int deriv{0};
  EngineArgs engine;
  std::string format{"csv"}, out{"-"}, config;
};

int run_eval(const CLI::App& cmd, EvalArgs& a) {
  try {
    if (!a.config.empty()) {
      const ConfigFile cfg(a.config, "eval",
                           {"p", "m", "n", "q", "s", "c", "x", "deriv", "format", "out",
                            "shift-threshold", "asymptotic-terms", "gamma-constant"});
      cfg.apply(cmd, "p", a.p);
      cfg.apply(cmd, "m", a.m);
      cfg.apply(cmd, "n", a.n);
      cfg.apply(cmd, "q", a.q);
      cfg.apply(cmd, "s", a.s);
      cfg.apply(cmd, "c", a.c);
      cfg.apply(cmd, "x", a.xs);
      cfg.apply(cmd, "deriv", a.deriv);
      cfg.apply(cmd, "format", a.format);
      cfg.apply(cmd, "out", a.out);
      apply_engine_config(cfg, cmd, a.engine);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }
  FamilyParams params{{a.p, a.m, a.n, a.q}, a.s, a.c};
  EngineConfig engine;
  try {
    params.validate();
    engine = a.engine.make();
    if (a.deriv < 0) throw std::invalid_argument("eval: --deriv must be >= 0");
    if (a.xs.empty()) throw std::invalid_argument("eval: at least one --x is required");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }

  try {
    Output out(a.out);
    if (a.format == "json") {
      json results = json::array();
      for (double x : a.xs)
        results.push_back(
            json{{"x", x}, {"k", a.deriv}, {"value", f_derivative(params, a.deriv, x, engine)}});
      json config{{"command", "eval"}, {"p", a.p},     {"m", a.m},
                  {"n", a.n},          {"q", a.q},     {"s", a.s},
                  {"c", a.c},          {"x", a.xs},    {"deriv", a.deriv},
                  {"format", a.format}, {"out", a.out}};
      config.update(engine_config_json(a.engine));
      emit(out, wrap_report(config, results,
                            json{{"records", results.size()}}));
    } else {
      out.stream() << "x,k,value\n";
      for (double x : a.xs)
        out.stream() << fmt17(x) << "," << a.deriv << ","
                     << fmt17(f_derivative(params, a.deriv, x, engine)) << "\n";
    }
  } catch (const std::exception& e) {
    return engine_error(e);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  int max_index{4};
  std::vector<double> cs;
  int max_order{12};
  double tol{1e-9};
  double s_scale{1.0};
  double grid_min{0.05}, grid_max{50.0};
  int grid_points{60};
  EngineArgs engine;
  std::string format{"json"}, out{"-"}, config;
};

int run_verify(const CLI::App& cmd, VerifyArgs& a) {
  try {
    if (!a.config.empty()) {
      const ConfigFile cfg(a.config, "verify",
                           {"max-index", "c", "max-order", "tol", "s-scale", "grid-min", "grid-max",
                            "grid-points", "format", "out", "shift-threshold", "asymptotic-terms",
                            "gamma-constant"});
      cfg.apply(cmd, "max-index", a.max_index);
      cfg.apply(cmd, "c", a.cs);
      cfg.apply(cmd, "max-order", a.max_order);
      cfg.apply(cmd, "tol", a.tol);
      cfg.apply(cmd, "s-scale", a.s_scale);
      cfg.apply(cmd, "grid-min", a.grid_min);
      cfg.apply(cmd, "grid-max", a.grid_max);
      cfg.apply(cmd, "grid-points", a.grid_points);
      cfg.apply(cmd, "format", a.format);
      cfg.apply(cmd, "out", a.out);
      apply_engine_config(cfg, cmd, a.engine);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }
  if (a.cs.empty()) a.cs = {0.25, 0.5, 1.0, 2.0, 4.0};

  SuiteOptions opt;
  opt.max_index = a.max_index;
  opt.c_list = a.cs;
  opt.max_order = a.max_order;
  opt.tol = a.tol;
  opt.s_scale = a.s_scale;
  opt.grid = GridSpec{a.grid_min, a.grid_max, a.grid_points, GridSpec::Spacing::log};
  if (const char* env = std::getenv("CMKIT_THREADS")) opt.threads = std::atoi(env);

  std::vector<CMReport> reports;
  try {
    opt.grid.validate();
    reports = theorem_suite(opt, a.engine.make());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const std::exception& e) {
    return engine_error(e);
  }

  size_t passed = 0, failed = 0, inconclusive = 0;
  for (const CMReport& r : reports) {
    if (r.verdict == Verdict::pass) ++passed;
    else if (r.verdict == Verdict::fail) ++failed;
    else ++inconclusive;
  }

  json config{{"command", "verify"},   {"max-index", a.max_index}, {"c", a.cs},
              {"max-order", a.max_order}, {"tol", a.tol},          {"s-scale", a.s_scale},
              {"grid-min", a.grid_min},   {"grid-max", a.grid_max},
              {"grid-points", a.grid_points}, {"format", a.format},  {"out", a.out}};
  config.update(engine_config_json(a.engine));
  try {
    Output out(a.out);
    if (a.format == "json") {
      json results = json::array();
      for (const CMReport& r : reports) results.push_back(report_json(r));
      emit(out, wrap_report(config, results,
                            json{{"total", reports.size()},
                                 {"passed", passed},
                                 {"failed", failed},
                                 {"inconclusive", inconclusive}}));
    } else {
      out.stream() << "clause,p,m,n,q,s,c,sign,verdict,k,x,value,scale,pass\n";
      for (const CMReport& r : reports) {
        const auto& i = r.params.index;
        out.stream() << r.clause << "," << i.p << "," << i.m << "," << i.n << "," << i.q << ","
                     << fmt17(r.params.s) << "," << fmt17(r.params.c) << "," << to_string(r.sign)
                     << "," << to_string(r.verdict) << "," << r.worst.k << "," << fmt17(r.worst.x)
                     << "," << fmt17(r.worst.value) << "," << fmt17(r.worst.scale) << ","
                     << (r.verdict == Verdict::pass ? "true" : "false") << "\n";
      }
    }
  } catch (const std::exception& e) {
    return engine_error(e);
  }

  if (inconclusive > 0) return kExitEngineError;
  return failed > 0 ? kExitVerdictFail : kExitOk;
}

// ---------------------------------------------------------------------------
// sharpness

struct SharpnessArgs {
  int p{0}, m{0}, n{0}, q{0};
  double c{0.0};
  double epsilon{0.02};
  std::string direction{"above"};
  double x_lo{1.0}, x_hi{1e6};
  double tol{1e-9};
  EngineArgs engine;
  std::string format{"json"}, out{"-"}, config;
};

int run_sharpness(const CLI::App& cmd, SharpnessArgs& a) {
  try {
    if (!a.config.empty()) {
      const ConfigFile cfg(a.config, "sharpness",
                           {"p", "m", "n", "q", "c", "epsilon", "direction", "x-lo", "x-hi", "tol",
                            "format", "out", "shift-threshold", "asymptotic-terms",
                            "gamma-constant"});
      cfg.apply(cmd, "p", a.p);
      cfg.apply(cmd, "m", a.m);
      cfg.apply(cmd, "n", a.n);
      cfg.apply(cmd, "q", a.q);
      cfg.apply(cmd, "c", a.c);
      cfg.apply(cmd, "epsilon", a.epsilon);
      cfg.apply(cmd, "direction", a.direction);
      cfg.apply(cmd, "x-lo", a.x_lo);
      cfg.apply(cmd, "x-hi", a.x_hi);
      cfg.apply(cmd, "tol", a.tol);
      cfg.apply(cmd, "format", a.format);
      cfg.apply(cmd, "out", a.out);
      apply_engine_config(cfg, cmd, a.engine);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }

  FamilyIndex index{a.p, a.m, a.n, a.q};
  FamilyParams at_threshold;
  EngineConfig engine;
  Direction dir;
  try {
    index.validate();
    engine = a.engine.make();
    if (!(a.c > 0.0)) throw std::invalid_argument("sharpness: --c must be positive");
    if (a.direction != "above" && a.direction != "below")
      throw std::invalid_argument("sharpness: --direction must be 'above' or 'below'");
    dir = a.direction == "above" ? Direction::above : Direction::below;
    // Threshold under probe: alpha for q >= 1 clauses, alpha/c for q = 0.
    const double thr = index.q == 0 ? alpha(index).value() / a.c : alpha(index).value();
    at_threshold = FamilyParams{index, thr, a.c};
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }

  json config{{"command", "sharpness"}, {"p", a.p},       {"m", a.m},
              {"n", a.n},               {"q", a.q},       {"c", a.c},
              {"epsilon", a.epsilon},   {"direction", a.direction},
              {"x-lo", a.x_lo},         {"x-hi", a.x_hi}, {"tol", a.tol},
              {"format", a.format},     {"out", a.out}};
  config.update(engine_config_json(a.engine));

  try {
    Output out(a.out);
    json result;
    bool found = true;
    try {
      const SharpnessResult res =
          sharpness_probe(at_threshold, dir, a.epsilon, a.x_lo, a.x_hi, a.tol, engine);
      result = json{{"params", params_json(res.params)},
                    {"direction", to_string(res.direction)},
                    {"found", true},
                    {"witness_x", res.witness_x},
                    {"witness_value", res.witness_value},
                    {"searched", json{{"x_lo", res.x_lo}, {"x_hi", res.x_hi}}}};
    } catch (const no_witness_error& e) {
      found = false;
      result = json{{"params", params_json(at_threshold)},
                    {"direction", a.direction},
                    {"found", false},
                    {"searched", json{{"x_lo", e.x_lo}, {"x_hi", e.x_hi}}}};
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitBadArgs;
    }
    if (a.format == "json") {
      emit(out, wrap_report(config, json::array({result}), json{{"found", found}}));
    } else {
      out.stream() << "found,witness_x,witness_value\n";
      out.stream() << (found ? "true" : "false") << ","
                   << (found ? fmt17(result["witness_x"].get<double>()) : "") << ","
                   << (found ? fmt17(result["witness_value"].get<double>()) : "") << "\n";
    }
    if (!found) return kExitVerdictFail;
  } catch (const std::exception& e) {
    return engine_error(e);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// kernels subcommands

struct KernelsArgs {
  // root
  int m{2}, n{1};
  double c{0.5};
  // u-monotone
  std::vector<double> a_list;
  std::vector<double> c_list;
  int points{200};
  // g-sign
  int gp{3}, gm{2}, gn{2}, gq{1};
  double s{0.5};
  double t_lo{0.01}, t_hi{50.0};
  int g_points{12};
  // beta-identity
  int max{6};
  double quad_rel{1e-11}, quad_abs{1e-15};
  std::string format{"json"}, out{"-"};
};

int run_kernels_root(KernelsArgs& a) {
  try {
    const KernelRootResult res = find_root(a.m, a.n, a.c);
    Output out(a.out);
    json config{{"command", "kernels"}, {"subcommand", "root"}, {"m", a.m}, {"n", a.n},
                {"c", a.c},             {"format", a.format},   {"out", a.out}};
    json result{{"t0", res.t0},
                {"s0", res.s0},
                {"bracket_lo", res.bracket_lo},
                {"bracket_hi", res.bracket_hi},
                {"residual", res.residual}};
    if (a.format == "json") {
      emit(out, wrap_report(config, json::array({result}), json{{"t0", res.t0}}));
    } else {
      out.stream() << "t0,s0,bracket_lo,bracket_hi,residual\n"
                   << fmt17(res.t0) << "," << fmt17(res.s0) << "," << fmt17(res.bracket_lo) << ","
                   << fmt17(res.bracket_hi) << "," << fmt17(res.residual) << "\n";
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  } catch (const std::exception& e) {
    return engine_error(e);
  }
  return kExitOk;
}

int run_kernels_u_monotone(KernelsArgs& a) {
  if (a.a_list.empty()) a.a_list = {0.5, 2.0, 10.0};
  if (a.c_list.empty()) a.c_list = {0.25, 0.5, 2.0, 4.0};
  try {
    Output out(a.out);
    json results = json::array();
    bool all_ok = true;
    for (double av : a.a_list)
      for (double cv : a.c_list) {
        const bool expect_decreasing = cv <= 1.0;
        bool monotone = true;
        double worst = 0.0;
        double prev = u(1.0 / (a.points + 1), av, cv);
        for (int i = 2; i <= a.points; ++i) {
          const double s = static_cast<double>(i) / (a.points + 1);
          const double cur = u(s, av, cv);
          const double step = expect_decreasing ? prev - cur : cur - prev;
          if (step < -1e-12 * std::fabs(prev)) {
            monotone = false;
            worst = std::min(worst, step);
          }
          prev = cur;
        }
        all_ok = all_ok && monotone;
        results.push_back(json{{"a", av},
                               {"c", cv},
                               {"expected", expect_decreasing ? "decreasing" : "increasing"},
                               {"monotone", monotone},
                               {"worst_violation", worst}});
      }
    json config{{"command", "kernels"}, {"subcommand", "u-monotone"}, {"a", a.a_list},
                {"c", a.c_list},        {"points", a.points},         {"format", a.format},
                {"out", a.out}};
    if (a.format == "json") {
      emit(out, wrap_report(config, results, json{{"all_monotone", all_ok}}));
    } else {
      out.stream() << "a,c,expected,monotone,worst_violation\n";
      for (const auto& r : results)
        out.stream() << fmt17(r["a"].get<double>()) << "," << fmt17(r["c"].get<double>()) << ","
                     << r["expected"].get<std::string>() << ","
                     << (r["monotone"].get<bool>() ? "true" : "false") << ","
                     << fmt17(r["worst_violation"].get<double>()) << "\n";
    }
    return all_ok ? kExitOk : kExitVerdictFail;
  } catch (const std::exception& e) {
    return engine_error(e);
  }
}

int run_kernels_g_sign(KernelsArgs& a) {
  FamilyIndex idx{a.gp, a.gm, a.gn, a.gq};
  try {
    idx.validate();
    if (idx.q < 1) throw std::invalid_argument("g-sign: requires a q >= 1 index");
    if (!(a.c > 0.0)) throw std::invalid_argument("g-sign: --c must be positive");
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadArgs;
  }
  try {
    QuadratureSpec spec;
    spec.rel_tol = a.quad_rel;
    spec.abs_tol = a.quad_abs;
    Output out(a.out);
    json results = json::array();
    bool any_pos = false, any_neg = false;
    const double l0 = std::log(a.t_lo), dl = (std::log(a.t_hi) - l0) / (a.g_points - 1);
    for (int i = 0; i < a.g_points; ++i) {
      const double t = std::exp(l0 + i * dl);
      const double g = g_kernel(idx, a.s, a.c, t, spec);
      const double pos = g_kernel(idx, 0.0, a.c, t, spec);
      const double scale = std::fabs(pos) + std::fabs(a.s) * std::fabs(pos - g_kernel(idx, 1.0, a.c, t, spec));
      if (g > 1e-10 * scale) any_pos = true;
      if (g < -1e-10 * scale) any_neg = true;
      results.push_back(json{{"t", t}, {"g", g}, {"scale", scale}});
    }
    const std::string verdict =
        any_pos && any_neg ? "mixed" : (any_neg ? "nonpositive" : "nonnegative");
    json config{{"command", "kernels"}, {"subcommand", "g-sign"}, {"p", a.gp},   {"m", a.gm},
                {"n", a.gn},            {"q", a.gq},              {"s", a.s},    {"c", a.c},
                {"t-lo", a.t_lo},       {"t-hi", a.t_hi},         {"points", a.g_points},
                {"format", a.format},   {"out", a.out}};
    if (a.format == "json") {
      emit(out, wrap_report(config, results, json{{"verdict", verdict}}));
    } else {
      out.stream() << "t,g,scale,verdict\n";
      for (const auto& r : results)
        out.stream() << fmt17(r["t"].get<double>()) << "," << fmt17(r["g"].get<double>()) << ","
                     << fmt17(r["scale"].get<double>()) << "," << verdict << "\n";
    }
  } catch (const std::exception& e) {
    return engine_error(e);
  }
  return kExitOk;
}

int run_kernels_beta_identity(KernelsArgs& a) {
  try {
    QuadratureSpec spec;
    spec.rel_tol = std::min(a.quad_rel, 1e-12);
    spec.abs_tol = std::min(a.quad_abs, 1e-15);
    Output out(a.out);
    json results = json::array();
    double max_resid = 0.0;
    for (int ix = 1; ix <= a.max; ++ix)
      for (int iy = 1; iy <= a.max; ++iy) {
        const double quad = beta_integral_quadrature(ix, iy, spec);
        const Rational exact = beta_exact(ix, iy);
        const double resid = std::fabs(quad - exact.value());
        max_resid = std::max(max_resid, resid);
        results.push_back(json{{"x", ix},
                               {"y", iy},
                               {"quadrature", quad},
                               {"exact", exact.str()},
                               {"residual", resid}});
      }
    json config{{"command", "kernels"}, {"subcommand", "beta-identity"}, {"max", a.max},
                {"format", a.format},   {"out", a.out}};
    if (a.format == "json") {
      emit(out, wrap_report(config, results, json{{"max_residual", max_resid}}));
    } else {
      out.stream() << "x,y,quadrature,exact,residual\n";
      for (const auto& r : results)
        out.stream() << r["x"].get<int>() << "," << r["y"].get<int>() << ","
                     << fmt17(r["quadrature"].get<double>()) << "," << r["exact"].get<std::string>()
                     << "," << fmt17(r["residual"].get<double>()) << "\n";
    }
  } catch (const std::exception& e) {
    return engine_error(e);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cmkit: complete-monotonicity toolkit for a polygamma function family"};
  app.require_subcommand(1);

  EvalArgs ev;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate F^(k)(x; s; c) on points");
  eval_cmd->add_option("--p", ev.p);
  eval_cmd->add_option("--m", ev.m);
  eval_cmd->add_option("--n", ev.n);
  eval_cmd->add_option("--q", ev.q);
  eval_cmd->add_option("--s", ev.s);
  eval_cmd->add_option("--c", ev.c);
  eval_cmd->add_option("--x", ev.xs);
  eval_cmd->add_option("--deriv", ev.deriv);
  eval_cmd->add_option("--format", ev.format)->check(CLI::IsMember({"json", "csv"}));
  eval_cmd->add_option("--out", ev.out);
  eval_cmd->add_option("--config", ev.config);
  add_engine_options(eval_cmd, ev.engine);

  VerifyArgs vf;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the theorem verification suite");
  verify_cmd->add_option("--max-index", vf.max_index);
  verify_cmd->add_option("--c", vf.cs);
  verify_cmd->add_option("--max-order", vf.max_order);
  verify_cmd->add_option("--tol", vf.tol);
  verify_cmd->add_option("--s-scale", vf.s_scale);
  verify_cmd->add_option("--grid-min", vf.grid_min);
  verify_cmd->add_option("--grid-max", vf.grid_max);
  verify_cmd->add_option("--grid-points", vf.grid_points);
  verify_cmd->add_option("--format", vf.format)->check(CLI::IsMember({"json", "csv"}));
  verify_cmd->add_option("--out", vf.out);
  verify_cmd->add_option("--config", vf.config);
  add_engine_options(verify_cmd, vf.engine);

  SharpnessArgs sh;
  CLI::App* sharp_cmd = app.add_subcommand("sharpness", "Search for a CM violation witness");
  sharp_cmd->add_option("--p", sh.p);
  sharp_cmd->add_option("--m", sh.m);
  sharp_cmd->add_option("--n", sh.n);
  sharp_cmd->add_option("--q", sh.q);
  sharp_cmd->add_option("--c", sh.c);
  sharp_cmd->add_option("--epsilon", sh.epsilon);
  sharp_cmd->add_option("--direction", sh.direction)->check(CLI::IsMember({"above", "below"}));
  sharp_cmd->add_option("--x-lo", sh.x_lo);
  sharp_cmd->add_option("--x-hi", sh.x_hi);
  sharp_cmd->add_option("--tol", sh.tol);
  sharp_cmd->add_option("--format", sh.format)->check(CLI::IsMember({"json", "csv"}));
  sharp_cmd->add_option("--out", sh.out);
  sharp_cmd->add_option("--config", sh.config);
  add_engine_options(sharp_cmd, sh.engine);

  KernelsArgs kn;
  CLI::App* kern_cmd = app.add_subcommand("kernels", "Kernel diagnostics");
  kern_cmd->require_subcommand(1);
  CLI::App* root_cmd = kern_cmd->add_subcommand("root", "Unique root of a(t; m, n, c) on [1, inf)");
  root_cmd->add_option("--m", kn.m);
  root_cmd->add_option("--n", kn.n);
  root_cmd->add_option("--c", kn.c);
  root_cmd->add_option("--format", kn.format)->check(CLI::IsMember({"json", "csv"}));
  root_cmd->add_option("--out", kn.out);
  CLI::App* umono_cmd = kern_cmd->add_subcommand("u-monotone", "Monotonicity table for u(s; a, c)");
  umono_cmd->add_option("--a", kn.a_list);
  umono_cmd->add_option("--c", kn.c_list);
  umono_cmd->add_option("--points", kn.points);
  umono_cmd->add_option("--format", kn.format)->check(CLI::IsMember({"json", "csv"}));
  umono_cmd->add_option("--out", kn.out);
  CLI::App* gsign_cmd = kern_cmd->add_subcommand("g-sign", "Sign table of the convolution kernel");
  gsign_cmd->add_option("--p", kn.gp);
  gsign_cmd->add_option("--m", kn.gm);
  gsign_cmd->add_option("--n", kn.gn);
  gsign_cmd->add_option("--q", kn.gq);
  gsign_cmd->add_option("--s", kn.s);
  gsign_cmd->add_option("--c", kn.c);
  gsign_cmd->add_option("--t-lo", kn.t_lo);
  gsign_cmd->add_option("--t-hi", kn.t_hi);
  gsign_cmd->add_option("--points", kn.g_points);
  gsign_cmd->add_option("--quad-rel-tol", kn.quad_rel);
  gsign_cmd->add_option("--quad-abs-tol", kn.quad_abs);
  gsign_cmd->add_option("--format", kn.format)->check(CLI::IsMember({"json", "csv"}));
  gsign_cmd->add_option("--out", kn.out);
  CLI::App* beta_cmd = kern_cmd->add_subcommand("beta-identity", "Quadrature vs factorial identity");
  beta_cmd->add_option("--max", kn.max);
  beta_cmd->add_option("--quad-rel-tol", kn.quad_rel);
  beta_cmd->add_option("--quad-abs-tol", kn.quad_abs);
  beta_cmd->add_option("--format", kn.format)->check(CLI::IsMember({"json", "csv"}));
  beta_cmd->add_option("--out", kn.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
    return kExitBadArgs;
  }

  if (*eval_cmd) return run_eval(*eval_cmd, ev);
  if (*verify_cmd) return run_verify(*verify_cmd, vf);
  if (*sharp_cmd) return run_sharpness(*sharp_cmd, sh);
  if (*kern_cmd) {
    if (*root_cmd) return run_kernels_root(kn);
    if (*umono_cmd) return run_kernels_u_monotone(kn);
    if (*gsign_cmd) return run_kernels_g_sign(kn);
    if (*beta_cmd) return run_kernels_beta_identity(kn);
  }
  return kExitBadArgs;
}
