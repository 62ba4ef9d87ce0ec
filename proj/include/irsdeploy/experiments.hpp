#pragma once

#include <cmath>
#include <iomanip>
#include <locale>
#include <sstream>
#include <string>
#include <vector>

#include "irsdeploy/asymptotics.hpp"
#include "irsdeploy/joint.hpp"
#include "irsdeploy/oracle.hpp"
#include "irsdeploy/scenario.hpp"

namespace irsdeploy {

// All subcommands emit one fixed CSV schema so the figure data series stay
// machine-comparable. Numbers are printed with 12 significant digits in the
// classic locale; LF line endings.

inline const char* csv_header() {
  return "sweep_value,scheme,n_p,n_a,x_star_m,snr_linear,rate_bps_hz,oracle_rate_bps_hz,"
         "assumptions_ok";
}

struct CsvRow {
  double sweep_value = 0.0;
  std::string scheme;
  double n_p = std::nan("");
  double n_a = std::nan("");
  double x_star_m = std::nan("");
  double snr_linear = std::nan("");
  double rate = std::nan("");
  double oracle_rate = std::nan("");
  int assumptions_ok = 1;
};

inline std::string format_number(double v) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss << std::setprecision(12) << v;
  return ss.str();
}

inline std::string format_row(const CsvRow& r) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss << format_number(r.sweep_value) << ',' << r.scheme << ',' << format_number(r.n_p) << ','
     << format_number(r.n_a) << ',' << format_number(r.x_star_m) << ','
     << format_number(r.snr_linear) << ',' << format_number(r.rate) << ','
     << format_number(r.oracle_rate) << ',' << r.assumptions_ok;
  return ss.str();
}

inline std::string format_csv(const std::vector<CsvRow>& rows) {
  std::string out = csv_header();
  out += '\n';
  for (const auto& r : rows) {
    out += format_row(r);
    out += '\n';
  }
  return out;
}

namespace detail {

inline std::vector<Scheme> selected_schemes(const ScenarioConfig& sc) {
  if (sc.scheme == "bhu") return {Scheme::bhu};
  if (sc.scheme == "bapu") return {Scheme::bapu};
  if (sc.scheme == "bpau") return {Scheme::bpau};
  return {Scheme::bhu, Scheme::bapu, Scheme::bpau};
}

inline PathGains scheme_gains(Scheme s, const ScenarioConfig& sc, const PowerConfig& cfg) {
  if (s == Scheme::bhu) return gains_from_geometry(sc.single_geometry(), cfg);
  return gains_from_geometry(sc.double_geometry(), cfg);
}

inline ElementSplit scheme_split(Scheme s, const ScenarioConfig& sc, const PowerConfig& cfg,
                                 const PathGains& g) {
  if (sc.n_p) return ElementSplit(*sc.n_p, *sc.n_a);
  return optimal_split_rounded(s, cfg, g, sc.n_total);
}

inline double fixed_x(Scheme s, const ScenarioConfig& sc) {
  if (s == Scheme::bhu) return sc.x_bi ? *sc.x_bi : std::nan("");
  return s == Scheme::bapu ? sc.x_b : sc.x_u;
}

inline int assumptions_flag(const ScenarioConfig& sc, const PowerConfig& cfg,
                            const ElementSplit& split) {
  const PlacementAssumptions rep = check_placement_assumptions(
      cfg, sc.single_geometry(), sc.double_geometry(), split);
  return rep.valid ? 1 : 0;
}

}  // namespace detail

/// Closed-form evaluation at the configured geometry and split; the oracle
/// column re-derives the SNR through the vector channel model.
inline std::vector<CsvRow> rows_evaluate(const ScenarioConfig& sc, double sweep_value = 0.0,
                                         std::uint64_t seed = 1) {
  const PowerConfig cfg = sc.power();
  std::vector<CsvRow> rows;
  for (Scheme s : detail::selected_schemes(sc)) {
    const PathGains g = detail::scheme_gains(s, sc, cfg);
    const ElementSplit split = detail::scheme_split(s, sc, cfg, g);
    const EvalResult ev = snr_closed_form(s, cfg, g, split);
    CsvRow r;
    r.sweep_value = sweep_value;
    r.scheme = scheme_name(s);
    r.n_p = split.n_p;
    r.n_a = split.n_a;
    r.x_star_m = detail::fixed_x(s, sc);
    r.snr_linear = ev.snr;
    r.rate = ev.rate;
    r.oracle_rate = rate_from_snr(vector_snr_oracle(s, cfg, g, split, seed));
    r.assumptions_ok = detail::assumptions_flag(sc, cfg, split);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Rounded closed-form allocation beside the exhaustive-search oracle.
inline std::vector<CsvRow> rows_allocate(const ScenarioConfig& sc, double sweep_value,
                                         int n_total) {
  const PowerConfig cfg = sc.power();
  std::vector<CsvRow> rows;
  for (Scheme s : detail::selected_schemes(sc)) {
    const PathGains g = detail::scheme_gains(s, sc, cfg);
    const ElementSplit split = optimal_split_rounded(s, cfg, g, n_total);
    const ElementSplit exact = exhaustive_split(s, cfg, g, n_total);
    CsvRow r;
    r.sweep_value = sweep_value;
    r.scheme = scheme_name(s);
    r.n_p = split.n_p;
    r.n_a = split.n_a;
    r.x_star_m = detail::fixed_x(s, sc);
    r.snr_linear = snr_core(s, cfg, g, split.n_p, split.n_a);
    r.rate = rate_from_snr(r.snr_linear);
    r.oracle_rate = rate_from_snr(snr_core(s, cfg, g, exact.n_p, exact.n_a));
    r.assumptions_ok = detail::assumptions_flag(sc, cfg, split);
    rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<CsvRow> rows_allocate(const ScenarioConfig& sc) {
  return rows_allocate(sc, sc.n_total, sc.n_total);
}

/// Closed-form placement beside the restricted grid-search oracle.
inline std::vector<CsvRow> rows_place(const ScenarioConfig& sc, double grid_res,
                                      double sweep_value = 0.0,
                                      const ScenarioConfig* override_sc = nullptr) {
  const ScenarioConfig& use = override_sc ? *override_sc : sc;
  const PowerConfig cfg = use.power();
  std::vector<CsvRow> rows;
  for (Scheme s : detail::selected_schemes(use)) {
    const PathGains g = detail::scheme_gains(s, use, cfg);
    const ElementSplit split = detail::scheme_split(s, use, cfg, g);
    const PlacementSolution sol = place_closed_form(s, cfg, split, use.length, use.h_s, use.h_d);
    const GridPlacementResult grid =
        grid_search_placement(s, cfg, split, use.length, use.h_s, use.h_d, grid_res);
    CsvRow r;
    r.sweep_value = sweep_value;
    r.scheme = scheme_name(s);
    r.n_p = split.n_p;
    r.n_a = split.n_a;
    r.x_star_m = sol.x_star;
    r.snr_linear = sol.snr_true;
    r.rate = rate_from_snr(sol.snr_true);
    r.oracle_rate = rate_from_snr(grid.snr_restricted);
    r.assumptions_ok = detail::assumptions_flag(use, cfg, split);
    rows.push_back(std::move(r));

    CsvRow rg = r;
    rg.scheme = std::string(scheme_name(s)) + "_grid";
    rg.x_star_m = grid.x_restricted;
    rg.snr_linear = grid.snr_restricted;
    rg.rate = rate_from_snr(grid.snr_restricted);
    rows.push_back(std::move(rg));

    if (s != Scheme::bhu) {
      // unanchored simplex optimum; x_star keeps the scheme's own coordinate
      CsvRow rs = r;
      rs.scheme = std::string(scheme_name(s)) + "_simplex";
      rs.x_star_m = s == Scheme::bapu ? grid.x_b_unrestricted : grid.x_u_unrestricted;
      rs.snr_linear = grid.snr_unrestricted;
      rs.rate = rate_from_snr(grid.snr_unrestricted);
      rs.oracle_rate = rs.rate;
      rows.push_back(std::move(rs));
    }
  }
  return rows;
}

/// Alternating optimizer beside the brute-force oracle.
inline std::vector<CsvRow> rows_joint(const ScenarioConfig& sc, double grid_res,
                                      double sweep_value = 0.0) {
  const PowerConfig cfg = sc.power();
  std::vector<CsvRow> rows;
  for (Scheme s : detail::selected_schemes(sc)) {
    const JointResult alt = alternate_optimize(s, cfg, sc.n_total, sc.length, sc.h_s, sc.h_d);
    const JointResult oracle =
        joint_brute_force(s, cfg, sc.n_total, sc.length, sc.h_s, sc.h_d, grid_res, {alt.x});
    CsvRow r;
    r.sweep_value = sweep_value;
    r.scheme = scheme_name(s);
    r.n_p = alt.split.n_p;
    r.n_a = alt.split.n_a;
    r.x_star_m = alt.x;
    r.snr_linear = alt.snr;
    r.rate = alt.rate;
    r.oracle_rate = oracle.rate;
    r.assumptions_ok = alt.converged ? 1 : 0;
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Jointly optimized schemes plus the passive-only benchmarks.
inline std::vector<CsvRow> rows_compare(const ScenarioConfig& sc, double grid_res,
                                        double sweep_value = 0.0) {
  std::vector<CsvRow> rows = rows_joint(sc, grid_res, sweep_value);
  const PowerConfig cfg = sc.power();
  CsvRow bpu;
  bpu.sweep_value = sweep_value;
  bpu.scheme = "bpu";
  bpu.n_p = sc.n_total;
  bpu.n_a = 0;
  bpu.rate = benchmark_bpu(cfg, sc.n_total, sc.length, sc.h_d);
  bpu.snr_linear = std::exp2(bpu.rate) - 1.0;
  rows.push_back(std::move(bpu));
  CsvRow bppu;
  bppu.sweep_value = sweep_value;
  bppu.scheme = "bppu";
  bppu.n_p = sc.n_total;
  bppu.n_a = 0;
  bppu.rate = benchmark_bppu(cfg, sc.n_total, sc.length, sc.h_d);
  bppu.snr_linear = std::exp2(bppu.rate) - 1.0;
  rows.push_back(std::move(bppu));
  return rows;
}

enum class SweepKey { n, p_b_dbm, p_i_dbm };

inline SweepKey sweep_key_from_name(const std::string& name) {
  if (name == "n") return SweepKey::n;
  if (name == "p_b_dbm") return SweepKey::p_b_dbm;
  if (name == "p_i_dbm") return SweepKey::p_i_dbm;
  throw ScenarioError("sweep: unknown variable '" + name + "' (n, p_b_dbm, p_i_dbm)");
}

inline ScenarioConfig with_sweep_value(const ScenarioConfig& sc, SweepKey key, double v) {
  ScenarioConfig out = sc;
  switch (key) {
    case SweepKey::n:
      out.n_total = static_cast<int>(std::llround(v));
      out.n_p.reset();
      out.n_a.reset();
      break;
    case SweepKey::p_b_dbm: out.p_b_dbm = v; break;
    case SweepKey::p_i_dbm: out.p_i_dbm = v; break;
  }
  return out;
}

/// Evaluate-style sweep: one row per point per scheme, rows in sweep order.
inline std::vector<CsvRow> rows_sweep(const ScenarioConfig& sc, SweepKey key, double from,
                                      double to, int steps) {
  if (steps < 1) throw ScenarioError("sweep: steps must be >= 1");
  std::vector<CsvRow> rows;
  for (int i = 0; i < steps; ++i) {
    const double v = steps == 1 ? from : from + (to - from) * i / (steps - 1);
    const ScenarioConfig point = with_sweep_value(sc, key, v);
    point.validate();
    for (auto& r : rows_evaluate(point, v)) rows.push_back(std::move(r));
  }
  return rows;
}

/// Scaling sweep: per-point SNR rows with the asymptotic prediction in the
/// oracle column; the fitted slope goes to the caller separately.
struct AsymptoticRows {
  std::vector<CsvRow> rows;
  std::vector<std::pair<std::string, SlopeFit>> fits;  // scheme name -> fit
};

inline AsymptoticRows rows_asymptotic(const ScenarioConfig& sc, SweepKey key, double factor_hi,
                                      double eps = 0.5) {
  const PowerConfig cfg = sc.power();
  AsymptoticRows out;
  const SweepVariable var = key == SweepKey::n
                                ? SweepVariable::n_elements
                                : (key == SweepKey::p_b_dbm ? SweepVariable::p_b
                                                            : SweepVariable::p_i);
  for (Scheme s : detail::selected_schemes(sc)) {
    const PathGains g = detail::scheme_gains(s, sc, cfg);
    const ElementSplit split = detail::scheme_split(s, sc, cfg, g);
    double lo = 0.0;
    switch (var) {
      case SweepVariable::n_elements: lo = sc.n_total; break;
      case SweepVariable::p_b: lo = cfg.p_b; break;
      case SweepVariable::p_i: lo = cfg.p_i; break;
    }
    const SlopeFit fit = estimate_scaling_order(s, var, cfg, g, split, eps, lo, lo * factor_hi,
                                                AllocationPolicy::fixed_eps);
    const AsymptoticResult lim = asymptotic_snr({s, var, eps}, cfg, g, split);
    for (std::size_t i = 0; i < fit.values.size(); ++i) {
      CsvRow r;
      r.sweep_value = fit.values[i];
      r.scheme = scheme_name(s);
      r.n_p = split.n_p;
      r.n_a = split.n_a;
      r.snr_linear = fit.snr_values[i];
      r.rate = rate_from_snr(fit.snr_values[i]);
      double predicted = lim.coefficient_or_bound;
      if (lim.kind == AsymptoticKind::linear_in_var) predicted *= fit.values[i];
      if (lim.kind == AsymptoticKind::quadratic_in_var)
        predicted *= fit.values[i] * fit.values[i];
      r.oracle_rate = rate_from_snr(predicted);
      r.assumptions_ok = fit.power_law ? 1 : 0;
      out.rows.push_back(std::move(r));
    }
    out.fits.emplace_back(scheme_name(s), fit);
  }
  return out;
}

// Figure reproduction. Scenario overrides follow the stock simulation setup
// for each figure family.

inline ScenarioConfig fig_allocation_scenario(const ScenarioConfig& base) {
  ScenarioConfig sc = base;
  sc.scheme = "all";
  sc.n_p.reset();
  sc.n_a.reset();
  return sc;
}

inline std::vector<CsvRow> rows_reproduce_fig3(const ScenarioConfig& base) {
  std::vector<CsvRow> rows;
  ScenarioConfig sc = fig_allocation_scenario(base);
  sc.scheme = "all";
  for (int n = 100; n <= 600; n += 50) {
    ScenarioConfig point = sc;
    point.n_total = n;
    for (Scheme s : {Scheme::bapu, Scheme::bpau}) {
      point.scheme = scheme_name(s);
      for (auto& r : rows_allocate(point, n, n)) rows.push_back(std::move(r));
    }
  }
  return rows;
}

inline std::vector<CsvRow> rows_reproduce_fig4(const ScenarioConfig& base) {
  std::vector<CsvRow> rows;
  ScenarioConfig sc = fig_allocation_scenario(base);
  const PowerConfig cfg = sc.power();
  for (int n = 100; n <= 600; n += 50) {
    for (auto& r : rows_allocate(sc, n, n)) rows.push_back(std::move(r));
    // equal-split benchmark curves
    for (Scheme s : {Scheme::bhu, Scheme::bapu, Scheme::bpau}) {
      const PathGains g = detail::scheme_gains(s, sc, cfg);
      const int np = n / 2;
      CsvRow r;
      r.sweep_value = n;
      r.scheme = std::string(scheme_name(s)) + "_equal";
      r.n_p = np;
      r.n_a = n - np;
      r.x_star_m = detail::fixed_x(s, sc);
      r.snr_linear = snr_core(s, cfg, g, np, n - np);
      r.rate = rate_from_snr(r.snr_linear);
      r.assumptions_ok = detail::assumptions_flag(sc, cfg, ElementSplit(np, n - np));
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

inline ScenarioConfig fig_placement_scenario(const ScenarioConfig& base) {
  ScenarioConfig sc = base;
  sc.scheme = "all";
  sc.n_total = 700;
  sc.n_p = 500;
  sc.n_a = 200;
  return sc;
}

inline std::vector<CsvRow> rows_reproduce_fig5(const ScenarioConfig& base, double grid_res) {
  std::vector<CsvRow> rows;
  const ScenarioConfig sc = fig_placement_scenario(base);
  for (int pi = 0; pi <= 20; pi += 2) {
    ScenarioConfig point = sc;
    point.p_i_dbm = pi;
    for (auto& r : rows_place(point, grid_res, pi)) rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<CsvRow> rows_reproduce_fig6(const ScenarioConfig& base, double grid_res) {
  std::vector<CsvRow> rows;
  const ScenarioConfig sc = fig_placement_scenario(base);
  for (int pi = 0; pi <= 20; pi += 2) {
    ScenarioConfig point = sc;
    point.p_i_dbm = pi;
    const PowerConfig cfg = point.power();
    for (auto& r : rows_place(point, grid_res, pi)) rows.push_back(std::move(r));
    // fixed mid-span placement benchmark
    for (Scheme s : {Scheme::bhu, Scheme::bapu, Scheme::bpau}) {
      const ElementSplit split(*point.n_p, *point.n_a);
      double snr = 0.0;
      if (s == Scheme::bhu)
        snr = detail::snr_bhu_at(cfg, point.length / 2.0, point.length, point.h_s, split);
      else if (s == Scheme::bapu)
        snr = detail::snr_double_at(Scheme::bapu, cfg, point.length / 2.0, 0.0, point.length,
                                    point.h_d, split);
      else
        snr = detail::snr_double_at(Scheme::bpau, cfg, 0.0, point.length / 2.0, point.length,
                                    point.h_d, split);
      CsvRow r;
      r.sweep_value = pi;
      r.scheme = std::string(scheme_name(s)) + "_middle";
      r.n_p = split.n_p;
      r.n_a = split.n_a;
      r.x_star_m = point.length / 2.0;
      r.snr_linear = snr;
      r.rate = rate_from_snr(snr);
      r.assumptions_ok = detail::assumptions_flag(point, cfg, split);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

inline ScenarioConfig fig_joint_scenario(const ScenarioConfig& base) {
  ScenarioConfig sc = base;
  sc.scheme = "all";
  sc.n_p.reset();
  sc.n_a.reset();
  return sc;
}

inline std::vector<CsvRow> rows_reproduce_fig7(const ScenarioConfig& base, double grid_res) {
  std::vector<CsvRow> rows;
  ScenarioConfig sc = fig_joint_scenario(base);
  for (int n = 100; n <= 800; n += 100) {
    ScenarioConfig point = sc;
    point.n_total = n;
    for (auto& r : rows_compare(point, grid_res, n)) rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<CsvRow> rows_reproduce_fig8(const ScenarioConfig& base, double grid_res) {
  std::vector<CsvRow> rows;
  ScenarioConfig sc = fig_joint_scenario(base);
  sc.n_total = 700;
  for (int pi = 0; pi <= 20; pi += 2) {
    ScenarioConfig point = sc;
    point.p_i_dbm = pi;
    for (auto& r : rows_compare(point, grid_res, pi)) rows.push_back(std::move(r));
  }
  return rows;
}

inline std::vector<CsvRow> rows_reproduce(const ScenarioConfig& base, const std::string& figure,
                                          double grid_res) {
  if (figure == "fig3") return rows_reproduce_fig3(base);
  if (figure == "fig4") return rows_reproduce_fig4(base);
  if (figure == "fig5") return rows_reproduce_fig5(base, grid_res);
  if (figure == "fig6") return rows_reproduce_fig6(base, grid_res);
  if (figure == "fig7") return rows_reproduce_fig7(base, grid_res);
  if (figure == "fig8") return rows_reproduce_fig8(base, grid_res);
  throw ScenarioError("reproduce: unknown figure '" + figure + "' (fig3..fig8)");
}

}  // namespace irsdeploy
