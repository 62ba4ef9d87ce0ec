#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "irsdeploy/allocation.hpp"
#include "irsdeploy/snr.hpp"

namespace irsdeploy {

enum class SweepVariable { n_elements, p_b, p_i };

enum class AsymptoticKind { linear_in_var, quadratic_in_var, bounded };

struct AsymptoticQuery {
  Scheme scheme = Scheme::bhu;
  SweepVariable variable = SweepVariable::n_elements;
  double epsilon = 0.5;  // passive fraction for element-count limits
};

struct AsymptoticResult {
  AsymptoticKind kind = AsymptoticKind::bounded;
  double coefficient_or_bound = 0.0;
};

/// Limiting behavior of the closed-form SNR in one variable. Growth
/// coefficients and bounds are the exact leading-order terms of the closed
/// forms.
inline AsymptoticResult asymptotic_snr(const AsymptoticQuery& q, const PowerConfig& cfg,
                                       const PathGains& g, const ElementSplit& split) {
  if (q.variable == SweepVariable::n_elements && !(q.epsilon > 0.0 && q.epsilon < 1.0))
    throw std::domain_error("asymptotic_snr: epsilon must lie in (0,1)");
  AsymptoticResult r;
  const double eps = q.epsilon;
  const double np = split.n_p, na = split.n_a;
  switch (q.scheme) {
    case Scheme::bhu:
      switch (q.variable) {
        case SweepVariable::n_elements:
          r.kind = AsymptoticKind::quadratic_in_var;
          r.coefficient_or_bound =
              cfg.p_b * g.beta_bi_sq * g.beta_iu_sq * eps * eps *
              (cfg.p_b * g.beta_bi_sq + cfg.sigma_r_sq) /
              (cfg.sigma_r_sq * cfg.p_i * g.beta_iu_sq + cfg.sigma0_sq * cfg.p_b * g.beta_bi_sq +
               cfg.sigma0_sq * cfg.sigma_r_sq);
          break;
        case SweepVariable::p_b:
          r.kind = AsymptoticKind::linear_in_var;
          r.coefficient_or_bound = g.beta_bi_sq * g.beta_iu_sq * np * np / cfg.sigma0_sq;
          break;
        case SweepVariable::p_i:
          r.kind = AsymptoticKind::bounded;
          r.coefficient_or_bound = cfg.p_b * g.beta_bi_sq * na / cfg.sigma_r_sq;
          break;
      }
      break;
    case Scheme::bapu:
      switch (q.variable) {
        case SweepVariable::n_elements:
          r.kind = AsymptoticKind::linear_in_var;
          r.coefficient_or_bound = cfg.p_b * g.beta_b_sq * (1.0 - eps) / cfg.sigma_r_sq;
          break;
        case SweepVariable::p_b:
          r.kind = AsymptoticKind::bounded;
          r.coefficient_or_bound =
              g.beta_u_sq * g.beta_i_sq * na * np * np * cfg.p_i / cfg.sigma0_sq;
          break;
        case SweepVariable::p_i:
          r.kind = AsymptoticKind::bounded;
          r.coefficient_or_bound = g.beta_b_sq * na * cfg.p_b / cfg.sigma_r_sq;
          break;
      }
      break;
    case Scheme::bpau:
      switch (q.variable) {
        case SweepVariable::n_elements:
          r.kind = AsymptoticKind::linear_in_var;
          r.coefficient_or_bound = g.beta_u_sq * (1.0 - eps) * cfg.p_i / cfg.sigma0_sq;
          break;
        case SweepVariable::p_b:
          r.kind = AsymptoticKind::bounded;
          r.coefficient_or_bound = g.beta_u_sq * na * cfg.p_i / cfg.sigma0_sq;
          break;
        case SweepVariable::p_i:
          r.kind = AsymptoticKind::bounded;
          r.coefficient_or_bound = cfg.p_b * g.beta_i_sq * g.beta_b_sq * na * np * np /
                                   cfg.sigma_r_sq;
          break;
      }
      break;
  }
  return r;
}

enum class AllocationPolicy { fixed_eps, optimized_allocation };

struct SlopeFit {
  double slope = 0.0;
  double residual = 0.0;  // rms residual of the log-log fit
  bool power_law = false;
  std::vector<double> values;      // swept variable
  std::vector<double> snr_values;  // matching SNRs
};

namespace detail {

inline SlopeFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  SlopeFit fit;
  const double dn = static_cast<double>(n);
  fit.slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
  const double intercept = (sy - fit.slope * sx) / dn;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (intercept + fit.slope * lx[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / dn);
  fit.power_law = fit.residual <= 0.02;
  fit.values = xs;
  fit.snr_values = ys;
  return fit;
}

}  // namespace detail

/// Log-log least-squares fit over explicit samples (used to re-fit subranges
/// such as the top decade of a sweep).
inline SlopeFit fit_power_law(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::domain_error("fit_power_law: need matching samples, at least two");
  return detail::fit_loglog(xs, ys);
}

/// Least-squares slope of log(SNR) against the log of the swept variable
/// over log-spaced points. For element-count sweeps the split follows the
/// policy: a fixed passive fraction, or the rounded allocation optimum per
/// point.
inline SlopeFit estimate_scaling_order(Scheme scheme, SweepVariable variable,
                                       const PowerConfig& cfg, const PathGains& g,
                                       const ElementSplit& split, double eps, double lo,
                                       double hi, AllocationPolicy policy,
                                       int points = 20) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::domain_error("estimate_scaling_order: bad range");
  if (hi / lo < 100.0)
    throw std::domain_error("estimate_scaling_order: range must span at least two decades");
  std::vector<double> xs(static_cast<std::size_t>(points)), ys(static_cast<std::size_t>(points));
  const double step = std::log(hi / lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double v = lo * std::exp(step * i);
    xs[static_cast<std::size_t>(i)] = v;
    double snr = 0.0;
    switch (variable) {
      case SweepVariable::n_elements: {
        if (policy == AllocationPolicy::fixed_eps) {
          snr = snr_core(scheme, cfg, g, eps * v, (1.0 - eps) * v);
        } else {
          const int n = std::max(2, static_cast<int>(std::llround(v)));
          const ElementSplit s = optimal_split_rounded(scheme, cfg, g, n);
          snr = snr_core(scheme, cfg, g, s.n_p, s.n_a);
        }
        break;
      }
      case SweepVariable::p_b: {
        PowerConfig c2 = cfg;
        c2.p_b = v;
        snr = snr_core(scheme, c2, g, split.n_p, split.n_a);
        break;
      }
      case SweepVariable::p_i: {
        PowerConfig c2 = cfg;
        c2.p_i = v;
        snr = snr_core(scheme, c2, g, split.n_p, split.n_a);
        break;
      }
    }
    ys[static_cast<std::size_t>(i)] = snr;
  }
  return detail::fit_loglog(xs, ys);
}

struct LargePiRateRatios {
  double r0_over_r1 = 0.0;
  double r0_over_r2 = 0.0;
};

/// Rate-ratio limits in the large amplification-power regime.
inline LargePiRateRatios large_pi_rate_ratio(const PowerConfig& cfg, const PathGains& g,
                                             const ElementSplit& split) {
  const double na = split.n_a, np = split.n_p;
  const double r0 = std::log2(1.0 + cfg.p_b * g.beta_bi_sq * na / cfg.sigma_r_sq);
  const double r1 = std::log2(1.0 + cfg.p_b * g.beta_b_sq * na / cfg.sigma_r_sq);
  const double r2 =
      std::log2(1.0 + cfg.p_b * g.beta_b_sq * g.beta_i_sq * na * np * np / cfg.sigma_r_sq);
  return {r0 / r1, r0 / r2};
}

}  // namespace irsdeploy
