#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include "irsdeploy/parallel.hpp"
#include "irsdeploy/snr.hpp"

namespace irsdeploy {

/// Unique positive root of g(x) = -c_cub x^3 - 3 c_lin x + 2 N c_lin.
///
/// g is strictly decreasing with g(0) > 0 > g(N), and the root always lies in
/// (0, 2N/3]. Solved by the depressed-cubic closed form, then polished with
/// bisection to remove the cancellation the closed form suffers when the
/// cubic term is tiny.
inline double solve_allocation_cubic(double c_cub, double c_lin, double n_total) {
  if (c_cub < 0.0 || !(c_lin > 0.0) || !(n_total >= 1.0))
    throw std::domain_error("solve_allocation_cubic: need c_cub >= 0, c_lin > 0, N >= 1");
  const double hi0 = 2.0 * n_total / 3.0;
  if (c_cub == 0.0) return hi0;

  // x^3 + p x + q = 0 with p > 0, q < 0: single real root.
  const double p = 3.0 * c_lin / c_cub;
  const double q = -2.0 * n_total * c_lin / c_cub;
  const double disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  const double u = std::cbrt(-q / 2.0 + disc);
  double root = u != 0.0 ? u - p / (3.0 * u) : 0.0;

  auto g = [&](double x) { return -c_cub * x * x * x - 3.0 * c_lin * x + 2.0 * n_total * c_lin; };
  double lo = 0.0, hi = hi0;
  if (root > lo && root < hi) {
    if (g(root) > 0.0)
      lo = root;
    else
      hi = root;
  }
  // bisect to adjacent doubles; the closed form only seeds the bracket
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

/// Threshold on N below which the single-surface optimum keeps one passive
/// element and makes everything else active.
inline double bhu_active_threshold(const PowerConfig& cfg, const PathGains& g) {
  return cfg.p_i / (4.0 * cfg.p_b * g.beta_bi_sq + 4.0 * cfg.sigma_r_sq);
}

inline RelaxedSplit optimal_split_bhu(const PowerConfig& cfg, const PathGains& g, int n_total) {
  if (n_total < 2) throw std::domain_error("optimal_split_bhu: n_total must be >= 2");
  const double thr = bhu_active_threshold(cfg, g);
  RelaxedSplit s;
  if (static_cast<double>(n_total) <= thr) {
    s.n_a = n_total - 1.0;
    s.n_p = 1.0;
  } else {
    s.n_a = thr;
    s.n_p = n_total - thr;
  }
  return s;
}

inline RelaxedSplit optimal_split_bapu(const PowerConfig& cfg, const PathGains& g, int n_total) {
  if (n_total < 2) throw std::domain_error("optimal_split_bapu: n_total must be >= 2");
  const DerivedConstants c = derived_constants(Scheme::bapu, cfg, g);
  RelaxedSplit s;
  s.n_p = solve_allocation_cubic(c.c3, c.c4, n_total);
  s.n_a = n_total - s.n_p;
  return s;
}

inline RelaxedSplit optimal_split_bpau(const PowerConfig& cfg, const PathGains& g, int n_total) {
  if (n_total < 2) throw std::domain_error("optimal_split_bpau: n_total must be >= 2");
  const DerivedConstants c = derived_constants(Scheme::bpau, cfg, g);
  RelaxedSplit s;
  s.n_p = solve_allocation_cubic(c.c7, c.c8, n_total);
  s.n_a = n_total - s.n_p;
  return s;
}

inline RelaxedSplit optimal_split(Scheme scheme, const PowerConfig& cfg, const PathGains& g,
                                  int n_total) {
  switch (scheme) {
    case Scheme::bhu: return optimal_split_bhu(cfg, g, n_total);
    case Scheme::bapu: return optimal_split_bapu(cfg, g, n_total);
    case Scheme::bpau: return optimal_split_bpau(cfg, g, n_total);
  }
  throw std::domain_error("optimal_split: unknown scheme");
}

/// Integer reconstruction: evaluate the SNR at the floor/ceil neighbors of
/// the relaxed passive count (clipped to keep both counts >= 1) and keep the
/// maximizer; ties go to the smaller passive count.
template <typename SnrFn>
ElementSplit round_split(const RelaxedSplit& relaxed, int n_total, SnrFn&& snr_fn) {
  if (n_total < 2) throw std::domain_error("round_split: n_total must be >= 2");
  auto clip = [n_total](double v) {
    int c = static_cast<int>(v);
    return std::max(1, std::min(n_total - 1, c));
  };
  std::set<int> candidates{clip(std::floor(relaxed.n_p)), clip(std::ceil(relaxed.n_p))};
  int best_np = 0;
  double best = -1.0;
  for (int np : candidates) {
    const double v = snr_fn(ElementSplit(np, n_total - np));
    if (v > best) {
      best = v;
      best_np = np;
    }
  }
  return ElementSplit(best_np, n_total - best_np);
}

inline ElementSplit round_split(Scheme scheme, const RelaxedSplit& relaxed, const PowerConfig& cfg,
                                const PathGains& g, int n_total) {
  return round_split(relaxed, n_total, [&](const ElementSplit& s) {
    return snr_core(scheme, cfg, g, s.n_p, s.n_a);
  });
}

/// Relaxed optimum rounded to the best integer neighbor.
inline ElementSplit optimal_split_rounded(Scheme scheme, const PowerConfig& cfg,
                                          const PathGains& g, int n_total) {
  return round_split(scheme, optimal_split(scheme, cfg, g, n_total), cfg, g, n_total);
}

/// One-dimensional scan over every feasible split; ties resolve to the
/// smaller passive count independent of the worker count.
inline ElementSplit exhaustive_split(Scheme scheme, const PowerConfig& cfg, const PathGains& g,
                                     int n_total) {
  if (n_total < 2) throw std::domain_error("exhaustive_split: n_total must be >= 2");
  const std::size_t count = static_cast<std::size_t>(n_total - 1);
  BestIndex best = parallel_argmax(count, [&](std::size_t i) {
    const double np = static_cast<double>(i + 1);
    return snr_core(scheme, cfg, g, np, n_total - np);
  });
  const int np = static_cast<int>(best.index) + 1;
  return ElementSplit(np, n_total - np);
}

/// Single-surface SNR at the relaxed allocation optimum, in the piecewise
/// closed form.
inline double snr_opt_allocation_bhu(const PowerConfig& cfg, const PathGains& g, int n_total) {
  if (n_total < 2) throw std::domain_error("snr_opt_allocation_bhu: n_total must be >= 2");
  const DerivedConstants c = derived_constants(Scheme::bhu, cfg, g);
  const double thr = bhu_active_threshold(cfg, g);
  if (static_cast<double>(n_total) <= thr) {
    const double s = c.c2 * std::sqrt(n_total - 1.0) + 1.0;
    return c.c1 * s * s;
  }
  const double s = c.c2 * c.c2 / 4.0 + n_total;
  return c.c1 * s * s;
}

/// Cubic-law approximation of the allocated double-surface SNR, valid when
/// the saturation term is negligible at n_p = 2N/3. The regime ratio is
/// reported so callers can judge validity themselves.
struct ApproxAllocation {
  double snr = 0.0;
  double regime_ratio = 0.0;  // c3 (2N/3)^2 / c4 (or c7/c8 analogue)
  bool valid = false;
};

inline ApproxAllocation approx_snr_opt_allocation(Scheme scheme, const PowerConfig& cfg,
                                                  const PathGains& g, int n_total,
                                                  double regime_threshold = 0.01) {
  if (scheme == Scheme::bhu)
    throw std::domain_error("approx_snr_opt_allocation: double-surface schemes only");
  const DerivedConstants c = derived_constants(scheme, cfg, g);
  const double c_cub = scheme == Scheme::bapu ? c.c3 : c.c7;
  const double c_lin = scheme == Scheme::bapu ? c.c4 : c.c8;
  const double n = n_total;
  ApproxAllocation out;
  out.snr = 4.0 * c.c6 * n * n * n / (27.0 * c_lin);
  const double np = 2.0 * n / 3.0;
  out.regime_ratio = c_cub * np * np / c_lin;
  out.valid = out.regime_ratio <= regime_threshold;
  return out;
}

/// Allocation-level scheme comparison: the sufficient distance conditions
/// from the approximate analysis plus the authoritative direct rates at the
/// approximated allocation optima.
struct AllocationComparison {
  Scheme best = Scheme::bhu;       // argmax of the direct rates
  double rate_bhu = 0.0;
  double rate_bapu = 0.0;
  double rate_bpau = 0.0;
  bool small_n_branch = false;     // which piece of the single-surface optimum applies
  bool cond_bhu = false;           // distance predicates (advisory)
  bool cond_bapu = false;
  bool cond_bpau = false;
  bool predicates_agree = false;   // argmax scheme's predicate fired
};

inline AllocationComparison best_scheme_by_allocation(const PowerConfig& cfg,
                                                      const PathGains& gains_bhu,
                                                      const PathGains& gains_double,
                                                      int n_total) {
  AllocationComparison out;
  const DerivedConstants ch = derived_constants(Scheme::bhu, cfg, gains_bhu);
  const DerivedConstants cd = derived_constants(Scheme::bapu, cfg, gains_double);
  const DerivedConstants cd2 = derived_constants(Scheme::bpau, cfg, gains_double);
  const double n = n_total;

  out.rate_bhu = rate_from_snr(snr_opt_allocation_bhu(cfg, gains_bhu, n_total));
  out.rate_bapu = rate_from_snr(4.0 * cd.c6 * n * n * n / (27.0 * cd.c4));
  out.rate_bpau = rate_from_snr(4.0 * cd.c6 * n * n * n / (27.0 * cd2.c8));
  out.best = Scheme::bhu;
  double best_rate = out.rate_bhu;
  if (out.rate_bapu > best_rate) {
    out.best = Scheme::bapu;
    best_rate = out.rate_bapu;
  }
  if (out.rate_bpau > best_rate) out.best = Scheme::bpau;

  // Distance predicates; they assume the square-law loss model, so distances
  // are recovered from the gains via d^2 = beta_ref / gain.
  const double beta = cfg.beta_ref;
  const double d_iu_sq = beta / gains_bhu.beta_iu_sq;
  const double d_b_sq = beta / gains_double.beta_b_sq;
  const double d_u_sq = beta / gains_double.beta_u_sq;
  out.small_n_branch = n <= bhu_active_threshold(cfg, gains_bhu);
  const double s = out.small_n_branch ? ch.c2 * std::sqrt(n - 1.0) + 1.0
                                      : ch.c2 * ch.c2 / 4.0 + n;
  const double common = s * s;
  const double n3 = n * n * n;
  const double bhu_bound =
      27.0 * beta * gains_bhu.beta_bi_sq * cfg.p_b * common / (4.0 * cd.c6 * n3 * cfg.sigma0_sq);
  out.cond_bhu = d_iu_sq < std::min(bhu_bound * cd.c4 - beta * ch.c2 * ch.c2 * cfg.sigma_r_sq,
                                    bhu_bound * cd2.c8 - beta * ch.c2 * ch.c2 * cfg.sigma_r_sq);
  out.cond_bapu =
      d_u_sq < std::min(cfg.sigma_r_sq * cfg.p_i * d_b_sq / (cfg.sigma0_sq * cfg.p_b),
                        4.0 * beta * gains_double.beta_i_sq * gains_double.beta_b_sq * cfg.p_i *
                            cfg.p_b * n3 / (27.0 * ch.c1 * cd.c4 * common));
  out.cond_bpau =
      d_b_sq < std::min(cfg.sigma0_sq * cfg.p_b * d_u_sq / (cfg.sigma_r_sq * cfg.p_i),
                        4.0 * beta * gains_double.beta_i_sq * gains_double.beta_u_sq * cfg.p_i *
                            cfg.p_b * n3 / (27.0 * ch.c1 * cd2.c8 * common));
  switch (out.best) {
    case Scheme::bhu: out.predicates_agree = out.cond_bhu; break;
    case Scheme::bapu: out.predicates_agree = out.cond_bapu; break;
    case Scheme::bpau: out.predicates_agree = out.cond_bpau; break;
  }
  return out;
}

}  // namespace irsdeploy
