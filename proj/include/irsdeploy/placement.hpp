#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "irsdeploy/allocation.hpp"
#include "irsdeploy/parallel.hpp"
#include "irsdeploy/snr.hpp"

namespace irsdeploy {

struct PlacementSolution {
  Scheme scheme = Scheme::bhu;
  double x_star = 0.0;      // x_BI (single surface), x_B (BAPU), x_U (BPAU)
  double snr_approx = 0.0;  // high-SNR approximated objective at x_star
  double snr_true = 0.0;    // exact closed form at the resulting geometry
};

namespace detail {

inline double clamp_unit_interval(double x, double length) {
  return std::min(std::max(x, 0.0), length);
}

/// Exact SNR at a single-surface position; NaN where the model is invalid.
inline double snr_bhu_at(const PowerConfig& cfg, double x, double length, double h_s,
                         const ElementSplit& split) {
  SingleIrsGeometry geom;
  geom.length = length;
  geom.x_bi = x;
  geom.height = h_s;
  try {
    return snr_bhu(cfg, gains_from_geometry(geom, cfg), split.n_p, split.n_a);
  } catch (const std::domain_error&) {
    return std::nan("");
  }
}

/// Exact SNR at a two-surface position; NaN where the model is invalid.
inline double snr_double_at(Scheme scheme, const PowerConfig& cfg, double x_b, double x_u,
                            double length, double h_d, const ElementSplit& split) {
  DoubleIrsGeometry geom;
  geom.length = length;
  geom.x_b = x_b;
  geom.x_u = x_u;
  geom.height = h_d;
  try {
    const PathGains g = gains_from_geometry(geom, cfg);
    return snr_core(scheme, cfg, g, split.n_p, split.n_a);
  } catch (const std::domain_error&) {
    return std::nan("");
  }
}

}  // namespace detail

/// Approximated single-surface placement objective (denominator dominance
/// assumption applied to the exact closed form).
inline double snr_bhu_placement_objective(const PowerConfig& cfg, double x, double length,
                                          double h_s, double n_p, double n_a) {
  const double beta = cfg.beta_ref;
  const double d_bi_sq = x * x + h_s * h_s;
  const double d_iu_sq = (length - x) * (length - x) + h_s * h_s;
  const double s = std::sqrt(n_a * cfg.p_i) + std::sqrt(n_p * n_p * cfg.p_b * beta / d_bi_sq);
  return cfg.p_b * beta * s * s /
         (cfg.sigma_r_sq * cfg.p_i * d_bi_sq + cfg.sigma0_sq * cfg.p_b * d_iu_sq);
}

/// Single-surface position balancing signal and noise amplification.
inline PlacementSolution place_bhu(const PowerConfig& cfg, const ElementSplit& split,
                                   double length, double h_s) {
  if (!(length >= 0.0)) throw std::domain_error("place_bhu: length must be >= 0");
  const double c9 = cfg.sigma0_sq * cfg.p_b;
  const double c10 = cfg.sigma_r_sq * cfg.p_i;
  PlacementSolution sol;
  sol.scheme = Scheme::bhu;
  sol.x_star = detail::clamp_unit_interval(c9 * length / (c9 + c10), length);
  const double beta = cfg.beta_ref;
  const double n_p = split.n_p, n_a = split.n_a;
  const double sum = c9 + c10;
  const double inner = n_p * n_p * cfg.p_b * beta * sum * sum /
                       (c9 * c9 * length * length + h_s * h_s * sum * sum);
  const double s = std::sqrt(n_a * cfg.p_i) + std::sqrt(inner);
  sol.snr_approx =
      sum * cfg.p_b * beta * s * s / (h_s * h_s * sum * sum + c9 * c10 * length * length);
  sol.snr_true = detail::snr_bhu_at(cfg, sol.x_star, length, h_s, split);
  return sol;
}

/// AIRS position with the PIRS anchored above the user.
inline PlacementSolution place_bapu(const PowerConfig& cfg, const ElementSplit& split,
                                    double length, double h_d) {
  if (!(length > 0.0)) throw std::domain_error("place_bapu: length must be > 0");
  const double c9 = cfg.sigma0_sq * cfg.p_b;
  const double c10 = cfg.sigma_r_sq * cfg.p_i;
  const double beta = cfg.beta_ref;
  const double np2 = static_cast<double>(split.n_p) * split.n_p;
  PlacementSolution sol;
  sol.scheme = Scheme::bapu;
  sol.x_star =
      detail::clamp_unit_interval(length * c9 * h_d * h_d / (beta * c10 * np2 + c9 * h_d * h_d),
                                  length);
  sol.snr_approx = beta * cfg.p_b * split.n_a * (beta * c10 * np2 + c9 * h_d * h_d) /
                   (cfg.sigma_r_sq * h_d * h_d * (beta * c10 * np2 + c9 * length * length));
  sol.snr_true = detail::snr_double_at(Scheme::bapu, cfg, sol.x_star, 0.0, length, h_d, split);
  return sol;
}

/// AIRS position with the PIRS anchored above the BS.
inline PlacementSolution place_bpau(const PowerConfig& cfg, const ElementSplit& split,
                                    double length, double h_d) {
  if (!(length > 0.0)) throw std::domain_error("place_bpau: length must be > 0");
  const double c9 = cfg.sigma0_sq * cfg.p_b;
  const double c10 = cfg.sigma_r_sq * cfg.p_i;
  const double beta = cfg.beta_ref;
  const double np2 = static_cast<double>(split.n_p) * split.n_p;
  PlacementSolution sol;
  sol.scheme = Scheme::bpau;
  sol.x_star =
      detail::clamp_unit_interval(length * c10 * h_d * h_d / (beta * c9 * np2 + c10 * h_d * h_d),
                                  length);
  sol.snr_approx = beta * cfg.p_i * split.n_a * (beta * c9 * np2 + c10 * h_d * h_d) /
                   (cfg.sigma0_sq * h_d * h_d * (beta * c9 * np2 + c10 * length * length));
  sol.snr_true = detail::snr_double_at(Scheme::bpau, cfg, 0.0, sol.x_star, length, h_d, split);
  return sol;
}

inline PlacementSolution place_closed_form(Scheme scheme, const PowerConfig& cfg,
                                           const ElementSplit& split, double length, double h_s,
                                           double h_d) {
  switch (scheme) {
    case Scheme::bhu: return place_bhu(cfg, split, length, h_s);
    case Scheme::bapu: return place_bapu(cfg, split, length, h_d);
    case Scheme::bpau: return place_bpau(cfg, split, length, h_d);
  }
  throw std::domain_error("place_closed_form: unknown scheme");
}

/// Grid-search oracle over the exact closed-form SNR. The restricted result
/// scans the same one-coordinate manifold the closed forms use; for the
/// two-surface schemes the unrestricted result scans the whole
/// (x_B, x_U) simplex, excluding co-located surfaces.
struct GridPlacementResult {
  Scheme scheme = Scheme::bhu;
  double resolution = 0.0;
  double x_restricted = 0.0;
  double snr_restricted = 0.0;
  double x_b_unrestricted = 0.0;
  double x_u_unrestricted = 0.0;
  double snr_unrestricted = 0.0;
};

/// Argmax of the exact SNR on the scheme's one-coordinate manifold only.
struct LinePlacement {
  double x = 0.0;
  double snr = 0.0;
};

inline LinePlacement grid_argmax_restricted(Scheme scheme, const PowerConfig& cfg,
                                            const ElementSplit& split, double length, double h_s,
                                            double h_d, double resolution) {
  if (!(resolution > 0.0))
    throw std::domain_error("grid_argmax_restricted: resolution must be > 0");
  if (length == 0.0) {
    const double snr =
        scheme == Scheme::bhu ? detail::snr_bhu_at(cfg, 0.0, 0.0, h_s, split) : 0.0;
    return {0.0, snr};
  }
  const std::size_t steps = static_cast<std::size_t>(std::floor(length / resolution)) + 1;
  auto x_of = [&](std::size_t i) { return std::min(static_cast<double>(i) * resolution, length); };
  auto line_snr = [&](double x) {
    if (scheme == Scheme::bhu) return detail::snr_bhu_at(cfg, x, length, h_s, split);
    if (x >= length) return std::nan("");  // surfaces collapse at the far end
    return scheme == Scheme::bapu
               ? detail::snr_double_at(Scheme::bapu, cfg, x, 0.0, length, h_d, split)
               : detail::snr_double_at(Scheme::bpau, cfg, 0.0, x, length, h_d, split);
  };
  const BestIndex best = parallel_argmax(steps, [&](std::size_t i) { return line_snr(x_of(i)); });
  return {x_of(best.index), best.value};
}

inline GridPlacementResult grid_search_placement(Scheme scheme, const PowerConfig& cfg,
                                                 const ElementSplit& split, double length,
                                                 double h_s, double h_d, double resolution) {
  if (!(resolution > 0.0)) throw std::domain_error("grid_search_placement: resolution must be > 0");
  GridPlacementResult out;
  out.scheme = scheme;
  out.resolution = resolution;
  if (length == 0.0) {
    const double snr = scheme == Scheme::bhu
                           ? detail::snr_bhu_at(cfg, 0.0, 0.0, h_s, split)
                           : 0.0;  // degenerate two-surface layout has d_i = 0
    out.snr_restricted = out.snr_unrestricted = snr;
    return out;
  }

  const std::size_t steps = static_cast<std::size_t>(std::floor(length / resolution)) + 1;
  auto x_of = [&](std::size_t i) { return std::min(static_cast<double>(i) * resolution, length); };

  const LinePlacement line = grid_argmax_restricted(scheme, cfg, split, length, h_s, h_d,
                                                    resolution);
  out.x_restricted = line.x;
  out.snr_restricted = line.snr;
  if (scheme == Scheme::bhu) {
    out.x_b_unrestricted = out.x_restricted;
    out.snr_unrestricted = line.snr;
    return out;
  }

  // full simplex
  BestIndex simplex = parallel_argmax(steps, [&](std::size_t i) {
    const double xb = x_of(i);
    double best = std::nan("");
    for (std::size_t j = 0; j < steps; ++j) {
      const double xu = x_of(j);
      if (xb + xu >= length) break;
      const double v = detail::snr_double_at(scheme, cfg, xb, xu, length, h_d, split);
      if (!(v == v)) continue;
      if (!(best == best) || v > best) best = v;
    }
    return best;
  });
  const double xb = x_of(simplex.index);
  double best_xu = 0.0, best_v = -1.0;
  for (std::size_t j = 0; j < steps; ++j) {
    const double xu = x_of(j);
    if (xb + xu >= length) break;
    const double v = detail::snr_double_at(scheme, cfg, xb, xu, length, h_d, split);
    if (v > best_v) {
      best_v = v;
      best_xu = xu;
    }
  }
  out.x_b_unrestricted = xb;
  out.x_u_unrestricted = best_xu;
  out.snr_unrestricted = best_v;
  return out;
}

/// Margins of the denominator-dominance assumptions behind the placement
/// closed forms: remaining denominator over the dropped noise-product term.
inline double dominance_margin(Scheme scheme, const PowerConfig& cfg, const PathGains& g,
                               const ElementSplit& split) {
  const double cross = cfg.sigma0_sq * cfg.sigma_r_sq;
  switch (scheme) {
    case Scheme::bhu:
      return (cfg.sigma_r_sq * cfg.p_i * g.beta_iu_sq + cfg.sigma0_sq * cfg.p_b * g.beta_bi_sq) /
             cross;
    case Scheme::bapu: {
      const double np2 = static_cast<double>(split.n_p) * split.n_p;
      return (cfg.sigma_r_sq * cfg.p_i * g.beta_u_sq * g.beta_i_sq * np2 +
              cfg.sigma0_sq * cfg.p_b * g.beta_b_sq) /
             cross;
    }
    case Scheme::bpau: {
      const double np2 = static_cast<double>(split.n_p) * split.n_p;
      return (cfg.sigma0_sq * cfg.p_b * g.beta_i_sq * g.beta_b_sq * np2 +
              cfg.sigma_r_sq * cfg.p_i * g.beta_u_sq) /
             cross;
    }
  }
  return 0.0;
}

/// Transmit-power margin of the stated lower-bound condition. Distances are
/// recovered from the gains assuming the square-law model. Margins are
/// +infinity when the bound is non-positive.
inline double power_bound_margin(const PowerConfig& cfg, const PathGains& gains_bhu,
                                 const PathGains& gains_double, const ElementSplit& split) {
  const double beta = cfg.beta_ref;
  const double d_bi_sq = beta / gains_bhu.beta_bi_sq;
  const double d_iu_sq = beta / gains_bhu.beta_iu_sq;
  const double d_b_sq = beta / gains_double.beta_b_sq;
  const double d_i_sq = beta / gains_double.beta_i_sq;
  const double d_u_sq = beta / gains_double.beta_u_sq;
  const double np2 = static_cast<double>(split.n_p) * split.n_p;
  const double t1 = cfg.sigma_r_sq * d_bi_sq / beta -
                    cfg.sigma_r_sq * cfg.p_i * d_bi_sq / (cfg.sigma0_sq * d_iu_sq);
  const double t2 = d_b_sq * cfg.sigma_r_sq / beta -
                    cfg.sigma_r_sq * beta * d_b_sq * cfg.p_i * np2 /
                        (cfg.sigma0_sq * d_i_sq * d_u_sq);
  const double t3 = cfg.sigma_r_sq * d_i_sq * d_b_sq / (beta * beta * np2) -
                    cfg.sigma_r_sq * cfg.p_i * d_i_sq * d_b_sq /
                        (beta * cfg.sigma0_sq * np2 * d_u_sq);
  const double bound = std::max(t1, std::max(t2, t3));
  if (bound <= 0.0) return std::numeric_limits<double>::infinity();
  return cfg.p_b / bound;
}

struct PlacementAssumptions {
  double margin_bhu = 0.0;
  double margin_bapu = 0.0;
  double margin_bpau = 0.0;
  double power_margin = 0.0;
  double threshold = 100.0;
  bool valid = false;
};

/// Evaluates all dominance margins plus the transmit-power bound at the given
/// geometries. "valid" means every dominance ratio clears the threshold that
/// quantifies the strict-dominance assumption.
inline PlacementAssumptions check_placement_assumptions(const PowerConfig& cfg,
                                                        const SingleIrsGeometry& single_geom,
                                                        const DoubleIrsGeometry& double_geom,
                                                        const ElementSplit& split,
                                                        double threshold = 100.0) {
  const PathGains gs = gains_from_geometry(single_geom, cfg);
  const PathGains gd = gains_from_geometry(double_geom, cfg);
  PlacementAssumptions rep;
  rep.threshold = threshold;
  rep.margin_bhu = dominance_margin(Scheme::bhu, cfg, gs, split);
  rep.margin_bapu = dominance_margin(Scheme::bapu, cfg, gd, split);
  rep.margin_bpau = dominance_margin(Scheme::bpau, cfg, gd, split);
  rep.power_margin = power_bound_margin(cfg, gs, gd, split);
  rep.valid = rep.margin_bhu >= threshold && rep.margin_bapu >= threshold &&
              rep.margin_bpau >= threshold;
  return rep;
}

/// SNR ratios of the two-surface schemes to the single-surface scheme at the
/// closed-form placements, plus the sign condition for BAPU over BPAU.
struct PlacedComparison {
  double snr_bhu = 0.0;
  double snr_bapu = 0.0;
  double snr_bpau = 0.0;
  double ratio_bapu_bhu = 0.0;
  double ratio_bpau_bhu = 0.0;
  bool bapu_over_bpau_pred = false;
  Scheme winner = Scheme::bhu;
  double x_bhu = 0.0;
  double x_bapu = 0.0;
  double x_bpau = 0.0;
};

inline PlacedComparison compare_placed(const PowerConfig& cfg, const ElementSplit& split,
                                       double length, double h_s, double h_d) {
  const PlacementSolution p0 = place_bhu(cfg, split, length, h_s);
  const PlacementSolution p1 = place_bapu(cfg, split, length, h_d);
  const PlacementSolution p2 = place_bpau(cfg, split, length, h_d);
  PlacedComparison out;
  out.snr_bhu = p0.snr_approx;
  out.snr_bapu = p1.snr_approx;
  out.snr_bpau = p2.snr_approx;
  out.ratio_bapu_bhu = p1.snr_approx / p0.snr_approx;
  out.ratio_bpau_bhu = p2.snr_approx / p0.snr_approx;
  out.x_bhu = p0.x_star;
  out.x_bapu = p1.x_star;
  out.x_bpau = p2.x_star;
  const double c9 = cfg.sigma0_sq * cfg.p_b;
  const double c10 = cfg.sigma_r_sq * cfg.p_i;
  const double beta = cfg.beta_ref;
  const double np2 = static_cast<double>(split.n_p) * split.n_p;
  const double l2 = length * length;
  const double hd2 = h_d * h_d;
  out.bapu_over_bpau_pred =
      (c9 - c10) * (((beta * np2 - l2) * beta * np2 + (beta * np2 + l2) * hd2) * c9 * c10 +
                    (c9 * c9 + c10 * c10) * beta * np2 * hd2) >
      0.0;
  out.winner = Scheme::bhu;
  double best = p0.snr_approx;
  if (p1.snr_approx > best) {
    out.winner = Scheme::bapu;
    best = p1.snr_approx;
  }
  if (p2.snr_approx > best) out.winner = Scheme::bpau;
  return out;
}

/// Single-surface SNR after both placement and allocation: place first (the
/// position is split-independent), then allocate at the resulting gains.
inline double snr_bhu_joint(const PowerConfig& cfg, double length, double h_s, int n_total) {
  if (n_total < 2) throw std::domain_error("snr_bhu_joint: n_total must be >= 2");
  const double c9 = cfg.sigma0_sq * cfg.p_b;
  const double c10 = cfg.sigma_r_sq * cfg.p_i;
  const double x = detail::clamp_unit_interval(c9 * length / (c9 + c10), length);
  SingleIrsGeometry geom;
  geom.length = length;
  geom.x_bi = x;
  geom.height = h_s;
  const PathGains g = gains_from_geometry(geom, cfg);
  const ElementSplit split = optimal_split_rounded(Scheme::bhu, cfg, g, n_total);
  return snr_bhu(cfg, g, split.n_p, split.n_a);
}

}  // namespace irsdeploy
