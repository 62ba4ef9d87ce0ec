#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "irsdeploy/model.hpp"
#include "irsdeploy/units.hpp"

namespace irsdeploy {

/// Scalar constants shared by the allocation/placement closed forms. Fields
/// that do not apply to the scheme an instance was derived for stay zero:
/// c1, c2 come from the single-surface SNR, c3/c4 and c7/c8 from the two
/// deployment orders of the double-surface SNR, c6 is the common
/// double-surface numerator factor, c9/c10 are the noise-power products.
struct DerivedConstants {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double c6 = 0.0;
  double c7 = 0.0;
  double c8 = 0.0;
  double c9 = 0.0;
  double c10 = 0.0;
};

inline DerivedConstants derived_constants(Scheme scheme, const PowerConfig& cfg,
                                          const PathGains& g) {
  DerivedConstants c;
  c.c9 = cfg.sigma0_sq * cfg.p_b;
  c.c10 = cfg.sigma_r_sq * cfg.p_i;
  if (scheme == Scheme::bhu) {
    const double den = cfg.sigma_r_sq * cfg.p_i * g.beta_iu_sq +
                       cfg.sigma0_sq * cfg.p_b * g.beta_bi_sq + cfg.sigma0_sq * cfg.sigma_r_sq;
    c.c1 = cfg.p_b * g.beta_bi_sq * g.beta_iu_sq * (cfg.p_b * g.beta_bi_sq + cfg.sigma_r_sq) / den;
    c.c2 = std::sqrt(cfg.p_i / (cfg.p_b * g.beta_bi_sq + cfg.sigma_r_sq));
  } else {
    c.c6 = g.beta_b_sq * g.beta_i_sq * g.beta_u_sq * cfg.p_i * cfg.p_b;
    c.c3 = cfg.sigma_r_sq * g.beta_u_sq * g.beta_i_sq * cfg.p_i;
    c.c4 = cfg.sigma0_sq * cfg.p_b * g.beta_b_sq + cfg.sigma0_sq * cfg.sigma_r_sq;
    c.c7 = cfg.sigma0_sq * cfg.p_b * g.beta_i_sq * g.beta_b_sq;
    c.c8 = cfg.sigma_r_sq * g.beta_u_sq * cfg.p_i + cfg.sigma0_sq * cfg.sigma_r_sq;
  }
  return c;
}

// Closed-form SNR cores over real-valued element counts. The relaxed
// allocation machinery and the integer evaluators share these.

inline double snr_bhu(const PowerConfig& cfg, const PathGains& g, double n_p, double n_a) {
  const double boost = cfg.p_b * g.beta_bi_sq + cfg.sigma_r_sq;
  const double s = std::sqrt(n_a * cfg.p_i) + std::sqrt(n_p * n_p * boost);
  const double num = cfg.p_b * g.beta_bi_sq * g.beta_iu_sq * s * s;
  const double den = cfg.sigma_r_sq * cfg.p_i * g.beta_iu_sq +
                     cfg.sigma0_sq * cfg.p_b * g.beta_bi_sq + cfg.sigma0_sq * cfg.sigma_r_sq;
  return num / den;
}

inline double snr_bapu(const PowerConfig& cfg, const PathGains& g, double n_p, double n_a) {
  const double num = g.beta_b_sq * g.beta_i_sq * g.beta_u_sq * cfg.p_i * cfg.p_b * n_a * n_p * n_p;
  const double den = cfg.sigma_r_sq * g.beta_u_sq * g.beta_i_sq * cfg.p_i * n_p * n_p +
                     cfg.sigma0_sq * cfg.p_b * g.beta_b_sq + cfg.sigma0_sq * cfg.sigma_r_sq;
  return num / den;
}

inline double snr_bpau(const PowerConfig& cfg, const PathGains& g, double n_p, double n_a) {
  const double num = g.beta_b_sq * g.beta_i_sq * g.beta_u_sq * cfg.p_i * cfg.p_b * n_a * n_p * n_p;
  const double den = cfg.sigma0_sq * cfg.p_b * g.beta_i_sq * g.beta_b_sq * n_p * n_p +
                     cfg.sigma_r_sq * g.beta_u_sq * cfg.p_i + cfg.sigma0_sq * cfg.sigma_r_sq;
  return num / den;
}

inline double snr_core(Scheme scheme, const PowerConfig& cfg, const PathGains& g, double n_p,
                       double n_a) {
  switch (scheme) {
    case Scheme::bhu: return snr_bhu(cfg, g, n_p, n_a);
    case Scheme::bapu: return snr_bapu(cfg, g, n_p, n_a);
    case Scheme::bpau: return snr_bpau(cfg, g, n_p, n_a);
  }
  return 0.0;
}

/// Common amplification factor that spends the power budget with equality.
/// Reports a constraint violation if a configured per-element cap is exceeded.
inline double amp_factor(Scheme scheme, const PowerConfig& cfg, const PathGains& g,
                         const ElementSplit& split) {
  if (split.n_a < 1) throw std::domain_error("amp_factor: n_a must be >= 1");
  double incident = 0.0;
  switch (scheme) {
    case Scheme::bhu: incident = cfg.p_b * g.beta_bi_sq; break;
    case Scheme::bapu: incident = cfg.p_b * g.beta_b_sq; break;
    case Scheme::bpau:
      incident = cfg.p_b * g.beta_i_sq * g.beta_b_sq * static_cast<double>(split.n_p) *
                 static_cast<double>(split.n_p);
      break;
  }
  const double alpha = std::sqrt(cfg.p_i / (split.n_a * (incident + cfg.sigma_r_sq)));
  if (cfg.alpha_max && alpha > *cfg.alpha_max)
    throw std::domain_error("amp_factor: amplification factor exceeds alpha_max");
  return alpha;
}

struct EvalResult {
  Scheme scheme = Scheme::bhu;
  double snr = 0.0;
  double rate = 0.0;
  double alpha = 0.0;
  DerivedConstants constants{};
};

inline EvalResult snr_closed_form(Scheme scheme, const PowerConfig& cfg, const PathGains& g,
                                  const ElementSplit& split) {
  EvalResult r;
  r.scheme = scheme;
  r.alpha = amp_factor(scheme, cfg, g, split);
  r.snr = snr_core(scheme, cfg, g, split.n_p, split.n_a);
  r.rate = rate_from_snr(r.snr);
  r.constants = derived_constants(scheme, cfg, g);
  return r;
}

/// Budget check under which a shared amplitude cap stays inactive for all
/// three schemes. Needs the full five-link gain set.
struct FavorableReport {
  bool ok = false;
  double margin = 0.0;  // p_i over the binding bound
  double bound = 0.0;
};

inline FavorableReport check_favorable_power(const PowerConfig& cfg, const PathGains& g,
                                             int n_total) {
  if (n_total < 2) throw std::domain_error("check_favorable_power: n_total must be >= 2");
  const double nm1 = n_total - 1;
  const double b0 = nm1 * (cfg.p_b * g.beta_bi_sq + cfg.sigma_r_sq);
  const double b1 = nm1 * (cfg.p_b * g.beta_b_sq + cfg.sigma_r_sq);
  const double b2 = nm1 * (cfg.p_b * g.beta_i_sq * g.beta_b_sq + cfg.sigma_r_sq);
  FavorableReport rep;
  rep.bound = std::min(b0, std::min(b1, b2));
  rep.margin = cfg.p_i / rep.bound;
  rep.ok = cfg.p_i <= rep.bound;
  return rep;
}

/// Pairwise ratio gamma_a / gamma_b at a fixed configuration. For the
/// BAPU-vs-BPAU pair with shared gains the sign predicate
/// (P_I b_u^2 s_r^2 - P_B b_b^2 s_0^2)(1 - n_p^2 b_i^2) is also evaluated
/// and checked against the ratio.
struct PairComparison {
  double ratio = 1.0;
  Scheme winner = Scheme::bhu;
  bool predicate_applicable = false;
  double predicate = 0.0;
  bool predicate_consistent = true;
};

inline PairComparison compare_pair(Scheme a, Scheme b, const PowerConfig& cfg,
                                   const PathGains& gains_a, const PathGains& gains_b,
                                   const ElementSplit& split) {
  const double ga = snr_core(a, cfg, gains_a, split.n_p, split.n_a);
  const double gb = snr_core(b, cfg, gains_b, split.n_p, split.n_a);
  PairComparison out;
  out.ratio = ga / gb;
  out.winner = ga >= gb ? a : b;
  const bool ap_pa_pair = (a == Scheme::bapu && b == Scheme::bpau) ||
                          (a == Scheme::bpau && b == Scheme::bapu);
  const bool same_gains = gains_a.beta_b_sq == gains_b.beta_b_sq &&
                          gains_a.beta_i_sq == gains_b.beta_i_sq &&
                          gains_a.beta_u_sq == gains_b.beta_u_sq;
  if (ap_pa_pair && same_gains) {
    out.predicate_applicable = true;
    const double np2 = static_cast<double>(split.n_p) * split.n_p;
    double pred = (cfg.p_i * gains_a.beta_u_sq * cfg.sigma_r_sq -
                   cfg.p_b * gains_a.beta_b_sq * cfg.sigma0_sq) *
                  (1.0 - np2 * gains_a.beta_i_sq);
    if (a == Scheme::bpau) pred = -pred;  // predicate states when BAPU wins
    out.predicate = pred;
    const double tol = 1e-12;
    if (pred > 0.0)
      out.predicate_consistent = out.ratio >= 1.0 - tol;
    else if (pred < 0.0)
      out.predicate_consistent = out.ratio <= 1.0 + tol;
    else
      out.predicate_consistent = std::fabs(out.ratio - 1.0) <= tol;
  }
  return out;
}

}  // namespace irsdeploy
