#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace irsdeploy {

/// Deployment order of the reflecting surfaces between BS and user.
enum class Scheme { bhu, bapu, bpau };

inline const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::bhu: return "bhu";
    case Scheme::bapu: return "bapu";
    case Scheme::bpau: return "bpau";
  }
  return "?";
}

/// Per-link path-loss exponents. Link order: BS-HIRS, HIRS-user (single
/// surface); BS-IRS1, IRS1-IRS2, IRS2-user (double surface).
struct PathLossExponents {
  double bi = 2.0;
  double iu = 2.0;
  double b = 2.0;
  double i = 2.0;
  double u = 2.0;
};

/// Transmit/amplification power budget and noise levels, all linear units
/// (watts). beta_ref is the dimensionless squared path gain at 1 m.
struct PowerConfig {
  double p_b = 0.1;                              // BS transmit power (20 dBm)
  double p_i = std::pow(10.0, 0.8) * 1e-3;       // amplification budget (8 dBm)
  double sigma0_sq = 1e-11;                      // receiver noise power (-80 dBm)
  double sigma_r_sq = 1e-11;                     // amplification noise power
  double beta_ref = std::pow(10.0, -4.3);        // reference gain (-43 dB)
  PathLossExponents exponents{};
  std::optional<double> alpha_max{};  // per-element amplitude cap

  void validate() const {
    if (!(p_b > 0.0)) throw std::domain_error("PowerConfig: p_b must be > 0");
    if (!(p_i >= 0.0)) throw std::domain_error("PowerConfig: p_i must be >= 0");
    if (!(sigma0_sq > 0.0) || !(sigma_r_sq > 0.0))
      throw std::domain_error("PowerConfig: noise powers must be > 0");
    if (!(beta_ref > 0.0) || beta_ref > 1.0)
      throw std::domain_error("PowerConfig: beta_ref must lie in (0,1]");
    for (double e : {exponents.bi, exponents.iu, exponents.b, exponents.i, exponents.u})
      if (e < 1.0) throw std::domain_error("PowerConfig: exponents must be >= 1");
    if (alpha_max && !(*alpha_max > 0.0))
      throw std::domain_error("PowerConfig: alpha_max must be > 0");
  }
};

/// Squared path gain beta_ref / d^exponent at distance d (meters).
inline double path_gain(double d, double exponent, double beta_ref) {
  if (!(d > 0.0)) throw std::domain_error("path_gain: distance must be > 0");
  return beta_ref / std::pow(d, exponent);
}

/// Horizontal geometry of the single-surface deployment. Distances follow
/// from the coordinates unless explicitly overridden.
struct SingleIrsGeometry {
  double length = 90.0;  // BS-user horizontal separation L
  double x_bi = 0.0;     // BS -> surface horizontal distance
  double height = 10.0;  // surface height h_s
  std::optional<double> override_d_bi{};
  std::optional<double> override_d_iu{};

  double d_bi() const {
    if (override_d_bi) return *override_d_bi;
    return std::hypot(x_bi, height);
  }
  double d_iu() const {
    if (override_d_iu) return *override_d_iu;
    return std::hypot(length - x_bi, height);
  }
  void validate() const {
    if (!(length >= 0.0)) throw std::domain_error("SingleIrsGeometry: L must be >= 0");
    if (x_bi < 0.0 || x_bi > length)
      throw std::domain_error("SingleIrsGeometry: x_bi must lie in [0, L]");
    if (!(d_bi() > 0.0) || !(d_iu() > 0.0))
      throw std::domain_error("SingleIrsGeometry: link distances must be > 0");
  }
};

/// Horizontal geometry of the two-surface deployment. IRS 1 sits x_b from
/// the BS, IRS 2 sits x_u from the user, both at height h_d.
struct DoubleIrsGeometry {
  double length = 90.0;
  double x_b = 5.0;
  double x_u = 5.0;
  double height = 5.0;

  double d_b() const { return std::hypot(x_b, height); }
  double d_i() const { return length - x_b - x_u; }
  double d_u() const { return std::hypot(x_u, height); }
  void validate() const {
    if (x_b < 0.0 || x_u < 0.0)
      throw std::domain_error("DoubleIrsGeometry: coordinates must be >= 0");
    if (x_b + x_u > length)
      throw std::domain_error("DoubleIrsGeometry: x_b + x_u must not exceed L");
    if (!(d_i() > 0.0))
      throw std::domain_error("DoubleIrsGeometry: surfaces are co-located (d_i = 0)");
    if (!(d_b() > 0.0) || !(d_u() > 0.0))
      throw std::domain_error("DoubleIrsGeometry: link distances must be > 0");
  }
};

/// Role-tagged squared path gains. The single-surface links fill
/// {beta_bi_sq, beta_iu_sq}; the two-surface links fill
/// {beta_b_sq, beta_i_sq, beta_u_sq}. Unused fields stay zero.
struct PathGains {
  double beta_bi_sq = 0.0;
  double beta_iu_sq = 0.0;
  double beta_b_sq = 0.0;
  double beta_i_sq = 0.0;
  double beta_u_sq = 0.0;

  static PathGains single(double bi_sq, double iu_sq) {
    PathGains g;
    g.beta_bi_sq = bi_sq;
    g.beta_iu_sq = iu_sq;
    return g;
  }
  static PathGains double_irs(double b_sq, double i_sq, double u_sq) {
    PathGains g;
    g.beta_b_sq = b_sq;
    g.beta_i_sq = i_sq;
    g.beta_u_sq = u_sq;
    return g;
  }
};

namespace detail {
inline double checked_gain(double d, double exponent, double beta_ref) {
  const double g = path_gain(d, exponent, beta_ref);
  if (g > 1.0)
    throw std::domain_error("gains_from_geometry: link inside the reference distance (gain > 1)");
  return g;
}
}  // namespace detail

inline PathGains gains_from_geometry(const SingleIrsGeometry& geom, const PowerConfig& cfg) {
  geom.validate();
  return PathGains::single(detail::checked_gain(geom.d_bi(), cfg.exponents.bi, cfg.beta_ref),
                           detail::checked_gain(geom.d_iu(), cfg.exponents.iu, cfg.beta_ref));
}

inline PathGains gains_from_geometry(const DoubleIrsGeometry& geom, const PowerConfig& cfg) {
  geom.validate();
  return PathGains::double_irs(detail::checked_gain(geom.d_b(), cfg.exponents.b, cfg.beta_ref),
                               detail::checked_gain(geom.d_i(), cfg.exponents.i, cfg.beta_ref),
                               detail::checked_gain(geom.d_u(), cfg.exponents.u, cfg.beta_ref));
}

/// Integer split of the element budget: n_p passive + n_a active.
struct ElementSplit {
  int n_p = 1;
  int n_a = 1;

  ElementSplit() = default;
  ElementSplit(int np, int na) : n_p(np), n_a(na) {
    if (n_p < 1 || n_a < 1)
      throw std::domain_error("ElementSplit: both counts must be >= 1");
  }
  int total() const { return n_p + n_a; }
};

/// Continuous relaxation of ElementSplit.
struct RelaxedSplit {
  double n_p = 0.0;
  double n_a = 0.0;
  double total() const { return n_p + n_a; }
};

}  // namespace irsdeploy
