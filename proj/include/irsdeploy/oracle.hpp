#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "irsdeploy/model.hpp"
#include "irsdeploy/rng.hpp"
#include "irsdeploy/snr.hpp"
#include "irsdeploy/steering.hpp"

namespace irsdeploy {

// Explicit steering-vector channel construction with per-element phase
// alignment and the common amplification factor. Evaluates the raw SNR
// quotient of the vector model; agrees with snr_closed_form for any angle
// draw, which is what the property tests pin down.

namespace detail {

using cvec = std::vector<std::complex<double>>;

struct AngleDraw {
  double az;
  double el;
};

inline AngleDraw draw_angles(SplitMix64& rng) {
  return {rng.uniform(-M_PI / 2.0, M_PI / 2.0), rng.uniform(0.0, M_PI)};
}

inline cvec response(const AngleDraw& a, int n) {
  return steering_vector(a.az, a.el, ArrayLayout::linear(n));
}

inline cvec scale(const cvec& v, std::complex<double> s) {
  cvec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

/// sum_n conj(rx[n]) * e^{j phi[n]} * tx[n] with the aligning phases
/// phi[n] = arg(rx[n]) - arg(tx[n]).
inline std::complex<double> aligned_inner(const cvec& rx, const cvec& tx) {
  std::complex<double> acc = 0.0;
  for (size_t n = 0; n < rx.size(); ++n) {
    const double phi = std::arg(rx[n]) - std::arg(tx[n]);
    acc += std::conj(rx[n]) * std::polar(1.0, phi) * tx[n];
  }
  return acc;
}

/// squared row norm of (conj(rx[n]) * e^{j phi[n]})_n for the same phases.
inline double aligned_row_norm_sq(const cvec& rx) {
  double acc = 0.0;
  for (const auto& v : rx) acc += std::norm(v);
  return acc;
}

}  // namespace detail

/// Raw vector-model SNR for pseudo-random LoS angles derived from angle_seed.
/// The result is angle-invariant after alignment and must match the closed
/// form to machine precision.
inline double vector_snr_oracle(Scheme scheme, const PowerConfig& cfg, const PathGains& g,
                                const ElementSplit& split, std::uint64_t angle_seed) {
  using namespace detail;
  SplitMix64 rng(angle_seed);
  const double alpha = amp_factor(scheme, cfg, g, split);

  if (scheme == Scheme::bhu) {
    const AngleDraw in = draw_angles(rng), out = draw_angles(rng);
    const auto gain_bi = std::polar(std::sqrt(g.beta_bi_sq), rng.uniform(0.0, 2.0 * M_PI));
    const auto gain_iu = std::polar(std::sqrt(g.beta_iu_sq), rng.uniform(0.0, 2.0 * M_PI));
    const cvec h_bi_p = scale(response(in, split.n_p), gain_bi);
    const cvec h_bi_a = scale(response(in, split.n_a), gain_bi);
    const cvec h_iu_p = scale(response(out, split.n_p), gain_iu);
    const cvec h_iu_a = scale(response(out, split.n_a), gain_iu);

    // each aligned cascade is real and positive, so the two terms add
    // coherently exactly as the phase design intends
    const std::complex<double> signal =
        aligned_inner(h_iu_p, h_bi_p) + alpha * aligned_inner(h_iu_a, h_bi_a);
    const double noise_row = alpha * alpha * aligned_row_norm_sq(h_iu_a);
    return cfg.p_b * std::norm(signal) / (cfg.sigma_r_sq * noise_row + cfg.sigma0_sq);
  }

  // Double-surface schemes: rank-one inter-surface channel with its own
  // arrival/departure angle pair.
  const AngleDraw a_first = draw_angles(rng);
  const AngleDraw a_mid_dep = draw_angles(rng);
  const AngleDraw a_mid_arr = draw_angles(rng);
  const AngleDraw a_last = draw_angles(rng);
  const auto gain_first = std::polar(std::sqrt(g.beta_b_sq), rng.uniform(0.0, 2.0 * M_PI));
  const auto gain_mid = std::polar(std::sqrt(g.beta_i_sq), rng.uniform(0.0, 2.0 * M_PI));
  const auto gain_last = std::polar(std::sqrt(g.beta_u_sq), rng.uniform(0.0, 2.0 * M_PI));

  if (scheme == Scheme::bapu) {
    const cvec h_ba = scale(response(a_first, split.n_a), gain_first);
    const cvec ap_dep = response(a_mid_dep, split.n_a);   // right factor of H_AP
    const cvec ap_arr = response(a_mid_arr, split.n_p);   // left factor of H_AP
    const cvec h_pu = scale(response(a_last, split.n_p), gain_last);

    const std::complex<double> inner_a = alpha * aligned_inner(ap_dep, h_ba);
    const std::complex<double> inner_p = aligned_inner(h_pu, ap_arr);
    const std::complex<double> signal = gain_mid * inner_p * inner_a;
    const double row_sq = std::norm(gain_mid) * std::norm(inner_p) * alpha * alpha *
                          aligned_row_norm_sq(ap_dep);
    return cfg.p_b * std::norm(signal) / (cfg.sigma_r_sq * row_sq + cfg.sigma0_sq);
  }

  const cvec h_bp = scale(response(a_first, split.n_p), gain_first);
  const cvec pa_dep = response(a_mid_dep, split.n_p);
  const cvec pa_arr = response(a_mid_arr, split.n_a);
  const cvec h_au = scale(response(a_last, split.n_a), gain_last);

  const std::complex<double> inner_p = aligned_inner(pa_dep, h_bp);
  const std::complex<double> inner_a = alpha * aligned_inner(h_au, pa_arr);
  const std::complex<double> signal = gain_mid * inner_a * inner_p;
  const double row_sq = alpha * alpha * aligned_row_norm_sq(h_au);
  return cfg.p_b * std::norm(signal) / (cfg.sigma_r_sq * row_sq + cfg.sigma0_sq);
}

/// Left-hand side of the amplification power constraint, evaluated on
/// explicit channel vectors with the aligning phases applied; equals p_i for
/// the factor amp_factor returns.
inline double amplification_power_lhs(Scheme scheme, const PowerConfig& cfg, const PathGains& g,
                                      const ElementSplit& split,
                                      std::uint64_t angle_seed = 99) {
  using namespace detail;
  SplitMix64 rng(angle_seed);
  const double alpha = amp_factor(scheme, cfg, g, split);
  auto norm_sq = [](const cvec& v) {
    double acc = 0.0;
    for (const auto& e : v) acc += std::norm(e);
    return acc;
  };

  if (scheme == Scheme::bhu || scheme == Scheme::bapu) {
    const double gain_sq = scheme == Scheme::bhu ? g.beta_bi_sq : g.beta_b_sq;
    const cvec h = scale(response(draw_angles(rng), split.n_a),
                         std::polar(std::sqrt(gain_sq), rng.uniform(0.0, 2.0 * M_PI)));
    // the phase matrix is unit modulus, so only alpha scales the norms
    return cfg.p_b * alpha * alpha * norm_sq(h) +
           cfg.sigma_r_sq * alpha * alpha * split.n_a;
  }

  // reverse order: the amplified signal has already crossed the passive hop
  const cvec h_bp = scale(response(draw_angles(rng), split.n_p),
                          std::polar(std::sqrt(g.beta_b_sq), rng.uniform(0.0, 2.0 * M_PI)));
  const cvec pa_dep = response(draw_angles(rng), split.n_p);
  const cvec pa_arr = response(draw_angles(rng), split.n_a);
  const auto gain_mid = std::polar(std::sqrt(g.beta_i_sq), rng.uniform(0.0, 2.0 * M_PI));
  const std::complex<double> through = gain_mid * aligned_inner(pa_dep, h_bp);
  const cvec incident = scale(pa_arr, through);
  return cfg.p_b * alpha * alpha * norm_sq(incident) +
         cfg.sigma_r_sq * alpha * alpha * split.n_a;
}

}  // namespace irsdeploy
