#pragma once

#include <cmath>

namespace irsdeploy {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1e3); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

/// Achievable rate in bits/s/Hz for a linear SNR.
inline double rate_from_snr(double snr) { return std::log2(1.0 + snr); }

}  // namespace irsdeploy
