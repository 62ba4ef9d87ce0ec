#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "irsdeploy/model.hpp"
#include "irsdeploy/units.hpp"

namespace irsdeploy {

/// Parse/validation failure carrying the offending line or field.
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Scenario in presentation units as read from a config file. Unset optionals
/// fall back to the stock simulation setup.
struct ScenarioConfig {
  double p_b_dbm = 20.0;
  double p_i_dbm = 8.0;
  double noise0_dbm = -80.0;
  double noise_r_dbm = -80.0;
  double beta_ref_db = -43.0;
  double exp_bi = 2.0, exp_iu = 2.0, exp_b = 2.0, exp_i = 2.0, exp_u = 2.0;
  std::optional<double> alpha_max{};

  double length = 90.0;
  double h_s = 10.0;
  double h_d = 5.0;
  std::optional<double> x_bi{};
  std::optional<double> d_bi{80.0};
  std::optional<double> d_iu{50.0};
  double x_b = 5.0;
  double x_u = 5.0;

  int n_total = 700;
  std::optional<int> n_p{};
  std::optional<int> n_a{};
  std::string scheme = "all";  // bhu | bapu | bpau | all

  PowerConfig power() const {
    PowerConfig cfg;
    cfg.p_b = dbm_to_watts(p_b_dbm);
    cfg.p_i = dbm_to_watts(p_i_dbm);
    cfg.sigma0_sq = dbm_to_watts(noise0_dbm);
    cfg.sigma_r_sq = dbm_to_watts(noise_r_dbm);
    cfg.beta_ref = db_to_linear(beta_ref_db);
    cfg.exponents = PathLossExponents{exp_bi, exp_iu, exp_b, exp_i, exp_u};
    cfg.alpha_max = alpha_max;
    cfg.validate();
    return cfg;
  }

  SingleIrsGeometry single_geometry() const {
    SingleIrsGeometry g;
    g.length = length;
    g.height = h_s;
    g.x_bi = x_bi.value_or(0.0);
    g.override_d_bi = d_bi;
    g.override_d_iu = d_iu;
    if (x_bi) {
      g.override_d_bi.reset();
      g.override_d_iu.reset();
    }
    g.validate();
    return g;
  }

  DoubleIrsGeometry double_geometry() const {
    DoubleIrsGeometry g;
    g.length = length;
    g.height = h_d;
    g.x_b = x_b;
    g.x_u = x_u;
    g.validate();
    return g;
  }

  void validate() const {
    power();
    if (n_total < 1) throw ScenarioError("scenario: n_total must be >= 1");
    if (n_p.has_value() != n_a.has_value())
      throw ScenarioError("scenario: n_p and n_a must be given together");
    if (n_p && (*n_p < 1 || *n_a < 1 || *n_p + *n_a != n_total))
      throw ScenarioError("scenario: n_p + n_a must equal n_total with both >= 1");
    if (scheme != "bhu" && scheme != "bapu" && scheme != "bpau" && scheme != "all")
      throw ScenarioError("scenario: scheme must be one of bhu, bapu, bpau, all");
    single_geometry();
    double_geometry();
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_number(const std::string& v, int line_no) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ScenarioError("parse error at line " + std::to_string(line_no) + ": bad number '" + v +
                        "'");
  }
  if (pos != v.size())
    throw ScenarioError("parse error at line " + std::to_string(line_no) + ": bad number '" + v +
                        "'");
  return out;
}

inline int parse_int(const std::string& v, int line_no) {
  const double d = parse_number(v, line_no);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d)
    throw ScenarioError("parse error at line " + std::to_string(line_no) + ": expected integer '" +
                        v + "'");
  return i;
}

}  // namespace detail

/// Line-oriented `key = value` parser with `#` comments. Unknown keys are
/// rejected with their line number; defaults are the stock simulation setup.
inline ScenarioConfig parse_scenario(const std::string& text) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ScenarioError("parse error at line " + std::to_string(line_no) +
                          ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ScenarioError("parse error at line " + std::to_string(line_no) +
                          ": expected key = value");

    auto num = [&] { return detail::parse_number(value, line_no); };
    if (key == "p_b_dbm") cfg.p_b_dbm = num();
    else if (key == "p_i_dbm") cfg.p_i_dbm = num();
    else if (key == "noise0_dbm") cfg.noise0_dbm = num();
    else if (key == "noise_r_dbm") cfg.noise_r_dbm = num();
    else if (key == "beta_ref_db") cfg.beta_ref_db = num();
    else if (key == "alpha_max") cfg.alpha_max = num();
    else if (key == "exp_bi") cfg.exp_bi = num();
    else if (key == "exp_iu") cfg.exp_iu = num();
    else if (key == "exp_b") cfg.exp_b = num();
    else if (key == "exp_i") cfg.exp_i = num();
    else if (key == "exp_u") cfg.exp_u = num();
    else if (key == "L") cfg.length = num();
    else if (key == "h_s") cfg.h_s = num();
    else if (key == "h_d") cfg.h_d = num();
    else if (key == "x_bi") cfg.x_bi = num();
    else if (key == "d_bi") cfg.d_bi = num();
    else if (key == "d_iu") cfg.d_iu = num();
    else if (key == "x_b") cfg.x_b = num();
    else if (key == "x_u") cfg.x_u = num();
    else if (key == "n_total") cfg.n_total = detail::parse_int(value, line_no);
    else if (key == "n_p") cfg.n_p = detail::parse_int(value, line_no);
    else if (key == "n_a") cfg.n_a = detail::parse_int(value, line_no);
    else if (key == "scheme") cfg.scheme = value;
    else
      throw ScenarioError("parse error at line " + std::to_string(line_no) + ": unknown key '" +
                          key + "'");
  }
  cfg.validate();
  return cfg;
}

}  // namespace irsdeploy
