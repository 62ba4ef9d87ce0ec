#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace irsdeploy {

/// Planar array description for steering-vector construction. The closed-form
/// SNRs are layout-independent after optimal phase alignment, so the default
/// is a linear array (n_y = 1) at half-wavelength spacing.
struct ArrayLayout {
  int n_x = 1;
  int n_y = 1;
  double wavelength = 0.1;
  double spacing = 0.05;

  static ArrayLayout linear(int n) { return ArrayLayout{n, 1, 0.1, 0.05}; }
  int size() const { return n_x * n_y; }
  void validate() const {
    if (n_x < 1 || n_y < 1) throw std::domain_error("ArrayLayout: counts must be >= 1");
    if (!(wavelength > 0.0) || !(spacing > 0.0))
      throw std::domain_error("ArrayLayout: wavelength and spacing must be > 0");
  }
};

/// One-dimensional steering vector [1, ..., e^{-j pi (n-1) theta}].
inline std::vector<std::complex<double>> steering_1d(double theta, int n) {
  std::vector<std::complex<double>> w(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) w[static_cast<size_t>(k)] = std::polar(1.0, -M_PI * k * theta);
  return w;
}

/// Array response for azimuth theta and elevation vartheta: the Kronecker
/// product of the horizontal and vertical steering vectors. All entries have
/// unit modulus; length is n_x * n_y.
inline std::vector<std::complex<double>> steering_vector(double theta, double vartheta,
                                                         const ArrayLayout& layout) {
  layout.validate();
  const double scale = 2.0 * layout.spacing / layout.wavelength;
  auto wx = steering_1d(scale * std::sin(theta) * std::sin(vartheta), layout.n_x);
  auto wy = steering_1d(scale * std::cos(vartheta), layout.n_y);
  std::vector<std::complex<double>> out(static_cast<size_t>(layout.size()));
  for (int i = 0; i < layout.n_x; ++i)
    for (int j = 0; j < layout.n_y; ++j)
      out[static_cast<size_t>(i * layout.n_y + j)] =
          wx[static_cast<size_t>(i)] * wy[static_cast<size_t>(j)];
  return out;
}

}  // namespace irsdeploy
