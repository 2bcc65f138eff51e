// SPDX-License-Identifier: Apache-2.0
#include "mmbeam/arrays.hpp"

#include <cmath>
#include <numbers>

#include "mmbeam/errors.hpp"

namespace mmbeam {

void ArrayGeometry::validate() const {
  if (n_horizontal < 1 || n_vertical < 1)
    throw ConfigError("array geometry: element counts must be >= 1");
  if (kind == ArrayKind::linear && n_vertical != 1)
    throw ConfigError("array geometry: linear arrays require n_vertical = 1");
  if (!(element_spacing > 0.0) || !std::isfinite(element_spacing))
    throw ConfigError("array geometry: element spacing must be positive and finite");
}

ArrayGeometry ArrayGeometry::linear_array(std::size_t n, double spacing) {
  ArrayGeometry g{ArrayKind::linear, n, 1, spacing};
  g.validate();
  return g;
}

ArrayGeometry ArrayGeometry::planar_array(std::size_t n_h, std::size_t n_v, double spacing) {
  ArrayGeometry g{ArrayKind::planar, n_h, n_v, spacing};
  g.validate();
  return g;
}

Eigen::VectorXcd steering_vector(const ArrayGeometry& geometry, double azimuth, double elevation) {
  geometry.validate();
  if (!std::isfinite(azimuth) || !std::isfinite(elevation))
    throw DimensionError("steering_vector: angles must be finite");

  constexpr double pi = std::numbers::pi;
  const std::size_t n_total = geometry.n_elements();
  const double u = azimuth / pi;
  const double v = elevation / (pi / 2.0);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n_total));
  const double step = 2.0 * pi * geometry.element_spacing;

  Eigen::VectorXcd a(static_cast<Eigen::Index>(n_total));
  for (std::size_t n = 0; n < geometry.n_vertical; ++n) {
    for (std::size_t m = 0; m < geometry.n_horizontal; ++m) {
      const double phase = step * (static_cast<double>(m) * u + static_cast<double>(n) * v);
      a[static_cast<Eigen::Index>(n * geometry.n_horizontal + m)] = std::polar(amp, phase);
    }
  }
  return a;
}

}  // namespace mmbeam
