// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstddef>

namespace mmbeam {

enum class ArrayKind { linear, planar };

// Uniform antenna array: n_horizontal x n_vertical elements on a rectangular
// grid with element spacing in wavelengths. Linear arrays have n_vertical = 1.
struct ArrayGeometry {
  ArrayKind kind = ArrayKind::linear;
  std::size_t n_horizontal = 1;
  std::size_t n_vertical = 1;
  double element_spacing = 0.5;  // wavelengths

  std::size_t n_elements() const { return n_horizontal * n_vertical; }

  void validate() const;  // throws ConfigError

  static ArrayGeometry linear_array(std::size_t n, double spacing = 0.5);
  static ArrayGeometry planar_array(std::size_t n_h, std::size_t n_v, double spacing = 0.5);
};

// Constant-modulus array response for one steering direction.
//
// Angles map linearly to phase slopes: u = azimuth/pi, v = elevation/(pi/2),
// and element (m, n) carries phase 2*pi*spacing*(m*u + n*v) with the
// horizontal index m varying fastest in the returned vector. At
// half-wavelength spacing the map is injective over azimuth in [-pi, pi) and
// elevation in [-pi/2, pi/2), so distinct grid angles give distinct beams.
// Every element has magnitude 1/sqrt(n_elements); the vector has unit norm.
Eigen::VectorXcd steering_vector(const ArrayGeometry& geometry, double azimuth, double elevation);

}  // namespace mmbeam
