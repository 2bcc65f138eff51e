// SPDX-License-Identifier: Apache-2.0
#include "mmbeam/codebook.hpp"

#include <numbers>

#include "mmbeam/errors.hpp"

namespace mmbeam {

namespace {
constexpr double kPi = std::numbers::pi;
}

double Codebook::azimuth_of(std::size_t k) const {
  const std::size_t i = k % k_azimuth;
  return -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(k_azimuth);
}

double Codebook::elevation_of(std::size_t k) const {
  const std::size_t j = k / k_azimuth;
  return -kPi / 2.0 + kPi * static_cast<double>(j) / static_cast<double>(k_elevation);
}

Codebook build_codebook(const ArrayGeometry& geometry, std::size_t k_azimuth, std::size_t k_elevation) {
  geometry.validate();
  if (k_azimuth < 1 || k_elevation < 1)
    throw ConfigError("codebook: grid sizes must be >= 1");
  if (geometry.kind == ArrayKind::linear && k_elevation != 1)
    throw ConfigError("codebook: linear arrays require k_elevation = 1");

  Codebook cb;
  cb.geometry = geometry;
  cb.k_azimuth = k_azimuth;
  cb.k_elevation = k_elevation;
  cb.entries.resize(static_cast<Eigen::Index>(geometry.n_elements()),
                    static_cast<Eigen::Index>(k_azimuth * k_elevation));
  for (std::size_t j = 0; j < k_elevation; ++j) {
    for (std::size_t i = 0; i < k_azimuth; ++i) {
      const std::size_t k = j * k_azimuth + i;
      cb.entries.col(static_cast<Eigen::Index>(k)) =
          steering_vector(geometry, cb.azimuth_of(k), cb.elevation_of(k));
    }
  }
  return cb;
}

}  // namespace mmbeam
