// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstddef>

#include "mmbeam/arrays.hpp"

namespace mmbeam {

// Which node a beam-pair index refers to on the BS side.
enum class NodeId { bs1, bs2 };

// One BS codebook entry plus one UE codebook entry.
struct BeamPair {
  std::size_t bs_index = 0;  // k1
  std::size_t ue_index = 0;  // k2
  NodeId node = NodeId::bs1;

  friend bool operator==(const BeamPair& a, const BeamPair& b) {
    return a.bs_index == b.bs_index && a.ue_index == b.ue_index && a.node == b.node;
  }
};

// Indexed set of constant-modulus beamformers on a uniform steering-angle
// grid: azimuth over [-pi, pi) and elevation over [-pi/2, pi/2), both
// anchored at the left edge. Entry (i, j) sits at azimuth -pi + i*2pi/k_az,
// elevation -pi/2 + j*pi/k_el, with linear index k = j*k_azimuth + i
// (azimuth varies fastest).
struct Codebook {
  ArrayGeometry geometry;
  std::size_t k_azimuth = 1;
  std::size_t k_elevation = 1;
  Eigen::MatrixXcd entries;  // n_elements x (k_azimuth*k_elevation); column k = entry k

  std::size_t size() const { return static_cast<std::size_t>(entries.cols()); }

  Eigen::VectorXcd entry(std::size_t k) const { return entries.col(static_cast<Eigen::Index>(k)); }

  double azimuth_of(std::size_t k) const;
  double elevation_of(std::size_t k) const;
};

Codebook build_codebook(const ArrayGeometry& geometry, std::size_t k_azimuth, std::size_t k_elevation);

}  // namespace mmbeam
