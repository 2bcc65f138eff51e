// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "mmbeam/arrays.hpp"
#include "mmbeam/rng.hpp"

namespace mmbeam {

// One propagation ray. Angles are steering-domain angles at the arrays; the
// receive side is azimuth-only (the UE array is linear).
struct Ray {
  std::complex<double> gain;
  double tx_azimuth = 0.0;
  double tx_elevation = 0.0;
  double rx_azimuth = 0.0;
};

// Clustered sum-of-rays channel generator parameters. Per-cluster mean angles
// are uniform over the steering domains, per-ray offsets are Gaussian with
// the given spread, and cluster powers decay exponentially. Defaults model a
// sparse 28 GHz environment: few clusters, tight intra-cluster spread, steep
// inter-cluster decay.
struct ClusterChannelParams {
  std::size_t n_clusters = 3;
  std::size_t rays_per_cluster = 8;
  double angle_spread_deg = 1.5;
  double power_decay_db_per_cluster = 10.0;
  std::uint64_t seed = 0;

  void validate() const;  // throws ConfigError
};

// A narrowband propagation channel between one BS array and the UE array.
// matrix is n_rx x n_tx and is scaled so that E[frobenius_norm_sq] over
// realizations equals n_rx * n_tx.
struct ChannelRealization {
  Eigen::MatrixXcd matrix;
  std::vector<Ray> ray_list;
  double frobenius_norm_sq = 0.0;

  std::size_t n_rx() const { return static_cast<std::size_t>(matrix.rows()); }
  std::size_t n_tx() const { return static_cast<std::size_t>(matrix.cols()); }

  static ChannelRealization from_matrix(Eigen::MatrixXcd m, std::vector<Ray> rays = {});

  // sqrt(n_rx*n_tx) * sum_r gain_r * a_rx(rx_azimuth) * a_tx(tx angles)^H
  static ChannelRealization from_rays(const std::vector<Ray>& rays, const ArrayGeometry& tx,
                                      const ArrayGeometry& rx);
};

ChannelRealization generate_channel(const ClusterChannelParams& params, const ArrayGeometry& tx,
                                    const ArrayGeometry& rx, RngStream& rng);

// Convenience overload seeding a fresh stream from params.seed.
ChannelRealization generate_channel(const ClusterChannelParams& params, const ArrayGeometry& tx,
                                    const ArrayGeometry& rx);

}  // namespace mmbeam
