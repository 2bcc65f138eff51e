// SPDX-License-Identifier: Apache-2.0
#include "mmbeam/channel.hpp"

#include <cmath>
#include <numbers>

#include "mmbeam/errors.hpp"

namespace mmbeam {

void ClusterChannelParams::validate() const {
  if (n_clusters < 1) throw ConfigError("channel params: n_clusters must be >= 1");
  if (rays_per_cluster < 1) throw ConfigError("channel params: rays_per_cluster must be >= 1");
  if (!(angle_spread_deg >= 0.0) || !std::isfinite(angle_spread_deg))
    throw ConfigError("channel params: angle_spread_deg must be >= 0");
  if (!std::isfinite(power_decay_db_per_cluster))
    throw ConfigError("channel params: power_decay_db_per_cluster must be finite");
}

ChannelRealization ChannelRealization::from_matrix(Eigen::MatrixXcd m, std::vector<Ray> rays) {
  ChannelRealization ch;
  ch.matrix = std::move(m);
  ch.ray_list = std::move(rays);
  ch.frobenius_norm_sq = ch.matrix.squaredNorm();
  return ch;
}

ChannelRealization ChannelRealization::from_rays(const std::vector<Ray>& rays,
                                                 const ArrayGeometry& tx, const ArrayGeometry& rx) {
  tx.validate();
  rx.validate();
  const auto n_rx = static_cast<Eigen::Index>(rx.n_elements());
  const auto n_tx = static_cast<Eigen::Index>(tx.n_elements());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_rx, n_tx);
  for (const Ray& ray : rays) {
    const Eigen::VectorXcd a_rx = steering_vector(rx, ray.rx_azimuth, 0.0);
    const Eigen::VectorXcd a_tx = steering_vector(tx, ray.tx_azimuth, ray.tx_elevation);
    m.noalias() += ray.gain * (a_rx * a_tx.adjoint());
  }
  m *= std::sqrt(static_cast<double>(n_rx) * static_cast<double>(n_tx));
  return from_matrix(std::move(m), rays);
}

ChannelRealization generate_channel(const ClusterChannelParams& params, const ArrayGeometry& tx,
                                    const ArrayGeometry& rx, RngStream& rng) {
  params.validate();
  tx.validate();
  rx.validate();

  constexpr double pi = std::numbers::pi;
  const std::size_t n_clusters = params.n_clusters;
  const std::size_t n_rays = params.rays_per_cluster;

  // Exponential inter-cluster power profile, normalized to unit total power.
  std::vector<double> cluster_power(n_clusters);
  double total = 0.0;
  for (std::size_t c = 0; c < n_clusters; ++c) {
    cluster_power[c] = std::pow(10.0, -params.power_decay_db_per_cluster * static_cast<double>(c) / 10.0);
    total += cluster_power[c];
  }
  for (double& p : cluster_power) p /= total;

  const double spread_rad = params.angle_spread_deg * pi / 180.0;

  std::vector<Ray> rays;
  rays.reserve(n_clusters * n_rays);
  for (std::size_t c = 0; c < n_clusters; ++c) {
    const double tx_az0 = rng.uniform(-pi, pi);
    const double tx_el0 = rng.uniform(-pi / 2.0, pi / 2.0);
    const double rx_az0 = rng.uniform(-pi, pi);
    const double ray_amp = std::sqrt(cluster_power[c] / static_cast<double>(n_rays));
    for (std::size_t r = 0; r < n_rays; ++r) {
      Ray ray;
      ray.gain = ray_amp * rng.complex_normal();
      ray.tx_azimuth = tx_az0 + spread_rad * rng.normal();
      ray.tx_elevation = tx_el0 + spread_rad * rng.normal();
      ray.rx_azimuth = rx_az0 + spread_rad * rng.normal();
      rays.push_back(ray);
    }
  }
  return ChannelRealization::from_rays(rays, tx, rx);
}

ChannelRealization generate_channel(const ClusterChannelParams& params, const ArrayGeometry& tx,
                                    const ArrayGeometry& rx) {
  RngStream rng(params.seed);
  return generate_channel(params, tx, rx, rng);
}

}  // namespace mmbeam
