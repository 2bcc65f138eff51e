// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <doctest.h>

#include "mmbeam/channel.hpp"
#include "mmbeam/errors.hpp"

using namespace mmbeam;

TEST_SUITE("channel") {

TEST_CASE("single unit-gain ray is a scaled outer product") {
  const auto tx = ArrayGeometry::planar_array(4, 2);
  const auto rx = ArrayGeometry::linear_array(4);
  const Ray ray{{1.0, 0.0}, 0.0, 0.0, 0.0};
  const ChannelRealization ch = ChannelRealization::from_rays({ray}, tx, rx);

  const Eigen::VectorXcd a_rx = steering_vector(rx, 0.0, 0.0);
  const Eigen::VectorXcd a_tx = steering_vector(tx, 0.0, 0.0);
  const Eigen::MatrixXcd expect = std::sqrt(4.0 * 8.0) * (a_rx * a_tx.adjoint());
  CHECK((ch.matrix - expect).norm() < 1e-12);

  // rank 1: the second singular value vanishes
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ch.matrix);
  CHECK(svd.singularValues()[0] > 1.0);
  CHECK(svd.singularValues()[1] < 1e-12);
}

TEST_CASE("same seed gives bitwise-identical realizations") {
  ClusterChannelParams params;
  params.seed = 1234;
  const auto tx = ArrayGeometry::planar_array(4, 4);
  const auto rx = ArrayGeometry::linear_array(8);
  const ChannelRealization a = generate_channel(params, tx, rx);
  const ChannelRealization b = generate_channel(params, tx, rx);
  REQUIRE(a.matrix.rows() == b.matrix.rows());
  CHECK((a.matrix.array() == b.matrix.array()).all());
  CHECK(a.frobenius_norm_sq == b.frobenius_norm_sq);
  REQUIRE(a.ray_list.size() == b.ray_list.size());
  for (std::size_t i = 0; i < a.ray_list.size(); ++i) {
    CHECK(a.ray_list[i].gain == b.ray_list[i].gain);
    CHECK(a.ray_list[i].tx_azimuth == b.ray_list[i].tx_azimuth);
  }
}

TEST_CASE("frobenius norm bookkeeping") {
  ClusterChannelParams params;
  params.seed = 77;
  const ChannelRealization ch =
      generate_channel(params, ArrayGeometry::planar_array(4, 2), ArrayGeometry::linear_array(4));
  CHECK(ch.frobenius_norm_sq ==
        doctest::Approx(ch.matrix.squaredNorm()).epsilon(1e-9));
}

TEST_CASE("Monte-Carlo normalization: E|H|_F^2 = n_rx * n_tx within 2%") {
  ClusterChannelParams params;  // 5 clusters x 10 rays
  const auto tx = ArrayGeometry::planar_array(4, 2);
  const auto rx = ArrayGeometry::linear_array(4);
  RngStream rng(0xC0FFEEull);
  double acc = 0.0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) acc += generate_channel(params, tx, rx, rng).frobenius_norm_sq;
  const double mean = acc / n;
  const double expect = 4.0 * 8.0;
  CHECK(std::abs(mean - expect) / expect < 0.02);
}

TEST_CASE("rank is bounded by the ray count") {
  ClusterChannelParams params;
  params.n_clusters = 2;
  params.rays_per_cluster = 1;
  params.seed = 5;
  const ChannelRealization ch =
      generate_channel(params, ArrayGeometry::planar_array(8, 4), ArrayGeometry::linear_array(8));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(ch.matrix);
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 2; i < sv.size(); ++i) CHECK(sv[i] < 1e-10 * sv[0]);
}

TEST_CASE("configuration errors") {
  ClusterChannelParams bad;
  bad.n_clusters = 0;
  CHECK_THROWS_AS(
      generate_channel(bad, ArrayGeometry::linear_array(2), ArrayGeometry::linear_array(2)),
      ConfigError);
  bad.n_clusters = 1;
  bad.rays_per_cluster = 0;
  CHECK_THROWS_AS(
      generate_channel(bad, ArrayGeometry::linear_array(2), ArrayGeometry::linear_array(2)),
      ConfigError);
}

}  // TEST_SUITE
