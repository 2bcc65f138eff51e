// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>

#include "mmbeam/channel.hpp"

namespace mmbeam {

// Transmit / noise / pilot power bookkeeping, all in linear units.
//
// sigma_x_sq is the total transmit power; the baseline data stream keeps the
// full power during training (sigma_s^2 = sigma_x^2). beta is the data/pilot
// power ratio sigma_x_sq / sigma_sp_sq and rho the per-stream SNR
// sigma_x_sq / (2 sigma_n_sq) used by the two-stream rate cost.
struct PowerConfig {
  double sigma_x_sq = 1.0;
  double sigma_n_sq = 1.0;
  double sigma_sp_sq = 1.0;
  double beta = 1.0;
  double rho = 0.5;

  // sigma_n_sq = 1, sigma_x_sq = 10^(snr_db/10); SNR is the received SNR per
  // UE antenna under the E[|H|_F^2] = n_rx*n_tx channel normalization.
  static PowerConfig from_snr_db(double snr_db, double beta);

  void validate() const;  // throws ConfigError
};

// 2x2 effective test channel h together with the UE combiner correlation
// r = W^H W, W = [w_base w_test].
struct EffectiveChannel2x2 {
  Eigen::Matrix2cd h;
  Eigen::Matrix2cd r;
};

// w^T H f (transpose on w, not conjugate-transpose).
std::complex<double> baseline_gain(const ChannelRealization& H, const Eigen::VectorXcd& f,
                                   const Eigen::VectorXcd& w);

// h = [w_base w_test]^T H1 [f_base f_test], r = [w_base w_test]^H [w_base w_test].
EffectiveChannel2x2 effective_channel_single_node(const ChannelRealization& H1,
                                                  const Eigen::VectorXcd& f_base,
                                                  const Eigen::VectorXcd& f_test,
                                                  const Eigen::VectorXcd& w_base,
                                                  const Eigen::VectorXcd& w_test);

// Column 1 = H1 f_base, column 2 = H2 f_test, combined by [w_base w_test]^T;
// no digital precoding across nodes.
EffectiveChannel2x2 effective_channel_two_node(const ChannelRealization& H1,
                                               const ChannelRealization& H2,
                                               const Eigen::VectorXcd& f_base,
                                               const Eigen::VectorXcd& f_test,
                                               const Eigen::VectorXcd& w_base,
                                               const Eigen::VectorXcd& w_test);

// det(rho * r^-1); throws SingularCombinerError when det(r) <= 1e-12.
double det_rho_rinv(const Eigen::Matrix2cd& r, double rho);

// Two-stream sum-rate cost det(I + rho r^-1 h^H h) >= 1; log2 of the value is
// the achievable rate in bits/s/Hz. Throws SingularCombinerError on singular r.
double sum_rate_cost(const EffectiveChannel2x2& eff, const PowerConfig& p);

// log2(sum_rate_cost)
double rate_bits(const EffectiveChannel2x2& eff, const PowerConfig& p);

// Closed-form split of det(h^H h + r/rho) into the rho-free part g1 and the
// combiner-dependent remainder g2:
//   g1       = |h11|^2|h22|^2 + |h12|^2|h21|^2 - 2 Re[h11 h22 (h12 h21)*]
//   g2_exact = r11(|h12|^2+|h22|^2)/rho + r22(|h11|^2+|h21|^2)/rho
//              + (r11 r22 - r12 r21)/rho^2 - 2 Re[(h^H h)_{12} r21]/rho
//   g2_approx drops the off-diagonal r-h cross term (|r12| << r11, r22).
// g1 + g2_exact = det(h^H h + r/rho) holds exactly.
struct GTerms {
  double g1 = 0.0;
  double g2_approx = 0.0;
  double g2_exact = 0.0;
};
GTerms g_terms_exact(const EffectiveChannel2x2& eff, const PowerConfig& p);

// Unconstrained digital-beamforming bound: sum over the top n_streams
// singular values sigma_i of H of log2(1 + rho sigma_i^2), equal power per
// stream. Returns bits/s/Hz.
double digital_beamforming_reference(const Eigen::MatrixXcd& H, const PowerConfig& p,
                                     int n_streams = 2);
double digital_beamforming_reference(const ChannelRealization& H, const PowerConfig& p,
                                     int n_streams = 2);

// Linear SINR on the baseline stream while a test pair is being probed:
// sigma_x^2 |h11|^2 / (sigma_sp^2 |h12|^2 + sigma_n^2 r11).
double baseline_sinr_during_training(const EffectiveChannel2x2& eff, const PowerConfig& p);

}  // namespace mmbeam
