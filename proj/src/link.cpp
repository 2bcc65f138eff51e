// SPDX-License-Identifier: Apache-2.0
#include "mmbeam/link.hpp"

#include <cmath>

#include "mmbeam/errors.hpp"

namespace mmbeam {

PowerConfig PowerConfig::from_snr_db(double snr_db, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("power config: beta must be positive");
  PowerConfig p;
  p.sigma_n_sq = 1.0;
  p.sigma_x_sq = std::pow(10.0, snr_db / 10.0);
  p.sigma_sp_sq = p.sigma_x_sq / beta;
  p.beta = beta;
  p.rho = p.sigma_x_sq / (2.0 * p.sigma_n_sq);
  return p;
}

void PowerConfig::validate() const {
  if (!(sigma_x_sq > 0.0)) throw ConfigError("power config: sigma_x_sq must be positive");
  if (!(sigma_n_sq >= 0.0)) throw ConfigError("power config: sigma_n_sq must be >= 0");
  if (!(sigma_sp_sq >= 0.0)) throw ConfigError("power config: sigma_sp_sq must be >= 0");
  if (sigma_n_sq > 0.0) {
    const double expect_rho = sigma_x_sq / (2.0 * sigma_n_sq);
    if (std::abs(rho - expect_rho) > 1e-12 * std::max(1.0, expect_rho))
      throw ConfigError("power config: rho must equal sigma_x_sq / (2 sigma_n_sq)");
  }
  if (sigma_sp_sq > 0.0) {
    const double expect_beta = sigma_x_sq / sigma_sp_sq;
    if (std::abs(beta - expect_beta) > 1e-12 * std::max(1.0, expect_beta))
      throw ConfigError("power config: beta must equal sigma_x_sq / sigma_sp_sq");
  }
}

std::complex<double> baseline_gain(const ChannelRealization& H, const Eigen::VectorXcd& f,
                                   const Eigen::VectorXcd& w) {
  if (w.size() != H.matrix.rows() || f.size() != H.matrix.cols())
    throw DimensionError("baseline_gain: beam dimensions do not match the channel");
  return (w.transpose() * H.matrix * f).value();
}

namespace {

EffectiveChannel2x2 combine(const Eigen::VectorXcd& col_base, const Eigen::VectorXcd& col_test,
                            const Eigen::VectorXcd& w_base, const Eigen::VectorXcd& w_test) {
  EffectiveChannel2x2 eff;
  eff.h(0, 0) = (w_base.transpose() * col_base).value();
  eff.h(0, 1) = (w_base.transpose() * col_test).value();
  eff.h(1, 0) = (w_test.transpose() * col_base).value();
  eff.h(1, 1) = (w_test.transpose() * col_test).value();
  eff.r(0, 0) = (w_base.adjoint() * w_base).value();
  eff.r(0, 1) = (w_base.adjoint() * w_test).value();
  eff.r(1, 0) = std::conj(eff.r(0, 1));
  eff.r(1, 1) = (w_test.adjoint() * w_test).value();
  return eff;
}

}  // namespace

EffectiveChannel2x2 effective_channel_single_node(const ChannelRealization& H1,
                                                  const Eigen::VectorXcd& f_base,
                                                  const Eigen::VectorXcd& f_test,
                                                  const Eigen::VectorXcd& w_base,
                                                  const Eigen::VectorXcd& w_test) {
  if (w_base.size() != H1.matrix.rows() || w_test.size() != H1.matrix.rows() ||
      f_base.size() != H1.matrix.cols() || f_test.size() != H1.matrix.cols())
    throw DimensionError("effective_channel_single_node: beam dimensions do not match");
  const Eigen::VectorXcd col_base = H1.matrix * f_base;
  const Eigen::VectorXcd col_test = H1.matrix * f_test;
  return combine(col_base, col_test, w_base, w_test);
}

EffectiveChannel2x2 effective_channel_two_node(const ChannelRealization& H1,
                                               const ChannelRealization& H2,
                                               const Eigen::VectorXcd& f_base,
                                               const Eigen::VectorXcd& f_test,
                                               const Eigen::VectorXcd& w_base,
                                               const Eigen::VectorXcd& w_test) {
  if (H1.matrix.rows() != H2.matrix.rows())
    throw DimensionError("effective_channel_two_node: channels disagree on UE size");
  if (w_base.size() != H1.matrix.rows() || w_test.size() != H1.matrix.rows() ||
      f_base.size() != H1.matrix.cols() || f_test.size() != H2.matrix.cols())
    throw DimensionError("effective_channel_two_node: beam dimensions do not match");
  const Eigen::VectorXcd col_base = H1.matrix * f_base;
  const Eigen::VectorXcd col_test = H2.matrix * f_test;
  return combine(col_base, col_test, w_base, w_test);
}

double det_rho_rinv(const Eigen::Matrix2cd& r, double rho) {
  const double det_r = std::real(r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0));
  if (!(det_r > 1e-12))
    throw SingularCombinerError("combiner correlation matrix is singular (duplicate UE beams?)");
  return rho * rho / det_r;
}

double sum_rate_cost(const EffectiveChannel2x2& eff, const PowerConfig& p) {
  const double det_r = std::real(eff.r(0, 0) * eff.r(1, 1) - eff.r(0, 1) * eff.r(1, 0));
  if (!(det_r > 1e-12))
    throw SingularCombinerError("combiner correlation matrix is singular (duplicate UE beams?)");
  Eigen::Matrix2cd r_inv;
  r_inv << eff.r(1, 1), -eff.r(0, 1), -eff.r(1, 0), eff.r(0, 0);
  r_inv /= det_r;
  const Eigen::Matrix2cd m = eff.h.adjoint() * eff.h;
  const Eigen::Matrix2cd a = Eigen::Matrix2cd::Identity() + p.rho * (r_inv * m);
  return std::real(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0));
}

double rate_bits(const EffectiveChannel2x2& eff, const PowerConfig& p) {
  return std::log2(sum_rate_cost(eff, p));
}

GTerms g_terms_exact(const EffectiveChannel2x2& eff, const PowerConfig& p) {
  const Eigen::Matrix2cd& h = eff.h;
  const Eigen::Matrix2cd& r = eff.r;
  const double rho = p.rho;

  const double a11 = std::norm(h(0, 0));
  const double a12 = std::norm(h(0, 1));
  const double a21 = std::norm(h(1, 0));
  const double a22 = std::norm(h(1, 1));

  const std::complex<double> z1 = h(0, 0) * h(1, 1);
  const std::complex<double> z2 = h(0, 1) * h(1, 0);

  GTerms g;
  g.g1 = std::norm(z1) + std::norm(z2) - 2.0 * std::real(z1 * std::conj(z2));

  const double r11 = std::real(r(0, 0));
  const double r22 = std::real(r(1, 1));
  const double det_r = std::real(r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0));
  const double col1 = a11 + a21;  // (h^H h)_{11}
  const double col2 = a12 + a22;  // (h^H h)_{22}

  g.g2_approx = r11 * col2 / rho + r22 * col1 / rho + det_r / (rho * rho);

  // off-diagonal r-h cross terms dropped in the approximation
  const std::complex<double> c = std::conj(h(0, 0)) * h(0, 1) + std::conj(h(1, 0)) * h(1, 1);
  g.g2_exact = g.g2_approx - 2.0 * std::real(c * r(1, 0)) / rho;
  return g;
}

double digital_beamforming_reference(const Eigen::MatrixXcd& H, const PowerConfig& p,
                                     int n_streams) {
  if (n_streams < 1) throw ConfigError("digital_beamforming_reference: n_streams must be >= 1");
  if (H.size() == 0) return 0.0;
  // Eigenvalues of the smaller Gram matrix are the squared singular values.
  const Eigen::MatrixXcd gram = (H.rows() <= H.cols()) ? Eigen::MatrixXcd(H * H.adjoint())
                                                       : Eigen::MatrixXcd(H.adjoint() * H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();  // ascending
  double rate = 0.0;
  const int n = static_cast<int>(ev.size());
  for (int i = n - 1; i >= std::max(0, n - n_streams); --i)
    rate += std::log2(1.0 + p.rho * std::max(0.0, ev[i]));
  return rate;
}

double digital_beamforming_reference(const ChannelRealization& H, const PowerConfig& p,
                                     int n_streams) {
  return digital_beamforming_reference(H.matrix, p, n_streams);
}

double baseline_sinr_during_training(const EffectiveChannel2x2& eff, const PowerConfig& p) {
  const double signal = p.sigma_x_sq * std::norm(eff.h(0, 0));
  const double denom = p.sigma_sp_sq * std::norm(eff.h(0, 1)) + p.sigma_n_sq * std::real(eff.r(0, 0));
  return signal / denom;
}

}  // namespace mmbeam
