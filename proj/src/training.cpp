// SPDX-License-Identifier: Apache-2.0
#include "mmbeam/training.hpp"

#include <cmath>

#include "mmbeam/errors.hpp"

namespace mmbeam {

TrainingFrame synth_frame(std::size_t p_length, const PowerConfig& p, PilotMode mode, RngStream& rng,
                          SymbolAlphabet alphabet) {
  if (p_length < 1) throw ConfigError("synth_frame: p_length must be >= 1");
  if (!(p.sigma_x_sq > 0.0)) throw ConfigError("synth_frame: data power must be positive");

  TrainingFrame f;
  f.p_length = p_length;
  f.pilot_mode = mode;
  f.sigma_s = std::sqrt(p.sigma_x_sq);
  f.sigma_sp = std::sqrt(p.sigma_sp_sq);
  f.s1.resize(p_length);
  f.s2.resize(p_length);
  f.sp.resize(p_length);

  auto unit_symbol = [&]() {
    return alphabet == SymbolAlphabet::qpsk ? rng.qpsk() : rng.complex_normal();
  };

  for (std::size_t i = 0; i < p_length; ++i) {
    f.s1[i] = f.sigma_s * unit_symbol();
    f.s2[i] = f.sigma_s * unit_symbol();
  }
  for (std::size_t i = 0; i < p_length; ++i) {
    if (mode == PilotMode::conjugate_data) {
      // pilot = sigma_sp * conj(unit data symbol); keeps pilot power at
      // sigma_sp^2 while preserving the conjugate cancellation structure
      f.sp[i] = (f.sigma_sp / f.sigma_s) * std::conj(f.s1[i]);
    } else {
      f.sp[i] = f.sigma_sp * unit_symbol();
    }
  }
  return f;
}

namespace {

// Hermitian PSD square root of a 2x2 matrix; l * l^H reproduces the input
// with negative eigenvalues clamped to zero.
Eigen::Matrix2cd psd_sqrt(const Eigen::Matrix2cd& r) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(r);
  Eigen::Vector2d ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

Observation observe(const EffectiveChannel2x2& eff, const TrainingFrame& frame, const PowerConfig& p,
                    RngStream& rng) {
  if (frame.p_length == 0 || frame.s1.size() != frame.p_length ||
      frame.s2.size() != frame.p_length || frame.sp.size() != frame.p_length)
    throw DimensionError("observe: malformed training frame");

  const Eigen::Matrix2cd l = psd_sqrt(eff.r);
  const double sn = std::sqrt(p.sigma_n_sq);

  Observation obs;
  obs.frame = frame;
  obs.y.resize(frame.p_length);
  for (std::size_t i = 0; i < frame.p_length; ++i) {
    Eigen::Matrix2cd n;
    for (int col = 0; col < 2; ++col) {
      Eigen::Vector2cd z;
      z << rng.complex_normal(), rng.complex_normal();
      n.col(col) = sn * (l * z);
    }
    obs.y[i] = eff.h * frame.mixed_matrix(i) + n;
  }
  return obs;
}

Eigen::Matrix2cd estimate_ls(const Observation& obs) {
  const TrainingFrame& f = obs.frame;
  Eigen::Matrix2cd acc = Eigen::Matrix2cd::Zero();
  for (std::size_t i = 0; i < f.p_length; ++i) {
    const std::complex<double> s1 = f.s1[i];
    const std::complex<double> sp = f.sp[i];
    if (std::abs(s1) == 0.0 || std::abs(sp) == 0.0)
      throw ConfigError("estimate_ls: singular data/pilot matrix");
    // closed-form inverse of the upper-triangular [[s1, s2], [0, sp]]
    Eigen::Matrix2cd s_inv;
    s_inv << 1.0 / s1, -f.s2[i] / (s1 * sp), 0.0, 1.0 / sp;
    acc += obs.y[i] * s_inv;
  }
  return acc / static_cast<double>(f.p_length);
}

PowerTermEstimates estimate_power_terms(const Observation& obs) {
  const TrainingFrame& f = obs.frame;
  if (f.p_length < 1) throw ConfigError("estimate_power_terms: empty observation");
  if (!(f.sigma_sp > 0.0)) throw ConfigError("estimate_power_terms: pilot power must be positive");

  double s11 = 0.0, s21 = 0.0, d12 = 0.0, d22 = 0.0;
  for (const Eigen::Matrix2cd& y : obs.y) {
    s11 += std::norm(y(0, 0));
    s21 += std::norm(y(1, 0));
    d12 += std::norm(y(0, 1)) - std::norm(y(0, 0));
    d22 += std::norm(y(1, 1)) - std::norm(y(1, 0));
  }
  const double np = static_cast<double>(f.p_length);
  const double ss = f.sigma_s * f.sigma_s;
  const double ssp = f.sigma_sp * f.sigma_sp;
  PowerTermEstimates e;
  e.p11 = s11 / (np * ss);
  e.p21 = s21 / (np * ss);
  e.p12 = d12 / (np * ssp);
  e.p22 = d22 / (np * ssp);
  return e;
}

PowerTermEstimates true_power_terms(const Eigen::Matrix2cd& h) {
  return {std::norm(h(0, 0)), std::norm(h(1, 0)), std::norm(h(0, 1)), std::norm(h(1, 1))};
}

CrossTermEstimates estimate_cross_term(const Observation& obs) {
  const TrainingFrame& f = obs.frame;
  if (f.pilot_mode != PilotMode::conjugate_data)
    throw ConfigError("estimate_cross_term: requires a conjugate_data pilot");
  if (!(f.sigma_sp > 0.0)) throw ConfigError("estimate_cross_term: pilot power must be positive");

  std::complex<double> c1122{0.0, 0.0}, c1221{0.0, 0.0};
  for (const Eigen::Matrix2cd& y : obs.y) {
    c1122 += y(0, 0) * y(1, 1);
    c1221 += y(0, 1) * y(1, 0);
  }
  const double scale = static_cast<double>(f.p_length) * f.sigma_sp * f.sigma_s;
  return {c1122 / scale, c1221 / scale};
}

CrossTermEstimates true_cross_terms(const Eigen::Matrix2cd& h) {
  return {h(0, 0) * h(1, 1), h(0, 1) * h(1, 0)};
}

namespace {

double g2_from_powers(const PowerTermEstimates& pw, double rho, const Eigen::Matrix2cd& r) {
  const double r11 = std::real(r(0, 0));
  const double r22 = std::real(r(1, 1));
  const double det_r = std::real(r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0));
  return r11 * (pw.p12 + pw.p22) / rho + r22 * (pw.p11 + pw.p21) / rho + det_r / (rho * rho);
}

}  // namespace

double phbf2_score_from_terms(const PowerTermEstimates& pw, const CrossTermEstimates& ct,
                              const PowerConfig& p, const Eigen::Matrix2cd& r) {
  const double g1 = pw.p11 * pw.p22 + pw.p12 * pw.p21 -
                    2.0 * std::real(ct.h11h22 * std::conj(ct.h12h21));
  const double g2 = g2_from_powers(pw, p.rho, r);
  return det_rho_rinv(r, p.rho) * (g1 + g2);
}

double phbf3_score_from_terms(const PowerTermEstimates& pw, const PowerConfig& p,
                              const Eigen::Matrix2cd& r) {
  // clamp only inside the square root; the additive terms keep raw values
  const double prod = std::max(0.0, pw.p11) * std::max(0.0, pw.p22) * std::max(0.0, pw.p12) *
                      std::max(0.0, pw.p21);
  const double g1 = pw.p11 * pw.p22 + pw.p12 * pw.p21 - 2.0 * std::sqrt(prod);
  const double g2 = g2_from_powers(pw, p.rho, r);
  return det_rho_rinv(r, p.rho) * (g1 + g2);
}

double cost_phbf1(const Observation& obs, const PowerConfig& p, const Eigen::Matrix2cd& r) {
  EffectiveChannel2x2 eff;
  eff.h = estimate_ls(obs);
  eff.r = r;
  return sum_rate_cost(eff, p);
}

double cost_phbf2(const Observation& obs, const PowerConfig& p, const Eigen::Matrix2cd& r) {
  return phbf2_score_from_terms(estimate_power_terms(obs), estimate_cross_term(obs), p, r);
}

double cost_phbf3(const Observation& obs, const PowerConfig& p, const Eigen::Matrix2cd& r) {
  return phbf3_score_from_terms(estimate_power_terms(obs), p, r);
}

}  // namespace mmbeam
