// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "mmbeam/link.hpp"
#include "mmbeam/rng.hpp"

namespace mmbeam {

// How the probe pilot relates to the baseline data stream. conjugate_data
// transmits the scaled conjugate of the first data symbol, which the
// cross-term estimator requires; independent draws a fresh symbol.
enum class PilotMode { conjugate_data, independent };

enum class SymbolAlphabet { qpsk, gaussian };

// P two-slot blocks of the data/pilot mixed transmit matrix; block p is
// [[s1_p, s2_p], [0, sp_p]]. Data symbols carry power sigma_s^2 and the
// pilot sigma_sp^2.
struct TrainingFrame {
  std::size_t p_length = 0;
  PilotMode pilot_mode = PilotMode::conjugate_data;
  double sigma_s = 1.0;   // data symbol amplitude
  double sigma_sp = 1.0;  // pilot symbol amplitude
  std::vector<std::complex<double>> s1, s2, sp;

  Eigen::Matrix2cd mixed_matrix(std::size_t p) const {
    Eigen::Matrix2cd m;
    m << s1[p], s2[p], 0.0, sp[p];
    return m;
  }
};

TrainingFrame synth_frame(std::size_t p_length, const PowerConfig& p, PilotMode mode, RngStream& rng,
                          SymbolAlphabet alphabet = SymbolAlphabet::qpsk);

// UE-side reception of a frame through a 2x2 effective channel: one 2x2
// block y_p = h * S_p + n_p per slot pair, noise columns independent
// CN(0, sigma_n_sq * r).
struct Observation {
  std::vector<Eigen::Matrix2cd> y;
  TrainingFrame frame;
  std::uint64_t noise_realization_seed = 0;
};

Observation observe(const EffectiveChannel2x2& eff, const TrainingFrame& frame, const PowerConfig& p,
                    RngStream& rng);

// PHBF #1: genie-known-data least squares, (1/P) sum_p y_p S_p^{-1}.
Eigen::Matrix2cd estimate_ls(const Observation& obs);

// Element power estimates of the effective channel, in h-index order.
// The off-diagonal entries come from slot-power differences and may be
// negative at small P; values are passed through unclamped.
struct PowerTermEstimates {
  double p11 = 0.0, p21 = 0.0, p12 = 0.0, p22 = 0.0;
};
PowerTermEstimates estimate_power_terms(const Observation& obs);
PowerTermEstimates true_power_terms(const Eigen::Matrix2cd& h);

// Products h11*h22 and h12*h21 estimated from slot cross-correlations;
// requires a conjugate_data pilot.
struct CrossTermEstimates {
  std::complex<double> h11h22{0.0, 0.0};
  std::complex<double> h12h21{0.0, 0.0};
};
CrossTermEstimates estimate_cross_term(const Observation& obs);
CrossTermEstimates true_cross_terms(const Eigen::Matrix2cd& h);

// Score assemblers shared by the estimated and exact-input paths. Scores are
// det(rho r^-1) * (G1 + G2), comparable with sum_rate_cost.
double phbf2_score_from_terms(const PowerTermEstimates& pw, const CrossTermEstimates& ct,
                              const PowerConfig& p, const Eigen::Matrix2cd& r);
double phbf3_score_from_terms(const PowerTermEstimates& pw, const PowerConfig& p,
                              const Eigen::Matrix2cd& r);

// Beam-pair scores from one observation.
double cost_phbf1(const Observation& obs, const PowerConfig& p, const Eigen::Matrix2cd& r);
double cost_phbf2(const Observation& obs, const PowerConfig& p, const Eigen::Matrix2cd& r);
double cost_phbf3(const Observation& obs, const PowerConfig& p, const Eigen::Matrix2cd& r);

}  // namespace mmbeam
