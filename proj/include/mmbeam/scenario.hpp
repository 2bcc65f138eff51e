// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mmbeam/channel.hpp"
#include "mmbeam/search.hpp"

namespace mmbeam {

struct CodebookSizes {
  std::size_t bs_azimuth = 32;
  std::size_t bs_elevation = 16;
  std::size_t ue_azimuth = 16;
};

// All experiment knobs for one Monte-Carlo run. BS #2, when present, reuses
// the BS #1 array geometry and codebook sizes; its channel is scaled by
// bs2_power_offset_db (-inf drops the node entirely).
struct ScenarioConfig {
  SearchMode mode = SearchMode::single_node;
  ArrayGeometry bs_array = ArrayGeometry::planar_array(8, 8);
  ArrayGeometry ue_array = ArrayGeometry::linear_array(8);
  CodebookSizes codebook_sizes;
  ClusterChannelParams channel_params;
  std::vector<double> snr_grid_db{-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0};
  std::vector<double> beta_list{1.0};
  std::size_t p_length = 10;
  std::vector<std::string> estimators{"db", "perfect_csi", "phbf1", "phbf2", "phbf3"};
  std::size_t n_trials = 100;
  double bs2_power_offset_db = -6.0;
  std::uint64_t master_seed = 1;
  PilotMode pilot_mode = PilotMode::conjugate_data;
  SymbolAlphabet symbol_alphabet = SymbolAlphabet::qpsk;
  double sample_rate_hz = 122.88e6;
  // per-(trial, pair) baseline-SINR population for the CDFs; grows with
  // n_pairs x trials x betas x snr points, so big rate-curve runs turn it off
  bool collect_sinr_samples = true;

  void validate() const;  // throws ConfigError
};

// One result row. Estimator rows carry the beta used for pilot scaling; rows
// for the "db" reference and perfect_csi carry beta = 0 (no training) and no
// chosen pair for "db". achieved_rate_bits is always the true sum-rate of
// the chosen pair; estimation noise only affects which pair gets chosen.
struct TrialRecord {
  std::size_t trial_id = 0;
  double snr_db = 0.0;
  std::string estimator;
  double beta = 0.0;
  std::optional<BeamPair> chosen_pair;
  double achieved_rate_bits = 0.0;
  double baseline_rate_bits = 0.0;
  double baseline_sinr_db = 0.0;
  std::uint64_t probe_symbols = 0;
};

// One baseline-SINR sample, collected for every admissible test pair of
// every trial at each (snr, beta) point.
struct SinrSample {
  std::size_t trial_id = 0;
  double snr_db = 0.0;
  double beta = 0.0;
  double sinr_db = 0.0;
  double snr_no_training_db = 0.0;
};

struct ScenarioResult {
  std::vector<TrialRecord> records;
  std::vector<SinrSample> sinr_samples;
};

// Deterministic given cfg.master_seed, independent of n_threads (0 = auto).
ScenarioResult run_scenario(const ScenarioConfig& cfg, unsigned n_threads = 1);

// Seed and channel derivation used by run_scenario, exposed so results can be
// recomputed trial by trial: per-trial seed = mix(master_seed, trial_id), and
// the per-pair training seed inside a search is mix(trial_seed, k1, k2).
std::uint64_t trial_seed(const ScenarioConfig& cfg, std::size_t trial_id);
struct TrialChannels {
  ChannelRealization h1;
  std::optional<ChannelRealization> h2;  // two_node only; already offset-scaled
};
TrialChannels trial_channels(const ScenarioConfig& cfg, std::size_t trial_id);

struct RateCurvePoint {
  std::string estimator;
  double beta = 0.0;
  double snr_db = 0.0;
  double mean_rate_bits = 0.0;
  double ci_half_width = 0.0;  // 1.96 * stddev / sqrt(n); 0 for n = 1
  std::size_t n = 0;
};
// Groups records by (estimator, beta, snr), preserving first-seen estimator
// order and ascending (beta, snr) within it.
std::vector<RateCurvePoint> aggregate_rate_curve(const std::vector<TrialRecord>& records);

struct CdfPoint {
  double value = 0.0;
  double cum_fraction = 0.0;
};
// Standard empirical CDF: sorted unique values with cumulative fractions,
// final fraction exactly 1.
std::vector<CdfPoint> empirical_cdf(std::vector<double> samples);
// CDF of sinr_db over all samples with the given beta.
std::vector<CdfPoint> aggregate_sinr_cdf(const std::vector<SinrSample>& samples, double beta);

}  // namespace mmbeam
