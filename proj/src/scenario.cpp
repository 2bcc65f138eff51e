// SPDX-License-Identifier: Apache-2.0
#include "mmbeam/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

#include "mmbeam/errors.hpp"

namespace mmbeam {

namespace {

const std::vector<std::string> kKnownEstimators = {"db", "perfect_csi", "phbf1", "phbf2", "phbf3"};

Estimator estimator_from_name(const std::string& name) {
  if (name == "perfect_csi") return Estimator::perfect_csi;
  if (name == "phbf1") return Estimator::phbf1;
  if (name == "phbf2") return Estimator::phbf2;
  if (name == "phbf3") return Estimator::phbf3;
  throw ConfigError("unknown estimator: " + name);
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace

void ScenarioConfig::validate() const {
  bs_array.validate();
  ue_array.validate();
  channel_params.validate();
  if (n_trials < 1) throw ConfigError("scenario: n_trials must be >= 1");
  if (snr_grid_db.empty()) throw ConfigError("scenario: snr_grid_db must be nonempty");
  if (beta_list.empty()) throw ConfigError("scenario: beta_list must be nonempty");
  for (double b : beta_list)
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("scenario: beta values must be positive");
  if (p_length < 1) throw ConfigError("scenario: p_length must be >= 1");
  if (estimators.empty()) throw ConfigError("scenario: estimators must be nonempty");
  for (const auto& e : estimators)
    if (std::find(kKnownEstimators.begin(), kKnownEstimators.end(), e) == kKnownEstimators.end())
      throw ConfigError("scenario: unknown estimator '" + e + "'");
  if (codebook_sizes.bs_azimuth < 1 || codebook_sizes.bs_elevation < 1)
    throw ConfigError("scenario: BS codebook sizes must be >= 1");
  if (codebook_sizes.ue_azimuth < 2)
    throw ConfigError("scenario: UE codebook needs at least 2 entries (one is the baseline beam)");
  if (mode == SearchMode::single_node && codebook_sizes.bs_azimuth * codebook_sizes.bs_elevation < 2)
    throw ConfigError("scenario: single-node search needs at least 2 BS codebook entries");
  if (ue_array.kind != ArrayKind::linear)
    throw ConfigError("scenario: the UE array is linear");
  if (std::isfinite(bs2_power_offset_db) && bs2_power_offset_db > -6.0)
    throw ConfigError("scenario: bs2_power_offset_db must be <= -6 dB (or -inf)");
  if (!(sample_rate_hz > 0.0)) throw ConfigError("scenario: sample_rate_hz must be positive");
}

std::uint64_t trial_seed(const ScenarioConfig& cfg, std::size_t trial_id) {
  return mix_seed(cfg.master_seed, trial_id);
}

TrialChannels trial_channels(const ScenarioConfig& cfg, std::size_t trial_id) {
  const std::uint64_t seed = trial_seed(cfg, trial_id);
  TrialChannels ch;
  RngStream h1_rng(mix_seed(seed, 0xB51ull));
  ch.h1 = generate_channel(cfg.channel_params, cfg.bs_array, cfg.ue_array, h1_rng);
  if (cfg.mode == SearchMode::two_node) {
    if (std::isinf(cfg.bs2_power_offset_db)) {
      ch.h2 = ChannelRealization::from_matrix(
          Eigen::MatrixXcd::Zero(ch.h1.matrix.rows(), ch.h1.matrix.cols()));
    } else {
      RngStream h2_rng(mix_seed(seed, 0xB52ull));
      ChannelRealization h2 = generate_channel(cfg.channel_params, cfg.bs_array, cfg.ue_array, h2_rng);
      const double amp = std::pow(10.0, cfg.bs2_power_offset_db / 20.0);
      for (Ray& ray : h2.ray_list) ray.gain *= amp;
      h2.matrix *= amp;
      h2.frobenius_norm_sq = h2.matrix.squaredNorm();
      ch.h2 = std::move(h2);
    }
  }
  return ch;
}

namespace {

struct TrialOutput {
  std::vector<TrialRecord> records;
  std::vector<SinrSample> sinr_samples;
};

TrialOutput run_one_trial(const ScenarioConfig& cfg, std::size_t trial, const Codebook& bs_cb,
                          const Codebook& ue_cb) {
  TrialOutput out;
  const std::uint64_t seed_trial = trial_seed(cfg, trial);

  TrialChannels channels = trial_channels(cfg, trial);
  const ChannelRealization& H1 = channels.h1;
  const bool two_node = cfg.mode == SearchMode::two_node;
  const ChannelRealization& H2 = two_node ? *channels.h2 : channels.h1;
  const ChannelRealization* h2p = two_node ? &*channels.h2 : nullptr;
  const Codebook* bs2p = two_node ? &bs_cb : nullptr;

  const BeamPair baseline = select_baseline(H1, bs_cb, ue_cb);
  const Eigen::VectorXcd f_base = bs_cb.entry(baseline.bs_index);
  const Eigen::VectorXcd w_base = ue_cb.entry(baseline.ue_index);
  const std::complex<double> g_base = baseline_gain(H1, f_base, w_base);
  const double r11_base = std::real((w_base.adjoint() * w_base).value());

  Eigen::MatrixXcd db_matrix = H1.matrix;
  if (two_node) {
    db_matrix.conservativeResize(Eigen::NoChange, H1.matrix.cols() + H2.matrix.cols());
    db_matrix.rightCols(H2.matrix.cols()) = H2.matrix;
  }

  auto true_eff_of = [&](const BeamPair& pair) {
    const Eigen::VectorXcd f_test =
        two_node ? bs2p->entry(pair.bs_index) : bs_cb.entry(pair.bs_index);
    const Eigen::VectorXcd w_test = ue_cb.entry(pair.ue_index);
    return two_node
               ? effective_channel_two_node(H1, H2, f_base, f_test, w_base, w_test)
               : effective_channel_single_node(H1, f_base, f_test, w_base, w_test);
  };

  for (double snr_db : cfg.snr_grid_db) {
    const PowerConfig p_ref = PowerConfig::from_snr_db(snr_db, 1.0);
    const double baseline_rate =
        std::log2(1.0 + (p_ref.sigma_x_sq / p_ref.sigma_n_sq) * std::norm(g_base));
    const double snr_no_training_db =
        to_db(p_ref.sigma_x_sq * std::norm(g_base) / (p_ref.sigma_n_sq * r11_base));
    const double db_rate = digital_beamforming_reference(db_matrix, p_ref);

    for (const std::string& est_name : cfg.estimators) {
      TrialRecord rec;
      rec.trial_id = trial;
      rec.snr_db = snr_db;
      rec.estimator = est_name;
      rec.baseline_rate_bits = baseline_rate;

      if (est_name == "db") {
        rec.beta = 0.0;
        rec.achieved_rate_bits = db_rate;
        rec.baseline_sinr_db = snr_no_training_db;
        rec.probe_symbols = 0;
        out.records.push_back(rec);
        continue;
      }

      const Estimator est = estimator_from_name(est_name);
      const bool trains = est != Estimator::perfect_csi;
      const std::vector<double> betas = trains ? cfg.beta_list : std::vector<double>{1.0};
      for (double beta : betas) {
        const PowerConfig p = PowerConfig::from_snr_db(snr_db, beta);
        TrainingOptions train;
        train.p_length = cfg.p_length;
        train.pilot_mode = cfg.pilot_mode;
        train.alphabet = cfg.symbol_alphabet;
        train.seed = seed_trial;

        const SearchResult res = search_secondary(cfg.mode, H1, h2p, baseline, bs_cb, bs2p, ue_cb,
                                                  est, p, train);
        const EffectiveChannel2x2 eff = true_eff_of(res.best_pair);

        TrialRecord r = rec;
        r.beta = trains ? beta : 0.0;
        r.chosen_pair = res.best_pair;
        r.achieved_rate_bits = std::max(0.0, rate_bits(eff, p));
        if (trains) {
          r.baseline_sinr_db = to_db(baseline_sinr_during_training(eff, p));
          r.probe_symbols = 2ull * cfg.p_length * res.n_evaluated;
        } else {
          r.baseline_sinr_db = snr_no_training_db;
          r.probe_symbols = 0;
        }
        out.records.push_back(r);
        if (!trains) break;
      }
    }

    if (!cfg.collect_sinr_samples) continue;
    for (double beta : cfg.beta_list) {
      const PowerConfig p = PowerConfig::from_snr_db(snr_db, beta);
      for (const PairSinr& s :
           collect_training_sinr(cfg.mode, H1, h2p, baseline, bs_cb, bs2p, ue_cb, p)) {
        SinrSample sample;
        sample.trial_id = trial;
        sample.snr_db = snr_db;
        sample.beta = beta;
        sample.sinr_db = to_db(s.sinr);
        sample.snr_no_training_db = to_db(s.snr_no_training);
        out.sinr_samples.push_back(sample);
      }
    }
  }
  return out;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg, unsigned n_threads) {
  cfg.validate();
  const Codebook bs_cb =
      build_codebook(cfg.bs_array, cfg.codebook_sizes.bs_azimuth, cfg.codebook_sizes.bs_elevation);
  const Codebook ue_cb = build_codebook(cfg.ue_array, cfg.codebook_sizes.ue_azimuth, 1);

  if (n_threads == 0) {
    n_threads = std::thread::hardware_concurrency();
    if (n_threads == 0) n_threads = 1;
  }
  n_threads = static_cast<unsigned>(
      std::min<std::size_t>(n_threads, cfg.n_trials));

  std::vector<TrialOutput> outputs(cfg.n_trials);
  if (n_threads <= 1) {
    for (std::size_t t = 0; t < cfg.n_trials; ++t) outputs[t] = run_one_trial(cfg, t, bs_cb, ue_cb);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&]() {
      for (;;) {
        const std::size_t t = next.fetch_add(1);
        if (t >= cfg.n_trials) return;
        try {
          outputs[t] = run_one_trial(cfg, t, bs_cb, ue_cb);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  ScenarioResult result;
  for (auto& o : outputs) {
    result.records.insert(result.records.end(), o.records.begin(), o.records.end());
    result.sinr_samples.insert(result.sinr_samples.end(), o.sinr_samples.begin(),
                               o.sinr_samples.end());
  }
  return result;
}

std::vector<RateCurvePoint> aggregate_rate_curve(const std::vector<TrialRecord>& records) {
  std::vector<std::string> estimator_order;
  std::map<std::tuple<std::string, double, double>, std::vector<double>> groups;
  for (const TrialRecord& rec : records) {
    if (std::find(estimator_order.begin(), estimator_order.end(), rec.estimator) ==
        estimator_order.end())
      estimator_order.push_back(rec.estimator);
    groups[{rec.estimator, rec.beta, rec.snr_db}].push_back(rec.achieved_rate_bits);
  }

  std::vector<RateCurvePoint> out;
  for (const std::string& est : estimator_order) {
    for (const auto& [key, values] : groups) {
      if (std::get<0>(key) != est) continue;
      RateCurvePoint pt;
      pt.estimator = est;
      pt.beta = std::get<1>(key);
      pt.snr_db = std::get<2>(key);
      pt.n = values.size();
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      pt.mean_rate_bits = mean;
      if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        pt.ci_half_width = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
      }
      out.push_back(pt);
    }
  }
  return out;
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> samples) {
  std::vector<CdfPoint> out;
  if (samples.empty()) return out;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1] == samples[i]) continue;
    out.push_back({samples[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

std::vector<CdfPoint> aggregate_sinr_cdf(const std::vector<SinrSample>& samples, double beta) {
  std::vector<double> values;
  for (const SinrSample& s : samples)
    if (s.beta == beta) values.push_back(s.sinr_db);
  return empirical_cdf(std::move(values));
}

}  // namespace mmbeam
