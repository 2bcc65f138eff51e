// SPDX-License-Identifier: Apache-2.0
#include "mmbeam/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mmbeam/errors.hpp"

namespace mmbeam {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// All w^T H f products for one channel and one codebook pair, so that every
// effective-channel entry during the sweep is a table lookup:
// gains(k2, k1) = w_k2^T H f_k1.
struct GainTable {
  Eigen::MatrixXcd gains;   // K_UE x K_BS
  Eigen::MatrixXcd ue_gram; // K_UE x K_UE, W^H W of the UE codebook

  GainTable(const ChannelRealization& H, const Codebook& bs_cb, const Codebook& ue_cb) {
    if (ue_cb.entries.rows() != H.matrix.rows() || bs_cb.entries.rows() != H.matrix.cols())
      throw DimensionError("search: codebooks do not match the channel dimensions");
    gains = ue_cb.entries.transpose() * (H.matrix * bs_cb.entries);
    ue_gram = ue_cb.entries.adjoint() * ue_cb.entries;
  }
};

EffectiveChannel2x2 eff_from_tables(const GainTable& base, const GainTable& test,
                                    std::size_t base_k1, std::size_t base_k2, std::size_t k1,
                                    std::size_t k2) {
  const auto b1 = static_cast<Eigen::Index>(base_k1);
  const auto b2 = static_cast<Eigen::Index>(base_k2);
  const auto i1 = static_cast<Eigen::Index>(k1);
  const auto i2 = static_cast<Eigen::Index>(k2);
  EffectiveChannel2x2 eff;
  eff.h(0, 0) = base.gains(b2, b1);
  eff.h(0, 1) = test.gains(b2, i1);
  eff.h(1, 0) = base.gains(i2, b1);
  eff.h(1, 1) = test.gains(i2, i1);
  eff.r(0, 0) = base.ue_gram(b2, b2);
  eff.r(0, 1) = base.ue_gram(b2, i2);
  eff.r(1, 0) = base.ue_gram(i2, b2);
  eff.r(1, 1) = base.ue_gram(i2, i2);
  return eff;
}

template <typename Visit>
void for_each_admissible_pair(SearchMode mode, const BeamPair& baseline, std::size_t k_bs,
                              std::size_t k_ue, Visit&& visit) {
  for (std::size_t k1 = 0; k1 < k_bs; ++k1) {
    if (mode == SearchMode::single_node && k1 == baseline.bs_index) continue;
    for (std::size_t k2 = 0; k2 < k_ue; ++k2) {
      if (k2 == baseline.ue_index) continue;
      visit(k1, k2);
    }
  }
}

}  // namespace

BeamPair select_baseline(const ChannelRealization& H1, const Codebook& bs_cb, const Codebook& ue_cb) {
  if (bs_cb.size() == 0 || ue_cb.size() == 0)
    throw ConfigError("select_baseline: codebooks must be nonempty");
  const GainTable table(H1, bs_cb, ue_cb);

  BeamPair best{0, 0, NodeId::bs1};
  double best_power = -1.0;
  for (std::size_t k1 = 0; k1 < bs_cb.size(); ++k1) {
    for (std::size_t k2 = 0; k2 < ue_cb.size(); ++k2) {
      const double power =
          std::norm(table.gains(static_cast<Eigen::Index>(k2), static_cast<Eigen::Index>(k1)));
      if (power > best_power) {
        best_power = power;
        best = {k1, k2, NodeId::bs1};
      }
    }
  }
  return best;
}

SearchResult search_secondary(SearchMode mode, const ChannelRealization& H1,
                              const ChannelRealization* H2, const BeamPair& baseline,
                              const Codebook& bs1_cb, const Codebook* bs2_cb, const Codebook& ue_cb,
                              Estimator estimator, const PowerConfig& p,
                              const TrainingOptions& train) {
  if (baseline.bs_index >= bs1_cb.size() || baseline.ue_index >= ue_cb.size())
    throw ConfigError("search_secondary: baseline pair outside codebook bounds");
  if (mode == SearchMode::two_node && (H2 == nullptr || bs2_cb == nullptr))
    throw ConfigError("search_secondary: two_node mode requires H2 and the BS #2 codebook");

  const GainTable base_table(H1, bs1_cb, ue_cb);
  // In single-node mode the test sweep reuses the baseline tables; in
  // two-node mode the secondary column comes from H2 through BS #2's codebook.
  const GainTable* test_table = &base_table;
  GainTable two_node_table = base_table;
  const Codebook* sweep_cb = &bs1_cb;
  if (mode == SearchMode::two_node) {
    two_node_table = GainTable(*H2, *bs2_cb, ue_cb);
    test_table = &two_node_table;
    sweep_cb = bs2_cb;
  }
  const NodeId node = (mode == SearchMode::two_node) ? NodeId::bs2 : NodeId::bs1;

  SearchResult result;
  result.estimator_used = estimator;
  result.ranked_pairs.reserve(sweep_cb->size() * ue_cb.size());

  for_each_admissible_pair(mode, baseline, sweep_cb->size(), ue_cb.size(),
                           [&](std::size_t k1, std::size_t k2) {
    const EffectiveChannel2x2 eff =
        eff_from_tables(base_table, *test_table, baseline.bs_index, baseline.ue_index, k1, k2);
    double score = kNegInf;
    try {
      if (estimator == Estimator::perfect_csi) {
        score = sum_rate_cost(eff, p);
      } else {
        const std::uint64_t pair_seed = mix_seed(train.seed, k1, k2);
        RngStream rng(pair_seed);
        const TrainingFrame frame =
            synth_frame(train.p_length, p, train.pilot_mode, rng, train.alphabet);
        Observation obs = observe(eff, frame, p, rng);
        obs.noise_realization_seed = pair_seed;
        switch (estimator) {
          case Estimator::phbf1: score = cost_phbf1(obs, p, eff.r); break;
          case Estimator::phbf2: score = cost_phbf2(obs, p, eff.r); break;
          case Estimator::phbf3: score = cost_phbf3(obs, p, eff.r); break;
          default: break;
        }
      }
    } catch (const SingularCombinerError&) {
      score = kNegInf;
    }
    if (!std::isfinite(score)) score = kNegInf;
    result.ranked_pairs.push_back({BeamPair{k1, k2, node}, score});
  });

  if (result.ranked_pairs.empty())
    throw ConfigError("search_secondary: no admissible beam pairs (codebooks too small)");

  std::sort(result.ranked_pairs.begin(), result.ranked_pairs.end(),
            [](const ScoredPair& a, const ScoredPair& b) {
              if (a.score != b.score) return a.score > b.score;
              if (a.pair.bs_index != b.pair.bs_index) return a.pair.bs_index < b.pair.bs_index;
              return a.pair.ue_index < b.pair.ue_index;
            });
  result.best_pair = result.ranked_pairs.front().pair;
  result.best_score = result.ranked_pairs.front().score;
  result.n_evaluated = result.ranked_pairs.size();
  return result;
}

BeamPair backup_pair(const SearchResult& result) {
  if (result.ranked_pairs.empty()) throw ConfigError("backup_pair: empty search result");
  return result.ranked_pairs.front().pair;
}

std::vector<PairSinr> collect_training_sinr(SearchMode mode, const ChannelRealization& H1,
                                            const ChannelRealization* H2, const BeamPair& baseline,
                                            const Codebook& bs1_cb, const Codebook* bs2_cb,
                                            const Codebook& ue_cb, const PowerConfig& p) {
  if (mode == SearchMode::two_node && (H2 == nullptr || bs2_cb == nullptr))
    throw ConfigError("collect_training_sinr: two_node mode requires H2 and the BS #2 codebook");

  const GainTable base_table(H1, bs1_cb, ue_cb);
  const GainTable* test_table = &base_table;
  GainTable two_node_table = base_table;
  const Codebook* sweep_cb = &bs1_cb;
  if (mode == SearchMode::two_node) {
    two_node_table = GainTable(*H2, *bs2_cb, ue_cb);
    test_table = &two_node_table;
    sweep_cb = bs2_cb;
  }
  const NodeId node = (mode == SearchMode::two_node) ? NodeId::bs2 : NodeId::bs1;

  PowerConfig no_pilot = p;
  no_pilot.sigma_sp_sq = 0.0;

  std::vector<PairSinr> out;
  for_each_admissible_pair(mode, baseline, sweep_cb->size(), ue_cb.size(),
                           [&](std::size_t k1, std::size_t k2) {
    const EffectiveChannel2x2 eff =
        eff_from_tables(base_table, *test_table, baseline.bs_index, baseline.ue_index, k1, k2);
    PairSinr s;
    s.pair = {k1, k2, node};
    s.sinr = baseline_sinr_during_training(eff, p);
    s.snr_no_training = baseline_sinr_during_training(eff, no_pilot);
    out.push_back(s);
  });
  return out;
}

}  // namespace mmbeam
