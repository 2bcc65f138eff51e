// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "mmbeam/codebook.hpp"
#include "mmbeam/link.hpp"
#include "mmbeam/training.hpp"

namespace mmbeam {

enum class SearchMode { single_node, two_node };

enum class Estimator { perfect_csi, phbf1, phbf2, phbf3 };

struct ScoredPair {
  BeamPair pair;
  double score = 0.0;
};

struct SearchResult {
  BeamPair best_pair;
  double best_score = 0.0;
  // Descending by score; ties broken by ascending (bs_index, ue_index).
  std::vector<ScoredPair> ranked_pairs;
  std::size_t n_evaluated = 0;
  Estimator estimator_used = Estimator::perfect_csi;
};

// Step 1: exhaustive argmax of the beamformed receive power |w^T H f|^2 over
// the full codebook product, ties broken by ascending (k1, k2).
BeamPair select_baseline(const ChannelRealization& H1, const Codebook& bs_cb, const Codebook& ue_cb);

struct TrainingOptions {
  std::size_t p_length = 10;
  PilotMode pilot_mode = PilotMode::conjugate_data;
  SymbolAlphabet alphabet = SymbolAlphabet::qpsk;
  std::uint64_t seed = 0;  // per-pair streams derive from (seed, k1, k2)
};

// Step 2: exhaustive sweep over admissible test pairs. single_node excludes
// the baseline BS beam and the baseline UE beam (evaluating
// (K_BS-1)(K_UE-1) pairs on H1); two_node excludes only the baseline UE beam
// (K_BS2 (K_UE-1) pairs on H2, with h2 / bs2_cb supplied). perfect_csi
// scores pairs by sum_rate_cost on the true effective channel; the PHBF
// estimators train on simulated observations. Pairs whose score is not
// finite are kept with score -inf.
SearchResult search_secondary(SearchMode mode, const ChannelRealization& H1,
                              const ChannelRealization* H2, const BeamPair& baseline,
                              const Codebook& bs1_cb, const Codebook* bs2_cb, const Codebook& ue_cb,
                              Estimator estimator, const PowerConfig& p,
                              const TrainingOptions& train);

// Back-up beam pair for blockage recovery; currently the top-ranked pair.
BeamPair backup_pair(const SearchResult& result);

// Baseline-link SINR during training for every admissible test pair,
// deterministic given the channels. Returns (sinr, interference-free snr)
// in linear units, in pair sweep order.
struct PairSinr {
  BeamPair pair;
  double sinr = 0.0;
  double snr_no_training = 0.0;
};
std::vector<PairSinr> collect_training_sinr(SearchMode mode, const ChannelRealization& H1,
                                            const ChannelRealization* H2, const BeamPair& baseline,
                                            const Codebook& bs1_cb, const Codebook* bs2_cb,
                                            const Codebook& ue_cb, const PowerConfig& p);

}  // namespace mmbeam
