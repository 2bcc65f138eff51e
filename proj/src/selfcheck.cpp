// SPDX-License-Identifier: Apache-2.0
#include "mmbeam/selfcheck.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "mmbeam/link.hpp"
#include "mmbeam/rng.hpp"
#include "mmbeam/search.hpp"
#include "mmbeam/training.hpp"

namespace mmbeam {

namespace {

EffectiveChannel2x2 random_effective_channel(RngStream& rng, std::size_t n_ue = 8) {
  Eigen::VectorXcd w1(n_ue), w2(n_ue);
  for (std::size_t i = 0; i < n_ue; ++i) {
    w1[static_cast<Eigen::Index>(i)] = rng.complex_normal();
    w2[static_cast<Eigen::Index>(i)] = rng.complex_normal();
  }
  w1.normalize();
  w2.normalize();
  EffectiveChannel2x2 eff;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) eff.h(i, j) = rng.complex_normal();
  eff.r(0, 0) = (w1.adjoint() * w1).value();
  eff.r(0, 1) = (w1.adjoint() * w2).value();
  eff.r(1, 0) = std::conj(eff.r(0, 1));
  eff.r(1, 1) = (w2.adjoint() * w2).value();
  return eff;
}

CheckResult check_ls_exactness() {
  CheckResult res{"noiseless LS exactness", true, ""};
  RngStream rng(0x15EEDull);
  double worst = 0.0;
  for (int seed_i = 0; seed_i < 20 && res.passed; ++seed_i) {
    for (std::size_t p_len : {std::size_t{1}, std::size_t{10}}) {
      EffectiveChannel2x2 eff = random_effective_channel(rng);
      PowerConfig p = PowerConfig::from_snr_db(10.0, 2.0);
      p.sigma_n_sq = 0.0;
      p.rho = 0.0;
      const TrainingFrame frame = synth_frame(p_len, p, PilotMode::conjugate_data, rng);
      const Observation obs = observe(eff, frame, p, rng);
      const Eigen::Matrix2cd est = estimate_ls(obs);
      const double rel = (est - eff.h).norm() / eff.h.norm();
      worst = std::max(worst, rel);
      if (!(rel < 1e-10)) res.passed = false;
    }
  }
  std::ostringstream msg;
  msg << "max relative error " << worst << " (bound 1e-10)";
  res.detail = msg.str();
  return res;
}

CheckResult check_dual_form() {
  CheckResult res{"sum-rate cost dual-form identity", true, ""};
  RngStream rng(0xD0A1ull);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const EffectiveChannel2x2 eff = random_effective_channel(rng);
    const PowerConfig p = PowerConfig::from_snr_db(rng.uniform(-10.0, 20.0), 1.0);
    const double direct = sum_rate_cost(eff, p);
    const GTerms g = g_terms_exact(eff, p);
    const double via_terms = det_rho_rinv(eff.r, p.rho) * (g.g1 + g.g2_exact);
    const double rel = std::abs(direct - via_terms) / std::abs(direct);
    worst = std::max(worst, rel);
    if (!(rel < 1e-10)) res.passed = false;
  }
  std::ostringstream msg;
  msg << "max relative gap " << worst << " over 2000 draws (bound 1e-10)";
  res.detail = msg.str();
  return res;
}

CheckResult check_amplitude_bound() {
  CheckResult res{"amplitude-approximation bound G1_approx <= G1_exact", true, ""};
  RngStream rng(0xA3B0ull);
  double worst = 0.0;
  for (int i = 0; i < 20000; ++i) {
    EffectiveChannel2x2 eff = random_effective_channel(rng);
    const PowerTermEstimates pw = true_power_terms(eff.h);
    const double g1_exact = g_terms_exact(eff, PowerConfig{}).g1;
    const double g1_amp = pw.p11 * pw.p22 + pw.p12 * pw.p21 -
                          2.0 * std::sqrt(pw.p11 * pw.p22 * pw.p12 * pw.p21);
    const double violation = g1_amp - g1_exact;
    worst = std::max(worst, violation);
    if (violation > 1e-12) res.passed = false;
  }
  std::ostringstream msg;
  msg << "max violation " << worst << " over 20000 draws (slack 1e-12)";
  res.detail = msg.str();
  return res;
}

CheckResult check_search_oracle() {
  CheckResult res{"tiny-codebook search equivalence", true, ""};
  const ArrayGeometry bs = ArrayGeometry::planar_array(4, 2);
  const ArrayGeometry ue = ArrayGeometry::linear_array(4);
  const Codebook bs_cb = build_codebook(bs, 4, 2);
  const Codebook ue_cb = build_codebook(ue, 4, 1);
  ClusterChannelParams params;
  params.n_clusters = 3;
  params.rays_per_cluster = 4;

  int mismatches = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    RngStream rng(mix_seed(0x5EAFull, seed));
    const ChannelRealization H1 = generate_channel(params, bs, ue, rng);
    const BeamPair baseline = select_baseline(H1, bs_cb, ue_cb);
    const PowerConfig p = PowerConfig::from_snr_db(10.0, 1.0);
    const SearchResult got = search_secondary(SearchMode::single_node, H1, nullptr, baseline,
                                              bs_cb, nullptr, ue_cb, Estimator::perfect_csi, p,
                                              TrainingOptions{});

    // independent brute force straight from the definitions
    BeamPair best{0, 0, NodeId::bs1};
    double best_score = -1.0;
    bool found = false;
    for (std::size_t k1 = 0; k1 < bs_cb.size(); ++k1) {
      if (k1 == baseline.bs_index) continue;
      for (std::size_t k2 = 0; k2 < ue_cb.size(); ++k2) {
        if (k2 == baseline.ue_index) continue;
        const EffectiveChannel2x2 eff = effective_channel_single_node(
            H1, bs_cb.entry(baseline.bs_index), bs_cb.entry(k1), ue_cb.entry(baseline.ue_index),
            ue_cb.entry(k2));
        const double score = sum_rate_cost(eff, p);
        if (!found || score > best_score) {
          best = {k1, k2, NodeId::bs1};
          best_score = score;
          found = true;
        }
      }
    }
    if (!(got.best_pair == best)) ++mismatches;
  }
  std::ostringstream msg;
  msg << mismatches << " mismatches over 5 channels";
  res.detail = msg.str();
  res.passed = mismatches == 0;
  return res;
}

}  // namespace

std::vector<CheckResult> run_selfcheck() {
  return {check_ls_exactness(), check_dual_form(), check_amplitude_bound(), check_search_oracle()};
}

}  // namespace mmbeam
