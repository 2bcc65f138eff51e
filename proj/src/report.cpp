// SPDX-License-Identifier: Apache-2.0
#include "mmbeam/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "mmbeam/config_io.hpp"
#include "mmbeam/version.hpp"

namespace mmbeam {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

// Estimator label for the rate curve; carries the beta only when the run
// sweeps several betas, so single-beta runs keep plain labels.
std::string curve_label(const RateCurvePoint& pt, bool multi_beta) {
  if (!multi_beta || pt.beta == 0.0) return pt.estimator;
  return pt.estimator + "@b" + format_float(pt.beta);
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

}  // namespace

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

OutputBundle write_outputs(const ScenarioConfig& cfg, const ScenarioResult& result,
                           const std::string& out_dir, unsigned n_threads,
                           bool include_timestamp) {
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec && !fs::is_directory(dir))
    throw std::runtime_error("cannot create output directory '" + out_dir + "'");

  OutputBundle bundle;
  bundle.rate_curve_csv = (dir / "rate_curve.csv").string();
  bundle.sinr_cdf_csv = (dir / "sinr_cdf.csv").string();
  bundle.records_csv = (dir / "records.csv").string();
  bundle.metadata_json = (dir / "metadata.json").string();
  bundle.plot_script = (dir / "plots.gp").string();

  const bool multi_beta = cfg.beta_list.size() > 1;

  // rate_curve.csv
  {
    auto out = open_out(bundle.rate_curve_csv);
    out << "estimator,snr_db,mean_rate_bits,ci_half_width,n\n";
    for (const RateCurvePoint& pt : aggregate_rate_curve(result.records)) {
      out << curve_label(pt, multi_beta) << ',' << format_float(pt.snr_db) << ','
          << format_float(pt.mean_rate_bits) << ',' << format_float(pt.ci_half_width) << ','
          << pt.n << '\n';
    }
  }

  // sinr_cdf.csv, grouped by (snr, beta) in grid order
  {
    auto out = open_out(bundle.sinr_cdf_csv);
    out << "snr_db,beta,sinr_db,cum_fraction\n";
    for (double snr : cfg.snr_grid_db) {
      for (double beta : cfg.beta_list) {
        std::vector<double> values;
        for (const SinrSample& s : result.sinr_samples)
          if (s.beta == beta && s.snr_db == snr) values.push_back(s.sinr_db);
        for (const CdfPoint& pt : empirical_cdf(std::move(values))) {
          out << format_float(snr) << ',' << format_float(beta) << ',' << format_float(pt.value)
              << ',' << format_float(pt.cum_fraction) << '\n';
        }
      }
    }
  }

  // records.csv
  {
    auto out = open_out(bundle.records_csv);
    out << "trial_id,snr_db,estimator,beta,k1,k2,node,achieved_rate_bits,baseline_rate_bits,"
           "baseline_sinr_db,probe_symbols\n";
    for (const TrialRecord& rec : result.records) {
      out << rec.trial_id << ',' << format_float(rec.snr_db) << ',' << rec.estimator << ','
          << format_float(rec.beta) << ',';
      if (rec.chosen_pair) {
        out << rec.chosen_pair->bs_index << ',' << rec.chosen_pair->ue_index << ','
            << (rec.chosen_pair->node == NodeId::bs1 ? "bs1" : "bs2") << ',';
      } else {
        out << "-1,-1,none,";
      }
      out << format_float(rec.achieved_rate_bits) << ',' << format_float(rec.baseline_rate_bits)
          << ',' << format_float(rec.baseline_sinr_db) << ',' << rec.probe_symbols << '\n';
    }
  }

  // metadata.json
  {
    const std::size_t k_bs = cfg.codebook_sizes.bs_azimuth * cfg.codebook_sizes.bs_elevation;
    const std::size_t k_ue = cfg.codebook_sizes.ue_azimuth;
    const std::size_t n_pairs = cfg.mode == SearchMode::single_node
                                    ? (k_bs - 1) * (k_ue - 1)
                                    : k_bs * (k_ue - 1);
    nlohmann::json meta;
    meta["tool"] = "mmbeam";
    meta["version"] = std::string(kVersion);
    meta["master_seed"] = cfg.master_seed;
    meta["threads"] = n_threads;
    meta["config"] = config_to_json(cfg);
    meta["populations"] = {
        {"sinr_cdf", "all admissible test pairs x trials, per (snr_db, beta)"},
        {"sinr_stream", "stream 1 (baseline data) during slot-pair training"},
        {"rate", "true sum-rate of the chosen pair; estimators only pick the pair"}};
    meta["idealizations"] = {
        {"phbf1_data", "genie-known data symbols (correct demodulation assumed)"},
        {"beta_zero_rows", "beta = 0 marks rows without pilot training (db, perfect_csi)"}};
    meta["probe"] = {{"symbols_per_pair", 2},
                     {"p_length", cfg.p_length},
                     {"n_pairs", n_pairs},
                     {"probe_time_s", 2.0 * static_cast<double>(cfg.p_length) *
                                          static_cast<double>(n_pairs) / cfg.sample_rate_hz}};
    if (include_timestamp) meta["timestamp"] = timestamp_utc();
    auto out = open_out(bundle.metadata_json);
    out << meta.dump(2) << '\n';
  }

  // plots.gp
  {
    auto out = open_out(bundle.plot_script);
    std::set<std::string> labels;
    for (const RateCurvePoint& pt : aggregate_rate_curve(result.records))
      labels.insert(curve_label(pt, multi_beta));
    out << "# gnuplot script; run from this directory\n";
    out << "set datafile separator ','\n";
    out << "set grid\n\n";
    out << "set xlabel 'SNR (dB)'\n";
    out << "set ylabel 'mean achievable rate (bits/s/Hz)'\n";
    out << "estimators = \"";
    bool first = true;
    for (const auto& label : labels) {
      if (!first) out << ' ';
      out << label;
      first = false;
    }
    out << "\"\n";
    out << "plot for [est in estimators] 'rate_curve.csv' every ::1 "
           "using 2:(strcol(1) eq est ? column(3) : 1/0) with linespoints title est\n";
    out << "pause -1 'rate curves; press enter'\n\n";
    out << "set xlabel 'baseline SINR during training (dB)'\n";
    out << "set ylabel 'CDF'\n";
    out << "betas = \"";
    first = true;
    for (double beta : cfg.beta_list) {
      if (!first) out << ' ';
      out << format_float(beta);
      first = false;
    }
    out << "\"\n";
    out << "plot for [b in betas] 'sinr_cdf.csv' every ::1 "
           "using 3:(strcol(2) eq b ? column(4) : 1/0) with steps title 'beta='.b\n";
    out << "pause -1 'baseline SINR CDF; press enter'\n";
  }

  return bundle;
}

void dump_codebook_csv(const Codebook& cb, const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  auto out = open_out(p);
  const Eigen::Index n = cb.entries.rows();
  out << "index,azimuth_rad,elevation_rad";
  for (Eigen::Index i = 0; i < n; ++i) out << ",re_" << i;
  for (Eigen::Index i = 0; i < n; ++i) out << ",im_" << i;
  out << '\n';
  for (std::size_t k = 0; k < cb.size(); ++k) {
    out << k << ',' << format_float(cb.azimuth_of(k)) << ',' << format_float(cb.elevation_of(k));
    const auto col = cb.entries.col(static_cast<Eigen::Index>(k));
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_float(col[i].real());
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_float(col[i].imag());
    out << '\n';
  }
}

}  // namespace mmbeam
