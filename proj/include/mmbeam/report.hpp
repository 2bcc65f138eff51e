// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "mmbeam/codebook.hpp"
#include "mmbeam/scenario.hpp"

namespace mmbeam {

struct OutputBundle {
  std::string rate_curve_csv;
  std::string sinr_cdf_csv;
  std::string records_csv;
  std::string metadata_json;
  std::string plot_script;
};

// 17-significant-digit float formatting used for all CSV values, so pinned
// (config, seed) runs are byte-identical.
std::string format_float(double v);

// Writes rate_curve.csv, sinr_cdf.csv, records.csv, metadata.json and
// plots.gp under out_dir (created if needed). Only metadata carries a
// timestamp; pass include_timestamp = false for golden comparisons.
OutputBundle write_outputs(const ScenarioConfig& cfg, const ScenarioResult& result,
                           const std::string& out_dir, unsigned n_threads,
                           bool include_timestamp = true);

// index,azimuth_rad,elevation_rad,re_0..re_{N-1},im_0..im_{N-1}
void dump_codebook_csv(const Codebook& cb, const std::string& path);

}  // namespace mmbeam
