// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "mmbeam/config_io.hpp"
#include "mmbeam/errors.hpp"
#include "mmbeam/report.hpp"
#include "mmbeam/rng.hpp"

using namespace mmbeam;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("mmbeam_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ScenarioConfig tiny_config() {
  ScenarioConfig cfg;
  cfg.bs_array = ArrayGeometry::planar_array(4, 2);
  cfg.ue_array = ArrayGeometry::linear_array(4);
  cfg.codebook_sizes = {4, 2, 4};
  cfg.channel_params.n_clusters = 2;
  cfg.channel_params.rays_per_cluster = 3;
  cfg.snr_grid_db = {10.0};
  cfg.beta_list = {1.0, 4.0};
  cfg.p_length = 3;
  cfg.estimators = {"db", "perfect_csi", "phbf3"};
  cfg.n_trials = 3;
  cfg.master_seed = 7;
  return cfg;
}

}  // namespace

TEST_SUITE("config_report") {

TEST_CASE("config JSON round-trips") {
  const ScenarioConfig cfg = tiny_config();
  const nlohmann::json j = config_to_json(cfg);
  const ScenarioConfig back = config_from_json(j);
  CHECK(config_to_json(back).dump() == j.dump());
}

TEST_CASE("config validation catches schema and range errors") {
  nlohmann::json j = config_to_json(tiny_config());
  SUBCASE("unknown keys are rejected") {
    j["typo_key"] = 1;
    CHECK_THROWS_AS(config_from_json(j), ConfigError);
  }
  SUBCASE("bad estimator names are rejected") {
    j["estimators"] = {"perfect_csi", "oracle"};
    CHECK_THROWS_AS(config_from_json(j), ConfigError);
  }
  SUBCASE("-inf is a valid BS #2 offset") {
    j["mode"] = "two_node";
    j["bs2_power_offset_db"] = "-inf";
    const ScenarioConfig cfg = config_from_json(j);
    CHECK(std::isinf(cfg.bs2_power_offset_db));
    CHECK(config_to_json(cfg)["bs2_power_offset_db"] == "-inf");
  }
  SUBCASE("offsets above -6 dB are rejected") {
    j["bs2_power_offset_db"] = -3.0;
    CHECK_THROWS_AS(config_from_json(j), ConfigError);
  }
}

TEST_CASE("overrides follow dotted paths and JSON coercion") {
  nlohmann::json j = config_to_json(tiny_config());
  apply_override(j, "channel.n_clusters=5");
  apply_override(j, "snr_grid_db=[0,5,10]");
  apply_override(j, "mode=two_node");
  apply_override(j, "master_seed=99");
  const ScenarioConfig cfg = config_from_json(j);
  CHECK(cfg.channel_params.n_clusters == 5);
  CHECK(cfg.snr_grid_db == std::vector<double>{0.0, 5.0, 10.0});
  CHECK(cfg.mode == SearchMode::two_node);
  CHECK(cfg.master_seed == 99);
  CHECK_THROWS_AS(apply_override(j, "no_equals_sign"), ConfigError);
}

TEST_CASE("parse errors carry line and column") {
  const fs::path dir = temp_dir("parse");
  const fs::path bad = dir / "bad.json";
  std::ofstream(bad) << "{\n  \"mode\": \"single_node\",\n  oops\n}\n";
  try {
    load_config_json(bad.string());
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":3:") != std::string::npos);  // the bad token sits on line 3
  }
}

TEST_CASE("float formatting survives a round-trip") {
  RngStream rng(123);
  for (int i = 0; i < 1000; ++i) {
    const double v = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform(-6.0, 6.0));
    const double back = std::strtod(format_float(v).c_str(), nullptr);
    CHECK(back == v);
  }
}

TEST_CASE("output bundle schemas and reproducibility") {
  const ScenarioConfig cfg = tiny_config();
  const ScenarioResult result = run_scenario(cfg);
  const fs::path dir = temp_dir("bundle");
  const OutputBundle bundle = write_outputs(cfg, result, dir.string(), 1, false);

  SUBCASE("headers are pinned") {
    CHECK(slurp(bundle.rate_curve_csv).rfind("estimator,snr_db,mean_rate_bits,ci_half_width,n\n",
                                             0) == 0);
    CHECK(slurp(bundle.sinr_cdf_csv).rfind("snr_db,beta,sinr_db,cum_fraction\n", 0) == 0);
    CHECK(slurp(bundle.records_csv)
              .rfind("trial_id,snr_db,estimator,beta,k1,k2,node,achieved_rate_bits,"
                     "baseline_rate_bits,baseline_sinr_db,probe_symbols\n",
                     0) == 0);
  }

  SUBCASE("metadata echo reproduces byte-identical CSVs") {
    const nlohmann::json meta = nlohmann::json::parse(slurp(bundle.metadata_json));
    const ScenarioConfig echoed = config_from_json(meta.at("config"));
    const ScenarioResult again = run_scenario(echoed);
    const fs::path dir2 = temp_dir("bundle2");
    const OutputBundle b2 = write_outputs(echoed, again, dir2.string(), 1, false);
    CHECK(slurp(b2.rate_curve_csv) == slurp(bundle.rate_curve_csv));
    CHECK(slurp(b2.sinr_cdf_csv) == slurp(bundle.sinr_cdf_csv));
    CHECK(slurp(b2.records_csv) == slurp(bundle.records_csv));
  }

  SUBCASE("multi-beta runs tag estimator labels") {
    const std::string csv = slurp(bundle.rate_curve_csv);
    CHECK(csv.find("phbf3@b1,") != std::string::npos);
    CHECK(csv.find("phbf3@b4,") != std::string::npos);
    CHECK(csv.find("perfect_csi,") != std::string::npos);  // no suffix without training
  }
}

TEST_CASE("codebook dump") {
  const fs::path dir = temp_dir("codebook");

  SUBCASE("UE codebook of the full-scale setup has 16 rows") {
    const Codebook cb = build_codebook(ArrayGeometry::linear_array(8), 16, 1);
    const fs::path path = dir / "ue.csv";
    dump_codebook_csv(cb, path.string());
    const std::string text = slurp(path.string());
    std::size_t rows = 0;
    for (char c : text)
      if (c == '\n') ++rows;
    CHECK(rows == 17);  // header + 16 entries
  }

  SUBCASE("1x1 grid dumps the domain origin and values match steering") {
    const auto g = ArrayGeometry::linear_array(4);
    const Codebook cb = build_codebook(g, 1, 1);
    const fs::path path = dir / "one.csv";
    dump_codebook_csv(cb, path.string());
    std::ifstream in(path.string());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    CHECK(header == "index,azimuth_rad,elevation_rad,re_0,re_1,re_2,re_3,im_0,im_1,im_2,im_3");
    std::stringstream ss(row);
    std::string field;
    std::vector<double> vals;
    std::getline(ss, field, ',');  // index
    while (std::getline(ss, field, ',')) vals.push_back(std::strtod(field.c_str(), nullptr));
    REQUIRE(vals.size() == 10);
    const Eigen::VectorXcd expect = steering_vector(g, vals[0], vals[1]);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(vals[2 + i] - expect[i].real()) < 1e-12);
      CHECK(std::abs(vals[6 + i] - expect[i].imag()) < 1e-12);
    }
  }
}

}  // TEST_SUITE
