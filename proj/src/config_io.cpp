// SPDX-License-Identifier: Apache-2.0
#include "mmbeam/config_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "mmbeam/errors.hpp"

namespace mmbeam {

namespace {

using nlohmann::json;

void require_keys_known(const json& j, const std::set<std::string>& known, const std::string& ctx) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.contains(key)) throw ConfigError("config: unknown key '" + ctx + key + "'");
  }
}

ArrayGeometry array_from_json(const json& j, const std::string& ctx) {
  require_keys_known(j, {"kind", "n_horizontal", "n_vertical", "element_spacing"}, ctx);
  ArrayGeometry g;
  const std::string kind = j.value("kind", "linear");
  if (kind == "linear")
    g.kind = ArrayKind::linear;
  else if (kind == "planar")
    g.kind = ArrayKind::planar;
  else
    throw ConfigError("config: " + ctx + "kind must be 'linear' or 'planar'");
  g.n_horizontal = j.value("n_horizontal", std::size_t{1});
  g.n_vertical = j.value("n_vertical", std::size_t{1});
  g.element_spacing = j.value("element_spacing", 0.5);
  g.validate();
  return g;
}

json array_to_json(const ArrayGeometry& g) {
  return json{{"kind", g.kind == ArrayKind::linear ? "linear" : "planar"},
              {"n_horizontal", g.n_horizontal},
              {"n_vertical", g.n_vertical},
              {"element_spacing", g.element_spacing}};
}

double offset_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "-inf") return -std::numeric_limits<double>::infinity();
    throw ConfigError("config: bs2_power_offset_db must be a number or \"-inf\"");
  }
  return j.get<double>();
}

}  // namespace

ScenarioConfig config_from_json(const nlohmann::json& j) {
  require_keys_known(j,
                     {"mode", "bs_array", "ue_array", "codebook", "channel", "snr_grid_db",
                      "beta_list", "p_length", "estimators", "n_trials", "bs2_power_offset_db",
                      "master_seed", "pilot_mode", "symbol_alphabet", "sample_rate_hz",
                      "collect_sinr_samples"},
                     "");
  ScenarioConfig cfg;

  const std::string mode = j.value("mode", "single_node");
  if (mode == "single_node")
    cfg.mode = SearchMode::single_node;
  else if (mode == "two_node")
    cfg.mode = SearchMode::two_node;
  else
    throw ConfigError("config: mode must be 'single_node' or 'two_node'");

  if (j.contains("bs_array")) cfg.bs_array = array_from_json(j.at("bs_array"), "bs_array.");
  if (j.contains("ue_array")) cfg.ue_array = array_from_json(j.at("ue_array"), "ue_array.");

  if (j.contains("codebook")) {
    const json& c = j.at("codebook");
    require_keys_known(c, {"bs_azimuth", "bs_elevation", "ue_azimuth"}, "codebook.");
    cfg.codebook_sizes.bs_azimuth = c.value("bs_azimuth", cfg.codebook_sizes.bs_azimuth);
    cfg.codebook_sizes.bs_elevation = c.value("bs_elevation", cfg.codebook_sizes.bs_elevation);
    cfg.codebook_sizes.ue_azimuth = c.value("ue_azimuth", cfg.codebook_sizes.ue_azimuth);
  }

  if (j.contains("channel")) {
    const json& c = j.at("channel");
    require_keys_known(
        c, {"n_clusters", "rays_per_cluster", "angle_spread_deg", "power_decay_db_per_cluster"},
        "channel.");
    cfg.channel_params.n_clusters = c.value("n_clusters", cfg.channel_params.n_clusters);
    cfg.channel_params.rays_per_cluster =
        c.value("rays_per_cluster", cfg.channel_params.rays_per_cluster);
    cfg.channel_params.angle_spread_deg =
        c.value("angle_spread_deg", cfg.channel_params.angle_spread_deg);
    cfg.channel_params.power_decay_db_per_cluster =
        c.value("power_decay_db_per_cluster", cfg.channel_params.power_decay_db_per_cluster);
  }

  if (j.contains("snr_grid_db")) cfg.snr_grid_db = j.at("snr_grid_db").get<std::vector<double>>();
  if (j.contains("beta_list")) cfg.beta_list = j.at("beta_list").get<std::vector<double>>();
  cfg.p_length = j.value("p_length", cfg.p_length);
  if (j.contains("estimators")) cfg.estimators = j.at("estimators").get<std::vector<std::string>>();
  cfg.n_trials = j.value("n_trials", cfg.n_trials);
  if (j.contains("bs2_power_offset_db"))
    cfg.bs2_power_offset_db = offset_from_json(j.at("bs2_power_offset_db"));
  cfg.master_seed = j.value("master_seed", cfg.master_seed);

  const std::string pilot = j.value("pilot_mode", "conjugate_data");
  if (pilot == "conjugate_data")
    cfg.pilot_mode = PilotMode::conjugate_data;
  else if (pilot == "independent")
    cfg.pilot_mode = PilotMode::independent;
  else
    throw ConfigError("config: pilot_mode must be 'conjugate_data' or 'independent'");

  const std::string alphabet = j.value("symbol_alphabet", "qpsk");
  if (alphabet == "qpsk")
    cfg.symbol_alphabet = SymbolAlphabet::qpsk;
  else if (alphabet == "gaussian")
    cfg.symbol_alphabet = SymbolAlphabet::gaussian;
  else
    throw ConfigError("config: symbol_alphabet must be 'qpsk' or 'gaussian'");

  cfg.sample_rate_hz = j.value("sample_rate_hz", cfg.sample_rate_hz);
  cfg.collect_sinr_samples = j.value("collect_sinr_samples", cfg.collect_sinr_samples);
  cfg.validate();
  return cfg;
}

nlohmann::json config_to_json(const ScenarioConfig& cfg) {
  json j;
  j["mode"] = cfg.mode == SearchMode::single_node ? "single_node" : "two_node";
  j["bs_array"] = array_to_json(cfg.bs_array);
  j["ue_array"] = array_to_json(cfg.ue_array);
  j["codebook"] = {{"bs_azimuth", cfg.codebook_sizes.bs_azimuth},
                   {"bs_elevation", cfg.codebook_sizes.bs_elevation},
                   {"ue_azimuth", cfg.codebook_sizes.ue_azimuth}};
  j["channel"] = {{"n_clusters", cfg.channel_params.n_clusters},
                  {"rays_per_cluster", cfg.channel_params.rays_per_cluster},
                  {"angle_spread_deg", cfg.channel_params.angle_spread_deg},
                  {"power_decay_db_per_cluster", cfg.channel_params.power_decay_db_per_cluster}};
  j["snr_grid_db"] = cfg.snr_grid_db;
  j["beta_list"] = cfg.beta_list;
  j["p_length"] = cfg.p_length;
  j["estimators"] = cfg.estimators;
  j["n_trials"] = cfg.n_trials;
  if (std::isinf(cfg.bs2_power_offset_db))
    j["bs2_power_offset_db"] = "-inf";
  else
    j["bs2_power_offset_db"] = cfg.bs2_power_offset_db;
  j["master_seed"] = cfg.master_seed;
  j["pilot_mode"] = cfg.pilot_mode == PilotMode::conjugate_data ? "conjugate_data" : "independent";
  j["symbol_alphabet"] = cfg.symbol_alphabet == SymbolAlphabet::qpsk ? "qpsk" : "gaussian";
  j["sample_rate_hz"] = cfg.sample_rate_hz;
  j["collect_sinr_samples"] = cfg.collect_sinr_samples;
  return j;
}

nlohmann::json load_config_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Map the byte offset to line:column for a readable message.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError(path + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": JSON parse error: " + e.what());
  }
}

void apply_override(nlohmann::json& j, const std::string& key_eq_value) {
  const auto eq = key_eq_value.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("override must look like KEY=VALUE, got '" + key_eq_value + "'");
  const std::string path = key_eq_value.substr(0, eq);
  const std::string raw = key_eq_value.substr(eq + 1);

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // plain string
  }

  json* node = &j;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw ConfigError("override: empty path segment in '" + path + "'");
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

}  // namespace mmbeam
