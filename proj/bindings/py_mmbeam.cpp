// SPDX-License-Identifier: Apache-2.0
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <json.hpp>

#include "mmbeam/config_io.hpp"
#include "mmbeam/errors.hpp"
#include "mmbeam/report.hpp"
#include "mmbeam/scenario.hpp"
#include "mmbeam/selfcheck.hpp"
#include "mmbeam/version.hpp"

namespace py = pybind11;
using namespace mmbeam;

namespace {

SearchResult py_search_secondary(SearchMode mode, const ChannelRealization& h1,
                                 const ChannelRealization* h2, const BeamPair& baseline,
                                 const Codebook& bs1_cb, const Codebook* bs2_cb,
                                 const Codebook& ue_cb, Estimator estimator, const PowerConfig& p,
                                 const TrainingOptions& train) {
  return search_secondary(mode, h1, h2, baseline, bs1_cb, bs2_cb, ue_cb, estimator, p, train);
}

}  // namespace

PYBIND11_MODULE(_mmbeam, m) {
  m.doc() = "Two-step sequential hybrid beamforming link-level simulator";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<SingularCombinerError>(m, "SingularCombinerError", PyExc_ArithmeticError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);

  py::enum_<ArrayKind>(m, "ArrayKind")
      .value("linear", ArrayKind::linear)
      .value("planar", ArrayKind::planar);

  py::class_<ArrayGeometry>(m, "ArrayGeometry")
      .def(py::init<>())
      .def_static("linear", &ArrayGeometry::linear_array, py::arg("n"), py::arg("spacing") = 0.5)
      .def_static("planar", &ArrayGeometry::planar_array, py::arg("n_h"), py::arg("n_v"),
                  py::arg("spacing") = 0.5)
      .def_readwrite("kind", &ArrayGeometry::kind)
      .def_readwrite("n_horizontal", &ArrayGeometry::n_horizontal)
      .def_readwrite("n_vertical", &ArrayGeometry::n_vertical)
      .def_readwrite("element_spacing", &ArrayGeometry::element_spacing)
      .def_property_readonly("n_elements", &ArrayGeometry::n_elements);

  m.def("steering_vector", &steering_vector, py::arg("geometry"), py::arg("azimuth"),
        py::arg("elevation"));

  py::class_<Ray>(m, "Ray")
      .def(py::init<>())
      .def_readwrite("gain", &Ray::gain)
      .def_readwrite("tx_azimuth", &Ray::tx_azimuth)
      .def_readwrite("tx_elevation", &Ray::tx_elevation)
      .def_readwrite("rx_azimuth", &Ray::rx_azimuth);

  py::class_<ClusterChannelParams>(m, "ClusterChannelParams")
      .def(py::init<>())
      .def_readwrite("n_clusters", &ClusterChannelParams::n_clusters)
      .def_readwrite("rays_per_cluster", &ClusterChannelParams::rays_per_cluster)
      .def_readwrite("angle_spread_deg", &ClusterChannelParams::angle_spread_deg)
      .def_readwrite("power_decay_db_per_cluster", &ClusterChannelParams::power_decay_db_per_cluster)
      .def_readwrite("seed", &ClusterChannelParams::seed);

  py::class_<ChannelRealization>(m, "ChannelRealization")
      .def_static("from_matrix", &ChannelRealization::from_matrix, py::arg("matrix"),
                  py::arg("rays") = std::vector<Ray>{})
      .def_static("from_rays", &ChannelRealization::from_rays, py::arg("rays"), py::arg("tx"),
                  py::arg("rx"))
      .def_readonly("matrix", &ChannelRealization::matrix)
      .def_readonly("ray_list", &ChannelRealization::ray_list)
      .def_readonly("frobenius_norm_sq", &ChannelRealization::frobenius_norm_sq);

  m.def(
      "generate_channel",
      [](const ClusterChannelParams& params, const ArrayGeometry& tx, const ArrayGeometry& rx) {
        return generate_channel(params, tx, rx);
      },
      py::arg("params"), py::arg("tx"), py::arg("rx"));

  py::enum_<NodeId>(m, "NodeId").value("bs1", NodeId::bs1).value("bs2", NodeId::bs2);

  py::class_<BeamPair>(m, "BeamPair")
      .def(py::init<>())
      .def(py::init([](std::size_t k1, std::size_t k2, NodeId node) {
             return BeamPair{k1, k2, node};
           }),
           py::arg("bs_index"), py::arg("ue_index"), py::arg("node") = NodeId::bs1)
      .def_readwrite("bs_index", &BeamPair::bs_index)
      .def_readwrite("ue_index", &BeamPair::ue_index)
      .def_readwrite("node", &BeamPair::node)
      .def("__eq__", [](const BeamPair& a, const BeamPair& b) { return a == b; })
      .def("__repr__", [](const BeamPair& p) {
        std::ostringstream s;
        s << "BeamPair(bs_index=" << p.bs_index << ", ue_index=" << p.ue_index << ", node="
          << (p.node == NodeId::bs1 ? "bs1" : "bs2") << ")";
        return s.str();
      });

  py::class_<Codebook>(m, "Codebook")
      .def_readonly("geometry", &Codebook::geometry)
      .def_readonly("k_azimuth", &Codebook::k_azimuth)
      .def_readonly("k_elevation", &Codebook::k_elevation)
      .def_readonly("entries", &Codebook::entries)
      .def_property_readonly("size", &Codebook::size)
      .def("entry", &Codebook::entry, py::arg("k"))
      .def("azimuth_of", &Codebook::azimuth_of, py::arg("k"))
      .def("elevation_of", &Codebook::elevation_of, py::arg("k"));

  m.def("build_codebook", &build_codebook, py::arg("geometry"), py::arg("k_azimuth"),
        py::arg("k_elevation"));

  py::class_<PowerConfig>(m, "PowerConfig")
      .def(py::init<>())
      .def_static("from_snr_db", &PowerConfig::from_snr_db, py::arg("snr_db"), py::arg("beta"))
      .def_readwrite("sigma_x_sq", &PowerConfig::sigma_x_sq)
      .def_readwrite("sigma_n_sq", &PowerConfig::sigma_n_sq)
      .def_readwrite("sigma_sp_sq", &PowerConfig::sigma_sp_sq)
      .def_readwrite("beta", &PowerConfig::beta)
      .def_readwrite("rho", &PowerConfig::rho);

  py::class_<EffectiveChannel2x2>(m, "EffectiveChannel2x2")
      .def(py::init<>())
      .def_readwrite("h", &EffectiveChannel2x2::h)
      .def_readwrite("r", &EffectiveChannel2x2::r);

  m.def("baseline_gain", &baseline_gain, py::arg("H"), py::arg("f"), py::arg("w"));
  m.def("effective_channel_single_node", &effective_channel_single_node, py::arg("H1"),
        py::arg("f_base"), py::arg("f_test"), py::arg("w_base"), py::arg("w_test"));
  m.def("effective_channel_two_node", &effective_channel_two_node, py::arg("H1"), py::arg("H2"),
        py::arg("f_base"), py::arg("f_test"), py::arg("w_base"), py::arg("w_test"));
  m.def("sum_rate_cost", &sum_rate_cost, py::arg("eff"), py::arg("p"));
  m.def("rate_bits", &rate_bits, py::arg("eff"), py::arg("p"));

  py::class_<GTerms>(m, "GTerms")
      .def_readonly("g1", &GTerms::g1)
      .def_readonly("g2_approx", &GTerms::g2_approx)
      .def_readonly("g2_exact", &GTerms::g2_exact);
  m.def("g_terms_exact", &g_terms_exact, py::arg("eff"), py::arg("p"));

  m.def(
      "digital_beamforming_reference",
      [](const ChannelRealization& h, const PowerConfig& p, int n_streams) {
        return digital_beamforming_reference(h, p, n_streams);
      },
      py::arg("H"), py::arg("p"), py::arg("n_streams") = 2);
  m.def("baseline_sinr_during_training", &baseline_sinr_during_training, py::arg("eff"),
        py::arg("p"));

  py::enum_<PilotMode>(m, "PilotMode")
      .value("conjugate_data", PilotMode::conjugate_data)
      .value("independent", PilotMode::independent);
  py::enum_<SymbolAlphabet>(m, "SymbolAlphabet")
      .value("qpsk", SymbolAlphabet::qpsk)
      .value("gaussian", SymbolAlphabet::gaussian);

  py::class_<TrainingFrame>(m, "TrainingFrame")
      .def(py::init<>())
      .def_readwrite("p_length", &TrainingFrame::p_length)
      .def_readwrite("pilot_mode", &TrainingFrame::pilot_mode)
      .def_readwrite("sigma_s", &TrainingFrame::sigma_s)
      .def_readwrite("sigma_sp", &TrainingFrame::sigma_sp)
      .def_readwrite("s1", &TrainingFrame::s1)
      .def_readwrite("s2", &TrainingFrame::s2)
      .def_readwrite("sp", &TrainingFrame::sp);

  py::class_<Observation>(m, "Observation")
      .def_readonly("y", &Observation::y)
      .def_readonly("frame", &Observation::frame)
      .def_readonly("noise_realization_seed", &Observation::noise_realization_seed);

  m.def(
      "synth_frame",
      [](std::size_t p_length, const PowerConfig& p, PilotMode mode, std::uint64_t seed,
         SymbolAlphabet alphabet) {
        RngStream rng(seed);
        return synth_frame(p_length, p, mode, rng, alphabet);
      },
      py::arg("p_length"), py::arg("p"), py::arg("pilot_mode"), py::arg("seed"),
      py::arg("alphabet") = SymbolAlphabet::qpsk);
  m.def(
      "observe",
      [](const EffectiveChannel2x2& eff, const TrainingFrame& frame, const PowerConfig& p,
         std::uint64_t seed) {
        RngStream rng(seed);
        Observation obs = observe(eff, frame, p, rng);
        obs.noise_realization_seed = seed;
        return obs;
      },
      py::arg("eff"), py::arg("frame"), py::arg("p"), py::arg("seed"));

  m.def("estimate_ls", &estimate_ls, py::arg("obs"));

  py::class_<PowerTermEstimates>(m, "PowerTermEstimates")
      .def_readonly("p11", &PowerTermEstimates::p11)
      .def_readonly("p21", &PowerTermEstimates::p21)
      .def_readonly("p12", &PowerTermEstimates::p12)
      .def_readonly("p22", &PowerTermEstimates::p22);
  m.def("estimate_power_terms", &estimate_power_terms, py::arg("obs"));

  py::class_<CrossTermEstimates>(m, "CrossTermEstimates")
      .def_readonly("h11h22", &CrossTermEstimates::h11h22)
      .def_readonly("h12h21", &CrossTermEstimates::h12h21);
  m.def("estimate_cross_term", &estimate_cross_term, py::arg("obs"));

  m.def("cost_phbf1", &cost_phbf1, py::arg("obs"), py::arg("p"), py::arg("r"));
  m.def("cost_phbf2", &cost_phbf2, py::arg("obs"), py::arg("p"), py::arg("r"));
  m.def("cost_phbf3", &cost_phbf3, py::arg("obs"), py::arg("p"), py::arg("r"));

  py::enum_<SearchMode>(m, "SearchMode")
      .value("single_node", SearchMode::single_node)
      .value("two_node", SearchMode::two_node);
  py::enum_<Estimator>(m, "Estimator")
      .value("perfect_csi", Estimator::perfect_csi)
      .value("phbf1", Estimator::phbf1)
      .value("phbf2", Estimator::phbf2)
      .value("phbf3", Estimator::phbf3);

  py::class_<TrainingOptions>(m, "TrainingOptions")
      .def(py::init<>())
      .def_readwrite("p_length", &TrainingOptions::p_length)
      .def_readwrite("pilot_mode", &TrainingOptions::pilot_mode)
      .def_readwrite("alphabet", &TrainingOptions::alphabet)
      .def_readwrite("seed", &TrainingOptions::seed);

  py::class_<ScoredPair>(m, "ScoredPair")
      .def_readonly("pair", &ScoredPair::pair)
      .def_readonly("score", &ScoredPair::score);

  py::class_<SearchResult>(m, "SearchResult")
      .def_readonly("best_pair", &SearchResult::best_pair)
      .def_readonly("best_score", &SearchResult::best_score)
      .def_readonly("ranked_pairs", &SearchResult::ranked_pairs)
      .def_readonly("n_evaluated", &SearchResult::n_evaluated)
      .def_readonly("estimator_used", &SearchResult::estimator_used);

  m.def("select_baseline", &select_baseline, py::arg("H1"), py::arg("bs_cb"), py::arg("ue_cb"));
  m.def("search_secondary", &py_search_secondary, py::arg("mode"), py::arg("H1"),
        py::arg("H2") = nullptr, py::arg("baseline"), py::arg("bs1_cb"),
        py::arg("bs2_cb") = nullptr, py::arg("ue_cb"), py::arg("estimator"), py::arg("p"),
        py::arg("train") = TrainingOptions{});
  m.def("backup_pair", &backup_pair, py::arg("result"));

  py::class_<CodebookSizes>(m, "CodebookSizes")
      .def(py::init<>())
      .def_readwrite("bs_azimuth", &CodebookSizes::bs_azimuth)
      .def_readwrite("bs_elevation", &CodebookSizes::bs_elevation)
      .def_readwrite("ue_azimuth", &CodebookSizes::ue_azimuth);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("mode", &ScenarioConfig::mode)
      .def_readwrite("bs_array", &ScenarioConfig::bs_array)
      .def_readwrite("ue_array", &ScenarioConfig::ue_array)
      .def_readwrite("codebook_sizes", &ScenarioConfig::codebook_sizes)
      .def_readwrite("channel_params", &ScenarioConfig::channel_params)
      .def_readwrite("snr_grid_db", &ScenarioConfig::snr_grid_db)
      .def_readwrite("beta_list", &ScenarioConfig::beta_list)
      .def_readwrite("p_length", &ScenarioConfig::p_length)
      .def_readwrite("estimators", &ScenarioConfig::estimators)
      .def_readwrite("n_trials", &ScenarioConfig::n_trials)
      .def_readwrite("bs2_power_offset_db", &ScenarioConfig::bs2_power_offset_db)
      .def_readwrite("master_seed", &ScenarioConfig::master_seed)
      .def_readwrite("pilot_mode", &ScenarioConfig::pilot_mode)
      .def_readwrite("symbol_alphabet", &ScenarioConfig::symbol_alphabet)
      .def_readwrite("sample_rate_hz", &ScenarioConfig::sample_rate_hz)
      .def_static("from_json", [](const std::string& text) {
        return config_from_json(nlohmann::json::parse(text));
      })
      .def("to_json", [](const ScenarioConfig& cfg) { return config_to_json(cfg).dump(2); });

  py::class_<TrialRecord>(m, "TrialRecord")
      .def_readonly("trial_id", &TrialRecord::trial_id)
      .def_readonly("snr_db", &TrialRecord::snr_db)
      .def_readonly("estimator", &TrialRecord::estimator)
      .def_readonly("beta", &TrialRecord::beta)
      .def_readonly("chosen_pair", &TrialRecord::chosen_pair)
      .def_readonly("achieved_rate_bits", &TrialRecord::achieved_rate_bits)
      .def_readonly("baseline_rate_bits", &TrialRecord::baseline_rate_bits)
      .def_readonly("baseline_sinr_db", &TrialRecord::baseline_sinr_db)
      .def_readonly("probe_symbols", &TrialRecord::probe_symbols);

  py::class_<SinrSample>(m, "SinrSample")
      .def_readonly("trial_id", &SinrSample::trial_id)
      .def_readonly("snr_db", &SinrSample::snr_db)
      .def_readonly("beta", &SinrSample::beta)
      .def_readonly("sinr_db", &SinrSample::sinr_db)
      .def_readonly("snr_no_training_db", &SinrSample::snr_no_training_db);

  py::class_<ScenarioResult>(m, "ScenarioResult")
      .def_readonly("records", &ScenarioResult::records)
      .def_readonly("sinr_samples", &ScenarioResult::sinr_samples);

  m.def("run_scenario", &run_scenario, py::arg("cfg"), py::arg("n_threads") = 1,
        py::call_guard<py::gil_scoped_release>());

  py::class_<RateCurvePoint>(m, "RateCurvePoint")
      .def_readonly("estimator", &RateCurvePoint::estimator)
      .def_readonly("beta", &RateCurvePoint::beta)
      .def_readonly("snr_db", &RateCurvePoint::snr_db)
      .def_readonly("mean_rate_bits", &RateCurvePoint::mean_rate_bits)
      .def_readonly("ci_half_width", &RateCurvePoint::ci_half_width)
      .def_readonly("n", &RateCurvePoint::n);
  m.def("aggregate_rate_curve", &aggregate_rate_curve, py::arg("records"));

  py::class_<CdfPoint>(m, "CdfPoint")
      .def_readonly("value", &CdfPoint::value)
      .def_readonly("cum_fraction", &CdfPoint::cum_fraction);
  m.def("empirical_cdf", &empirical_cdf, py::arg("samples"));
  m.def("aggregate_sinr_cdf", &aggregate_sinr_cdf, py::arg("samples"), py::arg("beta"));

  m.def(
      "write_outputs",
      [](const ScenarioConfig& cfg, const ScenarioResult& result, const std::string& out_dir,
         unsigned n_threads, bool include_timestamp) {
        const OutputBundle b = write_outputs(cfg, result, out_dir, n_threads, include_timestamp);
        py::dict d;
        d["rate_curve_csv"] = b.rate_curve_csv;
        d["sinr_cdf_csv"] = b.sinr_cdf_csv;
        d["records_csv"] = b.records_csv;
        d["metadata_json"] = b.metadata_json;
        d["plot_script"] = b.plot_script;
        return d;
      },
      py::arg("cfg"), py::arg("result"), py::arg("out_dir"), py::arg("n_threads") = 1,
      py::arg("include_timestamp") = true);

  m.def("run_selfcheck", []() {
    py::list out;
    for (const CheckResult& c : run_selfcheck()) {
      py::dict d;
      d["name"] = c.name;
      d["passed"] = c.passed;
      d["detail"] = c.detail;
      out.append(d);
    }
    return out;
  });
}
