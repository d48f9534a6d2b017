// Python bindings. Submodules mirror the C++ namespaces; structs are plain
// mutable records with the same field names as the headers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fsorail/atmosphere.hpp"
#include "fsorail/config.hpp"
#include "fsorail/divergence_control.hpp"
#include "fsorail/geometry.hpp"
#include "fsorail/optics.hpp"
#include "fsorail/presets.hpp"
#include "fsorail/receiver.hpp"
#include "fsorail/scenario.hpp"
#include "fsorail/units.hpp"
#include "fsorail/version.hpp"

namespace py = pybind11;
using namespace fsorail;

PYBIND11_MODULE(_fsorail, m) {
    m.doc() = "Free-space optical link simulator for rail corridors";
    m.attr("__version__") = kVersion;

    m.def("dbm_from_watts", &dbm_from_watts, py::arg("watts"));
    m.def("watts_from_dbm", &watts_from_dbm, py::arg("dbm"));
    m.def("db_from_linear", &db_from_linear, py::arg("ratio"));
    m.def("linear_from_db", &linear_from_db, py::arg("db"));
    m.def("mps_from_kmh", &mps_from_kmh, py::arg("kmh"));

    auto geo = m.def_submodule("geometry", "Track, station, and beam geometry");
    py::enum_<geometry::PlacementMode>(geo, "PlacementMode")
        .value("Gantry", geometry::PlacementMode::Gantry)
        .value("Trackside", geometry::PlacementMode::Trackside);
    py::class_<geometry::StationPlacement>(geo, "StationPlacement")
        .def(py::init<>())
        .def_readwrite("mode", &geometry::StationPlacement::mode)
        .def_readwrite("vertical_offset_m", &geometry::StationPlacement::vertical_offset_m)
        .def_readwrite("lateral_offset_m", &geometry::StationPlacement::lateral_offset_m)
        .def_readwrite("station_spacing_m", &geometry::StationPlacement::station_spacing_m)
        .def("effective_vertical_m", &geometry::StationPlacement::effective_vertical_m)
        .def("validate", &geometry::StationPlacement::validate);
    py::class_<geometry::TrainState>(geo, "TrainState")
        .def(py::init<>())
        .def_readwrite("position_m", &geometry::TrainState::position_m)
        .def_readwrite("speed_mps", &geometry::TrainState::speed_mps)
        .def_readwrite("transceiver_offsets_m", &geometry::TrainState::transceiver_offsets_m)
        .def("validate", &geometry::TrainState::validate);
    py::class_<geometry::LinkGeometry>(geo, "LinkGeometry")
        .def(py::init<>())
        .def_readwrite("longitudinal_m", &geometry::LinkGeometry::longitudinal_m)
        .def_readwrite("vertical_m", &geometry::LinkGeometry::vertical_m)
        .def_readwrite("slant_m", &geometry::LinkGeometry::slant_m)
        .def_readwrite("half_angle_rad", &geometry::LinkGeometry::half_angle_rad)
        .def_readwrite("axial_m", &geometry::LinkGeometry::axial_m);
    geo.def("slant_distance", &geometry::slant_distance, py::arg("vertical_m"),
            py::arg("longitudinal_m"));
    geo.def("adaptive_half_angle", &geometry::adaptive_half_angle,
            py::arg("rx_radius_m"), py::arg("slant_m"));
    geo.def("axial_distance", &geometry::axial_distance, py::arg("half_angle_rad"),
            py::arg("slant_m"));
    geo.def("link_geometry", &geometry::link_geometry, py::arg("train"),
            py::arg("transceiver_index"), py::arg("station_position_m"),
            py::arg("placement"), py::arg("rx_radius_m"));
    geo.def("link_geometry_from_slant", &geometry::link_geometry_from_slant,
            py::arg("slant_m"), py::arg("effective_vertical_m"), py::arg("rx_radius_m"));
    geo.def("nearest_station_id", &geometry::nearest_station_id, py::arg("position_m"),
            py::arg("station_spacing_m"));

    auto opt = m.def_submodule("optics", "Transmit/receive gains and the link budget");
    py::enum_<optics::BeamOrigin>(opt, "BeamOrigin")
        .value("Fixed", optics::BeamOrigin::Fixed)
        .value("Adaptive", optics::BeamOrigin::Adaptive);
    py::class_<optics::OpticalParams>(opt, "OpticalParams")
        .def(py::init<>())
        .def_readwrite("wavelength_m", &optics::OpticalParams::wavelength_m)
        .def_readwrite("tx_power_w", &optics::OpticalParams::tx_power_w)
        .def_readwrite("tx_aperture_area_m2", &optics::OpticalParams::tx_aperture_area_m2)
        .def_readwrite("rx_aperture_area_m2", &optics::OpticalParams::rx_aperture_area_m2)
        .def_readwrite("system_loss", &optics::OpticalParams::system_loss)
        .def_readwrite("tx_pointing_error_rad", &optics::OpticalParams::tx_pointing_error_rad)
        .def_readwrite("rx_pointing_error_rad", &optics::OpticalParams::rx_pointing_error_rad)
        .def("tx_aperture_diameter_m", &optics::OpticalParams::tx_aperture_diameter_m)
        .def("rx_aperture_diameter_m", &optics::OpticalParams::rx_aperture_diameter_m)
        .def("rx_aperture_radius_m", &optics::OpticalParams::rx_aperture_radius_m)
        .def("validate", &optics::OpticalParams::validate);
    py::class_<optics::BeamSpec>(opt, "BeamSpec")
        .def(py::init<>())
        .def_readwrite("full_divergence_rad", &optics::BeamSpec::full_divergence_rad)
        .def_readwrite("origin", &optics::BeamSpec::origin);
    opt.def("aperture_diameter_from_area", &optics::aperture_diameter_from_area,
            py::arg("area_m2"));
    opt.def("tx_gain", &optics::tx_gain, py::arg("full_divergence_rad"));
    opt.def("rx_gain", &optics::rx_gain, py::arg("rx_aperture_diameter_m"),
            py::arg("wavelength_m"));
    opt.def("geometric_loss", &optics::geometric_loss, py::arg("rx_aperture_diameter_m"),
            py::arg("tx_aperture_diameter_m"), py::arg("full_divergence_rad"),
            py::arg("range_m"));
    opt.def("pointing_losses", &optics::pointing_losses, py::arg("tx_gain"),
            py::arg("rx_gain"), py::arg("tx_pointing_error_rad"),
            py::arg("rx_pointing_error_rad"));
    opt.def("received_power_clear", &optics::received_power_clear, py::arg("params"),
            py::arg("beam"), py::arg("range_m"));

    auto atm = m.def_submodule("atmosphere", "Visibility-driven fog attenuation");
    atm.attr("DENSE_FOG_VISIBILITY_KM") = atmosphere::kDenseFogVisibilityKm;
    py::class_<atmosphere::ChannelState>(atm, "ChannelState")
        .def(py::init<>())
        .def_readwrite("visibility_km", &atmosphere::ChannelState::visibility_km)
        .def_readwrite("wavelength_um", &atmosphere::ChannelState::wavelength_um)
        .def("validate", &atmosphere::ChannelState::validate);
    atm.def("q_exponent", &atmosphere::q_exponent, py::arg("visibility_km"),
            py::arg("wavelength_um"));
    atm.def("fog_attenuation_db_per_km", &atmosphere::fog_attenuation_db_per_km,
            py::arg("state"));
    atm.def("received_power_fog_dbm", &atmosphere::received_power_fog_dbm,
            py::arg("clear_power_w"), py::arg("state"), py::arg("range_m"));

    auto rcv = m.def_submodule("receiver", "APD front end, SNR, and BER");
    py::class_<receiver::ReceiverParams>(rcv, "ReceiverParams")
        .def(py::init<>())
        .def_readwrite("sensitivity_a_per_w", &receiver::ReceiverParams::sensitivity_a_per_w)
        .def_readwrite("apd_gain", &receiver::ReceiverParams::apd_gain)
        .def_readwrite("excess_noise_factor", &receiver::ReceiverParams::excess_noise_factor)
        .def_readwrite("bandwidth_hz", &receiver::ReceiverParams::bandwidth_hz)
        .def_readwrite("load_resistance_ohm", &receiver::ReceiverParams::load_resistance_ohm)
        .def_readwrite("temperature_k", &receiver::ReceiverParams::temperature_k)
        .def_readwrite("electron_charge_c", &receiver::ReceiverParams::electron_charge_c)
        .def_readwrite("boltzmann_j_per_k", &receiver::ReceiverParams::boltzmann_j_per_k)
        .def("validate", &receiver::ReceiverParams::validate);
    py::class_<receiver::NoiseBudget>(rcv, "NoiseBudget")
        .def(py::init<>())
        .def_readwrite("shot_variance_a2", &receiver::NoiseBudget::shot_variance_a2)
        .def_readwrite("thermal_variance_a2", &receiver::NoiseBudget::thermal_variance_a2)
        .def_readwrite("total_variance_a2", &receiver::NoiseBudget::total_variance_a2);
    rcv.def("shot_noise_variance", &receiver::shot_noise_variance, py::arg("params"),
            py::arg("received_power_w"));
    rcv.def("thermal_noise_variance", &receiver::thermal_noise_variance,
            py::arg("params"));
    rcv.def("noise_budget", &receiver::noise_budget, py::arg("params"),
            py::arg("received_power_w"));
    rcv.def("snr", &receiver::snr, py::arg("params"), py::arg("received_power_w"));
    rcv.def("q_function", &receiver::q_function, py::arg("x"));
    rcv.def("ber_ook_nrz", &receiver::ber_ook_nrz, py::arg("snr_linear"));
    rcv.def("required_power_for_ber", &receiver::required_power_for_ber,
            py::arg("params"), py::arg("target_ber"));

    auto ctl = m.def_submodule("control", "Divergence controllers");
    py::enum_<control::ControlMode>(ctl, "ControlMode")
        .value("Fixed", control::ControlMode::Fixed)
        .value("AdaptiveIdeal", control::ControlMode::AdaptiveIdeal)
        .value("AdaptiveMotorized", control::ControlMode::AdaptiveMotorized)
        .value("AdaptiveSwitched", control::ControlMode::AdaptiveSwitched);
    py::class_<control::ControllerConfig>(ctl, "ControllerConfig")
        .def(py::init<>())
        .def_readwrite("mode", &control::ControllerConfig::mode)
        .def_readwrite("fixed_full_divergence_rad",
                       &control::ControllerConfig::fixed_full_divergence_rad)
        .def_readwrite("adjust_delay_s", &control::ControllerConfig::adjust_delay_s)
        .def_readwrite("control_latency_s", &control::ControllerConfig::control_latency_s)
        .def_readwrite("switch_angles_rad", &control::ControllerConfig::switch_angles_rad)
        .def("validate", &control::ControllerConfig::validate);
    py::class_<control::PendingCommand>(ctl, "PendingCommand")
        .def(py::init<>())
        .def_readwrite("angle_rad", &control::PendingCommand::angle_rad)
        .def_readwrite("activation_time_s", &control::PendingCommand::activation_time_s);
    py::class_<control::ControllerState>(ctl, "ControllerState")
        .def(py::init<>())
        .def_readwrite("last_update_time_s", &control::ControllerState::last_update_time_s)
        .def_readwrite("commanded_divergence_rad",
                       &control::ControllerState::commanded_divergence_rad)
        .def_readwrite("active_divergence_rad",
                       &control::ControllerState::active_divergence_rad)
        .def_readwrite("pending", &control::ControllerState::pending);
    ctl.def("ideal_divergence", &control::ideal_divergence, py::arg("geom"));
    ctl.def("quantize_switch_angle", &control::quantize_switch_angle, py::arg("bank_rad"),
            py::arg("ideal_rad"));
    ctl.def("make_controller_state", &control::make_controller_state, py::arg("config"),
            py::arg("t0_s"), py::arg("initial_geom"), py::arg("rx_radius_m"));
    ctl.def("step", &control::step, py::arg("state"), py::arg("config"), py::arg("now_s"),
            py::arg("geom"));
    ctl.def("default_switch_bank", &control::default_switch_bank, py::arg("min_rad"),
            py::arg("max_rad"), py::arg("count") = std::size_t{16});

    auto scn = m.def_submodule("scenario", "Pass simulation, sweeps, and comparisons");
    py::enum_<scenario::SweepMode>(scn, "SweepMode")
        .value("Fixed", scenario::SweepMode::Fixed)
        .value("Adaptive", scenario::SweepMode::Adaptive);
    py::class_<scenario::ScenarioConfig>(scn, "ScenarioConfig")
        .def(py::init<>())
        .def_readwrite("placement", &scenario::ScenarioConfig::placement)
        .def_readwrite("optical", &scenario::ScenarioConfig::optical)
        .def_readwrite("rx", &scenario::ScenarioConfig::rx)
        .def_readwrite("controller", &scenario::ScenarioConfig::controller)
        .def_readwrite("visibility_km", &scenario::ScenarioConfig::visibility_km)
        .def_readwrite("train_speed_mps", &scenario::ScenarioConfig::train_speed_mps)
        .def_readwrite("train_start_position_m",
                       &scenario::ScenarioConfig::train_start_position_m)
        .def_readwrite("transceiver_offsets_m",
                       &scenario::ScenarioConfig::transceiver_offsets_m)
        .def_readwrite("time_step_s", &scenario::ScenarioConfig::time_step_s)
        .def_readwrite("duration_s", &scenario::ScenarioConfig::duration_s)
        .def_readwrite("ber_target", &scenario::ScenarioConfig::ber_target)
        .def_readwrite("eval_range_min_m", &scenario::ScenarioConfig::eval_range_min_m)
        .def_readwrite("eval_range_max_m", &scenario::ScenarioConfig::eval_range_max_m)
        .def("channel", &scenario::ScenarioConfig::channel)
        .def("validate", &scenario::ScenarioConfig::validate)
        .def("resolve_defaults", &scenario::ScenarioConfig::resolve_defaults);
    py::class_<scenario::LinkEvaluation>(scn, "LinkEvaluation")
        .def(py::init<>())
        .def_readwrite("p_rx_dbm", &scenario::LinkEvaluation::p_rx_dbm)
        .def_readwrite("snr_db", &scenario::LinkEvaluation::snr_db)
        .def_readwrite("ber", &scenario::LinkEvaluation::ber)
        .def_readwrite("link_up", &scenario::LinkEvaluation::link_up);
    py::class_<scenario::LinkSample>(scn, "LinkSample")
        .def(py::init<>())
        .def_readwrite("t_s", &scenario::LinkSample::t_s)
        .def_readwrite("transceiver_id", &scenario::LinkSample::transceiver_id)
        .def_readwrite("station_id", &scenario::LinkSample::station_id)
        .def_readwrite("range_m", &scenario::LinkSample::range_m)
        .def_readwrite("divergence_rad", &scenario::LinkSample::divergence_rad)
        .def_readwrite("p_rx_dbm", &scenario::LinkSample::p_rx_dbm)
        .def_readwrite("snr_db", &scenario::LinkSample::snr_db)
        .def_readwrite("ber", &scenario::LinkSample::ber)
        .def_readwrite("link_up", &scenario::LinkSample::link_up);
    py::class_<scenario::MaxDistanceResult>(scn, "MaxDistanceResult")
        .def(py::init<>())
        .def_readwrite("distance_m", &scenario::MaxDistanceResult::distance_m)
        .def_readwrite("saturated", &scenario::MaxDistanceResult::saturated);
    py::class_<scenario::SweepRow>(scn, "SweepRow")
        .def(py::init<>())
        .def_readwrite("mode", &scenario::SweepRow::mode)
        .def_readwrite("visibility_km", &scenario::SweepRow::visibility_km)
        .def_readwrite("range_m", &scenario::SweepRow::range_m)
        .def_readwrite("divergence_rad", &scenario::SweepRow::divergence_rad)
        .def_readwrite("p_rx_dbm", &scenario::SweepRow::p_rx_dbm)
        .def_readwrite("snr_db", &scenario::SweepRow::snr_db)
        .def_readwrite("ber", &scenario::SweepRow::ber);
    py::class_<scenario::SweepSummary>(scn, "SweepSummary")
        .def(py::init<>())
        .def_readwrite("visibility_km", &scenario::SweepSummary::visibility_km)
        .def_readwrite("mean_gap_db", &scenario::SweepSummary::mean_gap_db)
        .def_readwrite("max_distance_fixed_m", &scenario::SweepSummary::max_distance_fixed_m)
        .def_readwrite("max_distance_adaptive_m",
                       &scenario::SweepSummary::max_distance_adaptive_m)
        .def_readwrite("max_distance_ratio", &scenario::SweepSummary::max_distance_ratio)
        .def_readwrite("fixed_saturated", &scenario::SweepSummary::fixed_saturated)
        .def_readwrite("adaptive_saturated", &scenario::SweepSummary::adaptive_saturated);
    py::class_<scenario::SweepResult>(scn, "SweepResult")
        .def(py::init<>())
        .def_readwrite("rows", &scenario::SweepResult::rows)
        .def_readwrite("summaries", &scenario::SweepResult::summaries);
    py::class_<scenario::PlacementRow>(scn, "PlacementRow")
        .def(py::init<>())
        .def_readwrite("longitudinal_m", &scenario::PlacementRow::longitudinal_m)
        .def_readwrite("p_rx_gantry_dbm", &scenario::PlacementRow::p_rx_gantry_dbm)
        .def_readwrite("p_rx_trackside_dbm", &scenario::PlacementRow::p_rx_trackside_dbm)
        .def_readwrite("gap_db", &scenario::PlacementRow::gap_db);
    py::class_<scenario::PlacementResult>(scn, "PlacementResult")
        .def(py::init<>())
        .def_readwrite("rows", &scenario::PlacementResult::rows)
        .def_readwrite("mean_gap_db", &scenario::PlacementResult::mean_gap_db)
        .def_readwrite("visibility_km", &scenario::PlacementResult::visibility_km);
    scn.def("to_string", py::overload_cast<scenario::SweepMode>(&scenario::to_string),
            py::arg("mode"));
    scn.def("evaluate_link", &scenario::evaluate_link, py::arg("config"), py::arg("geom"),
            py::arg("full_divergence_rad"));
    scn.def("run", &scenario::run, py::arg("config"),
            py::call_guard<py::gil_scoped_release>());
    scn.def("max_distance", &scenario::max_distance, py::arg("config"),
            py::arg("visibility_km"), py::arg("mode"));
    scn.def("compare_sweep", &scenario::compare_sweep, py::arg("config"),
            py::arg("ranges_m"), py::arg("visibilities_km"), py::arg("modes"),
            py::call_guard<py::gil_scoped_release>());
    scn.def("compare_placement", &scenario::compare_placement, py::arg("config"),
            py::arg("gantry"), py::arg("trackside"), py::arg("longitudinal_grid_m"));

    auto cfg = m.def_submodule("config", "JSON parsing, canonical echo, digests");
    cfg.def("parse_config", &config::parse_config, py::arg("json_text"));
    cfg.def("load_config", &config::load_config, py::arg("path_or_preset"));
    cfg.def("canonical_json", &config::canonical_json, py::arg("config"));
    cfg.def("config_digest", &config::config_digest, py::arg("config"));

    auto pre = m.def_submodule("presets", "Built-in configs and analysis grids");
    py::class_<presets::Preset>(pre, "Preset")
        .def_readonly("name", &presets::Preset::name)
        .def_readonly("config_json", &presets::Preset::config_json)
        .def_readonly("ranges_m", &presets::Preset::ranges_m)
        .def_readonly("visibilities_km", &presets::Preset::visibilities_km)
        .def_readonly("modes", &presets::Preset::modes);
    pre.def("is_preset", &presets::is_preset, py::arg("name"));
    pre.def("get", &presets::get, py::arg("name"), py::return_value_policy::copy);
    pre.def("names", &presets::names);
    pre.def("default_config_json", &presets::default_config_json);
    pre.def("grid", &presets::grid, py::arg("start"), py::arg("stop"), py::arg("step"));
}
