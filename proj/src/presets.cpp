#include "fsorail/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace fsorail::presets {

namespace {

constexpr const char* kTable1 = R"json({
  "placement": {
    "mode": "gantry",
    "vertical_offset_m": 5.0,
    "lateral_offset_m": 0.0,
    "station_spacing_m": 400.0
  },
  "optical": {
    "wavelength_nm": 1550.0,
    "tx_power_mw": 10.0,
    "tx_aperture_area_cm2": 9.0,
    "rx_aperture_area_cm2": 95.0,
    "system_loss": 0.5,
    "tx_pointing_error_mrad": 0.0,
    "rx_pointing_error_mrad": 0.0
  },
  "receiver": {
    "sensitivity_a_per_w": 0.9,
    "apd_gain": 10.0,
    "excess_noise_factor": 3.2,
    "bandwidth_hz": 1.0e9,
    "load_resistance_ohm": 50.0,
    "temperature_k": 298.0
  },
  "controller": {
    "mode": "adaptive_ideal",
    "fixed_full_divergence_mrad": 1.0,
    "adjust_delay_s": 5.0,
    "control_latency_s": 0.0
  },
  "visibility_km": 1.0,
  "train_speed_mps": 0.0,
  "train_start_position_m": 0.0,
  "transceiver_offsets_m": [0.0],
  "time_step_s": 0.1,
  "duration_s": 60.0,
  "ber_target": 1.0e-9,
  "eval_range_min_m": 75.0,
  "eval_range_max_m": 2000.0
})json";

// fig2: clear-ish air so the placement gap is pure geometry, not fog.
constexpr const char* kFig2 = R"json({
  "placement": {"mode": "gantry", "vertical_offset_m": 5.0},
  "visibility_km": 5.0
})json";

constexpr const char* kFig9 = R"json({
  "placement": {"station_spacing_m": 1.0e7},
  "controller": {"mode": "adaptive_motorized", "adjust_delay_s": 5.0},
  "visibility_km": 1.0,
  "train_speed_kmh": 400.0,
  "train_start_position_m": 75.0,
  "time_step_s": 0.1,
  "duration_s": 60.0
})json";

std::vector<Preset> build() {
    using scenario::SweepMode;
    std::vector<Preset> all;

    all.push_back({"table1", kTable1, {}, {}, {}});
    all.push_back({"fig2", kFig2, grid(75.0, 2000.0, 25.0), {5.0}, {}});
    all.push_back({"fig5", kTable1, {500.0}, grid(0.30, 0.99, 0.01),
                   {SweepMode::Adaptive}});
    all.push_back({"fig7", kTable1, {}, grid(0.1, 1.0, 0.1),
                   {SweepMode::Fixed, SweepMode::Adaptive}});
    all.push_back({"fig8", kTable1, grid(75.0, 2000.0, 25.0), grid(0.1, 1.0, 0.1),
                   {SweepMode::Fixed, SweepMode::Adaptive}});
    all.push_back({"fig9", kFig9, {}, {1.0}, {}});
    all.push_back({"fig10", kTable1, grid(75.0, 2000.0, 25.0), {0.5, 1.0},
                   {SweepMode::Fixed, SweepMode::Adaptive}});
    return all;
}

const std::vector<Preset>& all_presets() {
    static const std::vector<Preset> presets = build();
    return presets;
}

}  // namespace

bool is_preset(const std::string& name) {
    for (const Preset& p : all_presets())
        if (p.name == name) return true;
    return false;
}

const Preset& get(const std::string& name) {
    for (const Preset& p : all_presets())
        if (p.name == name) return p;
    throw std::invalid_argument("presets: unknown preset '" + name + "'");
}

std::vector<std::string> names() {
    std::vector<std::string> out;
    for (const Preset& p : all_presets()) out.push_back(p.name);
    return out;
}

std::string default_config_json() { return kTable1; }

std::vector<double> grid(double start, double stop, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("grid: step must be > 0");
    if (stop < start) throw std::invalid_argument("grid: stop must be >= start");
    std::vector<double> out;
    const auto n = static_cast<long long>(std::floor((stop - start) / step + 0.5));
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (long long i = 0; i <= n; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
}

}  // namespace fsorail::presets
