#pragma once

#include <string>
#include <vector>

#include "fsorail/scenario.hpp"

namespace fsorail::presets {

// Built-in configs and analysis grids. "table1" is the reference parameter
// set; the figN presets pin the grids the acceptance suite replays:
//   fig2  placement comparison, V = 5 km, longitudinal 75..2000 m
//   fig5  wavelength study grid: range 500 m, V = 0.30..0.99
//   fig7  max-distance sweep, V = 0.1..1.0
//   fig8  power-vs-distance sweep, both modes, V = 0.1..1.0
//   fig9  receding 400 km/h pass with the motorized controller
//   fig10 BER-vs-distance sweep, V in {0.5, 1.0}
struct Preset {
    std::string name;
    std::string config_json;
    std::vector<double> ranges_m;          // sweep/maxdist/placement grid
    std::vector<double> visibilities_km;
    std::vector<scenario::SweepMode> modes;
};

bool is_preset(const std::string& name);
const Preset& get(const std::string& name);
std::vector<std::string> names();

// The "table1" reference config document.
std::string default_config_json();

// Uniform grid helper: start, stop inclusive (within half a step), step > 0.
std::vector<double> grid(double start, double stop, double step);

}  // namespace fsorail::presets
