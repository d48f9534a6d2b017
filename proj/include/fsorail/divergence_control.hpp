#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fsorail/geometry.hpp"

namespace fsorail::control {

enum class ControlMode { Fixed, AdaptiveIdeal, AdaptiveMotorized, AdaptiveSwitched };

struct ControllerConfig {
    ControlMode mode = ControlMode::AdaptiveIdeal;
    double fixed_full_divergence_rad = 1e-3;
    double adjust_delay_s = 5.0;       // beam-expander travel time (motorized)
    double control_latency_s = 0.0;    // position-report / command latency
    std::vector<double> switch_angles_rad;  // ascending bank for AdaptiveSwitched

    void validate() const;
};

struct PendingCommand {
    double angle_rad = 0.0;
    double activation_time_s = 0.0;
};

// One expander pipeline. A single motion can be in flight; re-targeting while
// it is in flight swaps the destination angle but keeps the activation instant
// of the motion already underway (latest command wins, the clock does not
// restart), so staleness stays bounded by latency + adjust delay.
struct ControllerState {
    double last_update_time_s = 0.0;
    double commanded_divergence_rad = 0.0;  // most recent setpoint
    double active_divergence_rad = 0.0;     // angle in effect
    std::optional<PendingCommand> pending;
};

// Full divergence that matches the beam footprint to the receiver aperture:
// 2 * arcsin(r_rx / slant).
double ideal_divergence(const geometry::LinkGeometry& geom);

// Smallest bank angle >= ideal; throws std::domain_error when the ideal angle
// exceeds the largest available switch angle.
double quantize_switch_angle(const std::vector<double>& bank_rad, double ideal_rad);

// Controller state at scenario start: the active angle is the mode's target
// for the initial geometry (the expander has had time to settle before t0).
ControllerState make_controller_state(const ControllerConfig& config, double t0_s,
                                      const geometry::LinkGeometry& initial_geom,
                                      double rx_radius_m);

// Advance the controller to now_s with the current link geometry. Returns the
// updated state and the divergence in effect for this step. Time must not run
// backwards.
std::pair<ControllerState, double> step(const ControllerState& state,
                                        const ControllerConfig& config, double now_s,
                                        const geometry::LinkGeometry& geom);

// Default switch bank: count log-spaced angles spanning [min_rad, max_rad].
std::vector<double> default_switch_bank(double min_rad, double max_rad,
                                        std::size_t count = 16);

}  // namespace fsorail::control
