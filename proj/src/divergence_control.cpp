#include "fsorail/divergence_control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsorail::control {

void ControllerConfig::validate() const {
    if (!(fixed_full_divergence_rad > 0.0))
        throw std::invalid_argument("controller: fixed_full_divergence_rad must be > 0");
    if (adjust_delay_s < 0.0 || control_latency_s < 0.0)
        throw std::invalid_argument("controller: delays must be >= 0");
    if (mode == ControlMode::AdaptiveSwitched) {
        if (switch_angles_rad.empty())
            throw std::invalid_argument("controller: switched mode needs a switch bank");
        for (std::size_t i = 0; i < switch_angles_rad.size(); ++i) {
            if (!(switch_angles_rad[i] > 0.0))
                throw std::invalid_argument("controller: switch angles must be > 0");
            if (i > 0 && !(switch_angles_rad[i] > switch_angles_rad[i - 1]))
                throw std::invalid_argument(
                    "controller: switch angles must be strictly increasing");
        }
    }
}

double ideal_divergence(const geometry::LinkGeometry& geom) {
    if (!(geom.half_angle_rad > 0.0))
        throw std::domain_error("ideal_divergence: geometry half angle must be > 0");
    return 2.0 * geom.half_angle_rad;
}

double quantize_switch_angle(const std::vector<double>& bank_rad, double ideal_rad) {
    if (bank_rad.empty())
        throw std::domain_error("quantize_switch_angle: empty switch bank");
    const auto it = std::lower_bound(bank_rad.begin(), bank_rad.end(), ideal_rad);
    if (it == bank_rad.end())
        throw std::domain_error(
            "quantize_switch_angle: ideal divergence exceeds the largest switch angle");
    return *it;
}

namespace {

// Target angle for the mode, given current geometry.
double setpoint_for(const ControllerConfig& config, const geometry::LinkGeometry& geom) {
    switch (config.mode) {
        case ControlMode::Fixed:
            return config.fixed_full_divergence_rad;
        case ControlMode::AdaptiveIdeal:
        case ControlMode::AdaptiveMotorized:
            return ideal_divergence(geom);
        case ControlMode::AdaptiveSwitched:
            return quantize_switch_angle(config.switch_angles_rad, ideal_divergence(geom));
    }
    throw std::logic_error("setpoint_for: unknown control mode");
}

// Motorized motions wait out the command latency plus the expander travel
// time; switched banks only the latency.
double pipeline_delay(const ControllerConfig& config) {
    if (config.mode == ControlMode::AdaptiveMotorized)
        return config.control_latency_s + config.adjust_delay_s;
    return config.control_latency_s;
}

}  // namespace

ControllerState make_controller_state(const ControllerConfig& config, double t0_s,
                                      const geometry::LinkGeometry& initial_geom,
                                      double /*rx_radius_m*/) {
    config.validate();
    ControllerState s;
    s.last_update_time_s = t0_s;
    s.active_divergence_rad = setpoint_for(config, initial_geom);
    s.commanded_divergence_rad = s.active_divergence_rad;
    return s;
}

std::pair<ControllerState, double> step(const ControllerState& state,
                                        const ControllerConfig& config, double now_s,
                                        const geometry::LinkGeometry& geom) {
    config.validate();
    if (now_s < state.last_update_time_s)
        throw std::invalid_argument("controller step: time ran backwards");

    ControllerState s = state;
    s.last_update_time_s = now_s;

    // A motion that has finished by now takes effect before anything else.
    if (s.pending && now_s >= s.pending->activation_time_s) {
        s.active_divergence_rad = s.pending->angle_rad;
        s.pending.reset();
    }

    const double target = setpoint_for(config, geom);
    s.commanded_divergence_rad = target;

    switch (config.mode) {
        case ControlMode::Fixed:
        case ControlMode::AdaptiveIdeal:
            s.active_divergence_rad = target;
            s.pending.reset();
            break;
        case ControlMode::AdaptiveMotorized:
        case ControlMode::AdaptiveSwitched: {
            const double delay = pipeline_delay(config);
            if (delay == 0.0) {
                s.active_divergence_rad = target;
                s.pending.reset();
            } else if (s.pending) {
                // Re-target the motion already in flight; its clock keeps
                // running, so commands cannot starve each other.
                s.pending->angle_rad = target;
            } else if (target != s.active_divergence_rad) {
                s.pending = PendingCommand{target, now_s + delay};
            }
            break;
        }
    }
    return {s, s.active_divergence_rad};
}

std::vector<double> default_switch_bank(double min_rad, double max_rad, std::size_t count) {
    if (!(min_rad > 0.0) || !(max_rad > min_rad))
        throw std::domain_error("default_switch_bank: need 0 < min < max");
    if (count < 2)
        throw std::domain_error("default_switch_bank: need at least two angles");
    std::vector<double> bank(count);
    const double step = std::log(max_rad / min_rad) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i)
        bank[i] = min_rad * std::exp(step * static_cast<double>(i));
    bank.front() = min_rad;
    bank.back() = max_rad;  // exact endpoints, no rounding drift
    return bank;
}

}  // namespace fsorail::control
