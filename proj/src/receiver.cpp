#include "fsorail/receiver.hpp"

#include <cmath>
#include <stdexcept>

namespace fsorail::receiver {

void ReceiverParams::validate() const {
    auto positive = [](double v) { return v > 0.0; };
    if (!positive(sensitivity_a_per_w) || !positive(apd_gain) ||
        !positive(excess_noise_factor) || !positive(bandwidth_hz) ||
        !positive(load_resistance_ohm) || !positive(temperature_k) ||
        !positive(electron_charge_c) || !positive(boltzmann_j_per_k))
        throw std::invalid_argument("receiver: all parameters must be > 0");
}

double shot_noise_variance(const ReceiverParams& params, double received_power_w) {
    params.validate();
    if (!(received_power_w >= 0.0))
        throw std::domain_error("shot_noise_variance: power must be >= 0");
    const double i_signal = params.sensitivity_a_per_w * received_power_w;
    const double i_multiplied = params.apd_gain * i_signal;
    return 2.0 * params.electron_charge_c * params.apd_gain * i_multiplied *
           params.excess_noise_factor * params.bandwidth_hz;
}

double thermal_noise_variance(const ReceiverParams& params) {
    params.validate();
    return 4.0 * params.boltzmann_j_per_k * params.temperature_k * params.bandwidth_hz /
           params.load_resistance_ohm;
}

NoiseBudget noise_budget(const ReceiverParams& params, double received_power_w) {
    NoiseBudget b;
    b.shot_variance_a2 = shot_noise_variance(params, received_power_w);
    b.thermal_variance_a2 = thermal_noise_variance(params);
    // Dark-current and background contributions are taken as zero.
    b.total_variance_a2 = b.shot_variance_a2 + b.thermal_variance_a2;
    return b;
}

double snr(const ReceiverParams& params, double received_power_w) {
    if (!(received_power_w > 0.0))
        throw std::domain_error("snr: power must be > 0");
    const NoiseBudget b = noise_budget(params, received_power_w);
    const double i_signal = params.sensitivity_a_per_w * received_power_w;
    return i_signal * i_signal / b.total_variance_a2;
}

double q_function(double x) {
    // 0.5 * erfc(x / sqrt(2)), evaluated in long double so the rounding to
    // double is the only loss. Underflows to 0 near x = 38 where the result
    // leaves the double range entirely.
    const long double arg = static_cast<long double>(x) / 1.41421356237309504880168872420969808L;
    return static_cast<double>(0.5L * std::erfc(arg));
}

double ber_ook_nrz(double snr_linear) {
    if (!(snr_linear >= 0.0))
        throw std::domain_error("ber_ook_nrz: snr must be >= 0");
    return q_function(std::sqrt(snr_linear));
}

double required_power_for_ber(const ReceiverParams& params, double target_ber) {
    params.validate();
    if (!(target_ber > 0.0) || !(target_ber < 0.5))
        throw std::domain_error("required_power_for_ber: target must lie in (0, 0.5)");

    double lo = 1e-15, hi = 1.0;
    auto meets = [&](double p) { return ber_ook_nrz(snr(params, p)) <= target_ber; };
    if (meets(lo)) return lo;
    if (!meets(hi))
        throw std::domain_error(
            "required_power_for_ber: target unreachable below 1 W received power");
    // BER is strictly decreasing in power: bisect the crossing to ~1e-12
    // relative.
    for (int i = 0; i < 200 && (hi - lo) > 1e-12 * hi; ++i) {
        const double mid = std::sqrt(lo * hi);  // geometric: bracket spans 15 decades
        (meets(mid) ? hi : lo) = mid;
    }
    return hi;
}

}  // namespace fsorail::receiver
