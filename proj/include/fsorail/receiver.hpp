#pragma once

namespace fsorail::receiver {

// APD receiver front end for OOK-NRZ detection.
struct ReceiverParams {
    double sensitivity_a_per_w = 0.9;    // photodiode responsivity S
    double apd_gain = 10.0;              // avalanche gain M
    double excess_noise_factor = 3.2;    // F(M)
    double bandwidth_hz = 1e9;           // electrical bandwidth
    double load_resistance_ohm = 50.0;
    double temperature_k = 298.0;
    double electron_charge_c = 1.602e-19;
    double boltzmann_j_per_k = 1.38e-23;

    void validate() const;
};

struct NoiseBudget {
    double shot_variance_a2 = 0.0;
    double thermal_variance_a2 = 0.0;
    double total_variance_a2 = 0.0;
};

// Shot noise 2 q M i_M F df with multiplied current i_M = M * S * P.
double shot_noise_variance(const ReceiverParams& params, double received_power_w);

// Johnson noise 4 k T df / R_load, independent of received power.
double thermal_noise_variance(const ReceiverParams& params);

NoiseBudget noise_budget(const ReceiverParams& params, double received_power_w);

// Electrical SNR (S * P)^2 / sigma_total^2. The signal current here is the
// unmultiplied photocurrent; the avalanche gain enters through the shot term.
double snr(const ReceiverParams& params, double received_power_w);

// Gaussian tail probability Q(x) = P[N(0,1) > x]. Evaluated in long double
// via the complementary error function; accurate to better than 1e-12
// relative wherever the result is a normal double.
double q_function(double x);

// OOK-NRZ bit error rate Q(sqrt(snr)).
double ber_ook_nrz(double snr_linear);

// Smallest received power (watts, searched in [1e-15, 1]) with
// ber_ook_nrz(snr(P)) <= target. BER is strictly decreasing in P, so this is
// a bracketed bisection; throws if the target is unreachable inside the
// bracket.
double required_power_for_ber(const ReceiverParams& params, double target_ber);

}  // namespace fsorail::receiver
