#pragma once

namespace fsorail::atmosphere {

struct ChannelState {
    double visibility_km = 1.0;
    double wavelength_um = 1.55;

    void validate() const;
};

// Visibility below which the size-distribution exponent collapses to zero and
// the attenuation degenerates to 17/V. Such inputs are legal but the CLI warns.
inline constexpr double kDenseFogVisibilityKm = 0.015;

// Particle-size distribution exponent q as a piecewise function of visibility:
//   V >= 50 km          1.6
//   6 <= V < 50         1.3
//   1 <= V < 6          0.16 V + 0.34
//   0.015 < V < 1       0.1428 lambda_um - 0.0947
//   V <= 0.015          0
double q_exponent(double visibility_km, double wavelength_um);

// Fog/haze attenuation (17 / V) * (lambda / 0.55 um)^(-q), in dB per km.
double fog_attenuation_db_per_km(const ChannelState& state);

// Clear-air received power folded with fog loss over the path:
// 10*log10(P_mW) - attenuation_db_per_km * range_km, returned in dBm.
double received_power_fog_dbm(double clear_power_w, const ChannelState& state,
                              double range_m);

}  // namespace fsorail::atmosphere
