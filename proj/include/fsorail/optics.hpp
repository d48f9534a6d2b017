#pragma once

#include <utility>

namespace fsorail::optics {

struct OpticalParams {
    double wavelength_m = 1550e-9;
    double tx_power_w = 10e-3;
    double tx_aperture_area_m2 = 9e-4;    // 9 cm^2
    double rx_aperture_area_m2 = 95e-4;   // 95 cm^2
    double system_loss = 0.5;             // combined tx/rx optics efficiency, (0, 1]
    double tx_pointing_error_rad = 0.0;
    double rx_pointing_error_rad = 0.0;

    double tx_aperture_diameter_m() const;
    double rx_aperture_diameter_m() const;
    double rx_aperture_radius_m() const;

    void validate() const;
};

// A transmit beam: full divergence angle plus a tag saying which controller
// family produced it (carried through into samples for reporting).
enum class BeamOrigin { Fixed, Adaptive };

struct BeamSpec {
    double full_divergence_rad = 1e-3;
    BeamOrigin origin = BeamOrigin::Fixed;
};

double aperture_diameter_from_area(double area_m2);

// On-axis gain of a divergent Gaussian-like beam: 32 / theta^2.
double tx_gain(double full_divergence_rad);

// Receiver telescope gain: (pi * D_rx / lambda)^2.
double rx_gain(double rx_aperture_diameter_m, double wavelength_m);

// Fraction of the beam footprint captured by the receiver aperture:
// (D_rx / (D_tx + theta * range))^2, clamped to 1 once the footprint shrinks
// inside the aperture.
double geometric_loss(double rx_aperture_diameter_m, double tx_aperture_diameter_m,
                      double full_divergence_rad, double range_m);

// Gain-weighted pointing losses exp(-G * err^2) for the tx and rx sides.
std::pair<double, double> pointing_losses(double tx_gain, double rx_gain,
                                          double tx_pointing_error_rad,
                                          double rx_pointing_error_rad);

// Clear-air received power in watts at the given along-axis range.
double received_power_clear(const OpticalParams& params, const BeamSpec& beam,
                            double range_m);

}  // namespace fsorail::optics
