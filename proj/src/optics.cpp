#include "fsorail/optics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsorail::optics {

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

double aperture_diameter_from_area(double area_m2) {
    if (!(area_m2 > 0.0))
        throw std::domain_error("aperture area must be > 0");
    return 2.0 * std::sqrt(area_m2 / kPi);
}

double OpticalParams::tx_aperture_diameter_m() const {
    return aperture_diameter_from_area(tx_aperture_area_m2);
}

double OpticalParams::rx_aperture_diameter_m() const {
    return aperture_diameter_from_area(rx_aperture_area_m2);
}

double OpticalParams::rx_aperture_radius_m() const {
    return rx_aperture_diameter_m() / 2.0;
}

void OpticalParams::validate() const {
    if (!(wavelength_m > 0.0))
        throw std::invalid_argument("optical: wavelength_m must be > 0");
    if (!(tx_power_w > 0.0))
        throw std::invalid_argument("optical: tx_power_w must be > 0");
    if (!(tx_aperture_area_m2 > 0.0) || !(rx_aperture_area_m2 > 0.0))
        throw std::invalid_argument("optical: aperture areas must be > 0");
    if (!(system_loss > 0.0) || system_loss > 1.0)
        throw std::invalid_argument("optical: system_loss must lie in (0, 1]");
    if (tx_pointing_error_rad < 0.0 || rx_pointing_error_rad < 0.0)
        throw std::invalid_argument("optical: pointing errors must be >= 0");
}

double tx_gain(double full_divergence_rad) {
    if (!(full_divergence_rad > 0.0))
        throw std::domain_error("tx_gain: divergence must be > 0");
    return 32.0 / (full_divergence_rad * full_divergence_rad);
}

double rx_gain(double rx_aperture_diameter_m, double wavelength_m) {
    if (!(rx_aperture_diameter_m > 0.0) || !(wavelength_m > 0.0))
        throw std::domain_error("rx_gain: aperture and wavelength must be > 0");
    const double v = kPi * rx_aperture_diameter_m / wavelength_m;
    return v * v;
}

double geometric_loss(double rx_aperture_diameter_m, double tx_aperture_diameter_m,
                      double full_divergence_rad, double range_m) {
    if (!(rx_aperture_diameter_m > 0.0) || !(tx_aperture_diameter_m > 0.0))
        throw std::domain_error("geometric_loss: aperture diameters must be > 0");
    if (!(full_divergence_rad > 0.0))
        throw std::domain_error("geometric_loss: divergence must be > 0");
    if (!(range_m > 0.0))
        throw std::domain_error("geometric_loss: range must be > 0");
    const double footprint = tx_aperture_diameter_m + full_divergence_rad * range_m;
    const double ratio = rx_aperture_diameter_m / footprint;
    const double loss = ratio * ratio;
    // A footprint narrower than the aperture collects everything; capture
    // fraction cannot exceed one.
    return loss > 1.0 ? 1.0 : loss;
}

std::pair<double, double> pointing_losses(double tx_gain, double rx_gain,
                                          double tx_pointing_error_rad,
                                          double rx_pointing_error_rad) {
    if (!(tx_gain > 0.0) || !(rx_gain > 0.0))
        throw std::domain_error("pointing_losses: gains must be > 0");
    if (tx_pointing_error_rad < 0.0 || rx_pointing_error_rad < 0.0)
        throw std::domain_error("pointing_losses: pointing errors must be >= 0");
    const double ltx = std::exp(-tx_gain * tx_pointing_error_rad * tx_pointing_error_rad);
    const double lrx = std::exp(-rx_gain * rx_pointing_error_rad * rx_pointing_error_rad);
    return {ltx, lrx};
}

double received_power_clear(const OpticalParams& params, const BeamSpec& beam,
                            double range_m) {
    params.validate();
    if (!(beam.full_divergence_rad > 0.0))
        throw std::domain_error("received_power_clear: divergence must be > 0");
    if (!(range_m > 0.0))
        throw std::domain_error("received_power_clear: range must be > 0");

    const double d_tx = params.tx_aperture_diameter_m();
    const double d_rx = params.rx_aperture_diameter_m();
    const double g_tx = tx_gain(beam.full_divergence_rad);
    const double g_rx = rx_gain(d_rx, params.wavelength_m);
    const double path = params.wavelength_m / (4.0 * kPi * range_m);
    const double l_geo = geometric_loss(d_rx, d_tx, beam.full_divergence_rad, range_m);
    const auto [l_ptx, l_prx] = pointing_losses(g_tx, g_rx, params.tx_pointing_error_rad,
                                                params.rx_pointing_error_rad);
    return params.tx_power_w * g_tx * g_rx * path * path * l_geo * l_ptx * l_prx *
           params.system_loss;
}

}  // namespace fsorail::optics
