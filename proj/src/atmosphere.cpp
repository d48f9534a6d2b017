#include "fsorail/atmosphere.hpp"

#include <cmath>
#include <stdexcept>

#include "fsorail/units.hpp"

namespace fsorail::atmosphere {

void ChannelState::validate() const {
    if (!(visibility_km > 0.0))
        throw std::invalid_argument("channel: visibility_km must be > 0");
    if (!(wavelength_um > 0.0))
        throw std::invalid_argument("channel: wavelength_um must be > 0");
}

double q_exponent(double visibility_km, double wavelength_um) {
    if (!(visibility_km > 0.0))
        throw std::domain_error("q_exponent: visibility must be > 0");
    if (!(wavelength_um > 0.0))
        throw std::domain_error("q_exponent: wavelength must be > 0");
    if (visibility_km >= 50.0) return 1.6;
    if (visibility_km >= 6.0) return 1.3;
    if (visibility_km >= 1.0) return 0.16 * visibility_km + 0.34;
    if (visibility_km > kDenseFogVisibilityKm) return 0.1428 * wavelength_um - 0.0947;
    return 0.0;
}

double fog_attenuation_db_per_km(const ChannelState& state) {
    state.validate();
    const double q = q_exponent(state.visibility_km, state.wavelength_um);
    return (17.0 / state.visibility_km) * std::pow(state.wavelength_um / 0.55, -q);
}

double received_power_fog_dbm(double clear_power_w, const ChannelState& state,
                              double range_m) {
    if (!(clear_power_w > 0.0))
        throw std::domain_error("received_power_fog_dbm: clear power must be > 0");
    if (!(range_m > 0.0))
        throw std::domain_error("received_power_fog_dbm: range must be > 0");
    const double attenuation_db = fog_attenuation_db_per_km(state) * (range_m / 1000.0);
    return dbm_from_watts(clear_power_w) - attenuation_db;
}

}  // namespace fsorail::atmosphere
