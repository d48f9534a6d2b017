#include "fsorail/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsorail::geometry {

double StationPlacement::effective_vertical_m() const {
    if (mode == PlacementMode::Gantry)
        return vertical_offset_m;
    return std::hypot(vertical_offset_m, lateral_offset_m);
}

void StationPlacement::validate() const {
    if (!(station_spacing_m > 0.0))
        throw std::invalid_argument("placement: station_spacing_m must be > 0");
    if (vertical_offset_m < 0.0 || lateral_offset_m < 0.0)
        throw std::invalid_argument("placement: offsets must be >= 0");
    if (!(effective_vertical_m() > 0.0))
        throw std::invalid_argument("placement: effective vertical offset must be > 0");
}

void TrainState::validate() const {
    if (transceiver_offsets_m.empty())
        throw std::invalid_argument("train: transceiver_offsets_m must be non-empty");
    for (std::size_t i = 1; i < transceiver_offsets_m.size(); ++i)
        if (!(transceiver_offsets_m[i] > transceiver_offsets_m[i - 1]))
            throw std::invalid_argument(
                "train: transceiver_offsets_m must be strictly increasing");
    if (speed_mps < 0.0)
        throw std::invalid_argument("train: speed_mps must be >= 0");
}

double slant_distance(double vertical_m, double longitudinal_m) {
    if (vertical_m == 0.0 && longitudinal_m == 0.0)
        throw std::domain_error("slant_distance: vertical and longitudinal both zero");
    return std::hypot(vertical_m, longitudinal_m);
}

double adaptive_half_angle(double rx_radius_m, double slant_m) {
    if (!(rx_radius_m > 0.0))
        throw std::domain_error("adaptive_half_angle: receiver radius must be > 0");
    if (!(slant_m > rx_radius_m))
        throw std::domain_error(
            "adaptive_half_angle: slant distance must exceed the receiver radius");
    return std::asin(rx_radius_m / slant_m);
}

double axial_distance(double half_angle_rad, double slant_m) {
    if (!(half_angle_rad >= 0.0) || !(half_angle_rad < std::numbers::pi_v<double> / 2))
        throw std::domain_error("axial_distance: half angle must lie in [0, pi/2)");
    if (!(slant_m > 0.0))
        throw std::domain_error("axial_distance: slant distance must be > 0");
    return std::cos(half_angle_rad) * slant_m;
}

LinkGeometry link_geometry(const TrainState& train, std::size_t transceiver_index,
                           double station_position_m, const StationPlacement& placement,
                           double rx_radius_m) {
    if (transceiver_index >= train.transceiver_offsets_m.size())
        throw std::out_of_range("link_geometry: transceiver index out of range");

    LinkGeometry g;
    const double pos = train.position_m + train.transceiver_offsets_m[transceiver_index];
    g.longitudinal_m = std::abs(pos - station_position_m);
    g.vertical_m = placement.effective_vertical_m();
    g.slant_m = slant_distance(g.vertical_m, g.longitudinal_m);
    g.half_angle_rad = adaptive_half_angle(rx_radius_m, g.slant_m);
    g.axial_m = axial_distance(g.half_angle_rad, g.slant_m);
    return g;
}

LinkGeometry link_geometry_from_slant(double slant_m, double effective_vertical_m,
                                      double rx_radius_m) {
    if (!(effective_vertical_m > 0.0))
        throw std::domain_error("link_geometry_from_slant: vertical offset must be > 0");
    if (!(slant_m >= effective_vertical_m))
        throw std::domain_error(
            "link_geometry_from_slant: slant shorter than the vertical offset");

    LinkGeometry g;
    g.vertical_m = effective_vertical_m;
    g.slant_m = slant_m;
    const double gap2 = slant_m * slant_m - effective_vertical_m * effective_vertical_m;
    g.longitudinal_m = gap2 > 0.0 ? std::sqrt(gap2) : 0.0;
    g.half_angle_rad = adaptive_half_angle(rx_radius_m, g.slant_m);
    g.axial_m = axial_distance(g.half_angle_rad, g.slant_m);
    return g;
}

long long nearest_station_id(double position_m, double station_spacing_m) {
    if (!(station_spacing_m > 0.0))
        throw std::domain_error("nearest_station_id: spacing must be > 0");
    const double ratio = position_m / station_spacing_m;
    const long long lower = static_cast<long long>(std::floor(ratio));
    const double d_lower = std::abs(position_m - static_cast<double>(lower) * station_spacing_m);
    const double d_upper =
        std::abs(static_cast<double>(lower + 1) * station_spacing_m - position_m);
    // Exact midpoint resolves to the lower id.
    return d_lower <= d_upper ? lower : lower + 1;
}

}  // namespace fsorail::geometry
