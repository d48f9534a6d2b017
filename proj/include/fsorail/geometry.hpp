#pragma once

#include <vector>

namespace fsorail::geometry {

// Where the base stations sit relative to the track. Gantry units hang over
// the track centerline (vertical offset only); trackside units stand beside it
// (lateral plus vertical offset, combined into one effective vertical).
enum class PlacementMode { Gantry, Trackside };

struct StationPlacement {
    PlacementMode mode = PlacementMode::Gantry;
    double vertical_offset_m = 5.0;
    double lateral_offset_m = 0.0;   // ignored for Gantry
    double station_spacing_m = 400.0;

    // Off-track distance between the station head and the train transceiver
    // plane: vertical for gantries, Euclidean lateral/vertical combination for
    // trackside cabinets.
    double effective_vertical_m() const;

    void validate() const;
};

struct TrainState {
    double position_m = 0.0;   // head reference point along the track
    double speed_mps = 0.0;
    std::vector<double> transceiver_offsets_m{0.0};  // strictly increasing

    void validate() const;
};

// Instantaneous link geometry between one transceiver and one station.
// half_angle_rad is the divergence half-angle that makes the beam footprint
// span the receiver aperture at this slant distance.
struct LinkGeometry {
    double longitudinal_m = 0.0;
    double vertical_m = 0.0;
    double slant_m = 0.0;
    double half_angle_rad = 0.0;
    double axial_m = 0.0;      // along-beam-axis distance used by the link budget
};

// Hypotenuse of the vertical/longitudinal right triangle. Both zero is a
// degenerate link and a domain error.
double slant_distance(double vertical_m, double longitudinal_m);

// arcsin(receiver_radius / slant); requires 0 < radius < slant.
double adaptive_half_angle(double rx_radius_m, double slant_m);

// cos(half_angle) * slant; requires half_angle in [0, pi/2).
double axial_distance(double half_angle_rad, double slant_m);

// Full geometry for one transceiver/station pair.
LinkGeometry link_geometry(const TrainState& train, std::size_t transceiver_index,
                           double station_position_m, const StationPlacement& placement,
                           double rx_radius_m);

// Geometry parameterized directly by slant distance (distance sweeps). The
// longitudinal leg is derived from the placement's effective vertical offset,
// so slant must not be shorter than that offset.
LinkGeometry link_geometry_from_slant(double slant_m, double effective_vertical_m,
                                      double rx_radius_m);

// Index of the nearest station on a line of stations at id*spacing, ties to
// the lower id. Ids are signed so positions before station 0 still resolve.
long long nearest_station_id(double position_m, double station_spacing_m);

}  // namespace fsorail::geometry
