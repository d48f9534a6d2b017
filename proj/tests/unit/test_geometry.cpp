#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "fsorail/geometry.hpp"
#include "test_helpers.hpp"

using namespace fsorail::geometry;

TEST_CASE("slant distance matches the right-triangle hypotenuse") {
    CHECK(rel_eq(slant_distance(5.0, 500.0), 500.02499937503126, 1e-15));
    CHECK(rel_eq(slant_distance(3.0, 4.0), 5.0, 1e-15));
    CHECK(slant_distance(5.0, 0.0) == 5.0);
    CHECK_THROWS_AS(slant_distance(0.0, 0.0), std::domain_error);
}

TEST_CASE("half angle puts the beam edge on the aperture rim") {
    CHECK(rel_eq(adaptive_half_angle(0.05499, 500.0), 1.0998000022171235e-4, 1e-14));
    CHECK(rel_eq(adaptive_half_angle(0.05499, 75.0), 7.332000656925656e-4, 1e-14));
    // sin(half) * slant recovers the radius
    const double h = adaptive_half_angle(0.05499, 123.4);
    CHECK(rel_eq(std::sin(h) * 123.4, 0.05499, 1e-14));
    CHECK_THROWS_AS(adaptive_half_angle(0.055, 0.05), std::domain_error);
    CHECK_THROWS_AS(adaptive_half_angle(0.0, 100.0), std::domain_error);
}

TEST_CASE("axial distance is the slant projected onto the beam axis") {
    const double h = adaptive_half_angle(0.05499, 500.0);
    CHECK(rel_eq(axial_distance(h, 500.0), 499.9999969760999, 1e-14));

    // Axial and slant are indistinguishable once the link is long relative to
    // the aperture: ratio floors at cos(half angle).
    const double r = 0.054990398423233954;
    for (double factor : {100.0, 1000.0}) {
        const double s = factor * r;
        const double ratio = axial_distance(adaptive_half_angle(r, s), s) / s;
        CHECK(ratio < 1.0);
        CHECK(ratio > (factor == 100.0 ? 0.99994 : 0.999999));
    }
}

TEST_CASE("placement gives the effective vertical offset") {
    StationPlacement gantry;
    gantry.mode = PlacementMode::Gantry;
    gantry.vertical_offset_m = 5.0;
    gantry.lateral_offset_m = 99.0;  // ignored for gantries
    CHECK(gantry.effective_vertical_m() == 5.0);

    StationPlacement side;
    side.mode = PlacementMode::Trackside;
    side.vertical_offset_m = 3.0;
    side.lateral_offset_m = 4.0;
    CHECK(rel_eq(side.effective_vertical_m(), 5.0, 1e-15));

    StationPlacement bad;
    bad.station_spacing_m = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("link geometry combines train position, station position and placement") {
    TrainState train;
    train.position_m = 160.0;
    train.transceiver_offsets_m = {0.0, 40.0};
    StationPlacement placement;  // gantry, 5 m up, 400 m spacing

    const double r = 0.054990398423233954;
    const auto g = link_geometry(train, 1, 0.0, placement, r);
    CHECK(g.longitudinal_m == 200.0);
    CHECK(g.vertical_m == 5.0);
    CHECK(rel_eq(g.slant_m, std::hypot(200.0, 5.0), 1e-15));
    CHECK(rel_eq(g.half_angle_rad, std::asin(r / g.slant_m), 1e-14));
    CHECK(rel_eq(g.axial_m, std::cos(g.half_angle_rad) * g.slant_m, 1e-15));
}

TEST_CASE("train state rejects unsorted transceiver offsets") {
    TrainState train;
    train.transceiver_offsets_m = {0.0, 10.0, 10.0};
    CHECK_THROWS_AS(train.validate(), std::invalid_argument);
    train.transceiver_offsets_m = {};
    CHECK_THROWS_AS(train.validate(), std::invalid_argument);
}

TEST_CASE("geometry from slant recovers the longitudinal leg") {
    const double r = 0.054990398423233954;
    const auto g = link_geometry_from_slant(500.0, 5.0, r);
    CHECK(g.slant_m == 500.0);
    CHECK(g.vertical_m == 5.0);
    CHECK(rel_eq(g.longitudinal_m, std::sqrt(500.0 * 500.0 - 25.0), 1e-14));
    CHECK(rel_eq(g.half_angle_rad, std::asin(r / 500.0), 1e-14));
    CHECK_THROWS_AS(link_geometry_from_slant(4.0, 5.0, r), std::domain_error);
}

TEST_CASE("nearest station resolves by distance with ties to the lower id") {
    CHECK(nearest_station_id(199.0, 400.0) == 0);
    CHECK(nearest_station_id(201.0, 400.0) == 1);
    CHECK(nearest_station_id(200.0, 400.0) == 0);   // tie
    CHECK(nearest_station_id(600.0, 400.0) == 1);   // tie between 1 and 2
    CHECK(nearest_station_id(-199.0, 400.0) == 0);
    CHECK(nearest_station_id(-201.0, 400.0) == -1);
    CHECK(nearest_station_id(-200.0, 400.0) == -1); // tie, lower id
    CHECK(nearest_station_id(0.0, 400.0) == 0);
    CHECK(nearest_station_id(1.0e7 * 3 + 100.0, 1.0e7) == 3);
}
