#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "fsorail/divergence_control.hpp"
#include "fsorail/scenario.hpp"
#include "fsorail/units.hpp"
#include "test_helpers.hpp"

using namespace fsorail;
using namespace fsorail::scenario;

namespace {

ScenarioConfig base_config() { return ScenarioConfig{}; }  // defaults carry the reference set

geometry::LinkGeometry at_slant(const ScenarioConfig& cfg, double slant_m) {
    return geometry::link_geometry_from_slant(slant_m, cfg.placement.effective_vertical_m(),
                                              cfg.optical.rx_aperture_radius_m());
}

}  // namespace

TEST_CASE("link evaluation composes the budget, fog, and receiver chain") {
    const auto cfg = base_config();
    const auto g = at_slant(cfg, 500.0);
    const auto ev = evaluate_link(cfg, g, 1e-3);

    const double clear_w = optics::received_power_clear(
        cfg.optical, {1e-3, optics::BeamOrigin::Fixed}, g.axial_m);
    const double expect_dbm =
        atmosphere::received_power_fog_dbm(clear_w, cfg.channel(), g.axial_m);
    CHECK(rel_eq(ev.p_rx_dbm, expect_dbm, 1e-14));
    const double s = receiver::snr(cfg.rx, watts_from_dbm(expect_dbm));
    CHECK(rel_eq(ev.snr_db, db_from_linear(s), 1e-14));
    CHECK(rel_eq(ev.ber, receiver::ber_ook_nrz(s), 1e-14));
    CHECK(ev.link_up == (ev.ber <= cfg.ber_target));
}

TEST_CASE("a run emits one sample per transceiver per time step") {
    auto cfg = base_config();
    cfg.duration_s = 60.0;
    cfg.time_step_s = 0.1;
    cfg.train_start_position_m = 100.0;
    const auto samples = run(cfg);
    CHECK(samples.size() == 601);

    cfg.transceiver_offsets_m = {0.0, 50.0};
    const auto pairs = run(cfg);
    CHECK(pairs.size() == 1202);
    // time-major, transceiver-minor ordering
    CHECK(pairs[0].transceiver_id == 0);
    CHECK(pairs[1].transceiver_id == 1);
    CHECK(pairs[0].t_s == pairs[1].t_s);
    CHECK(pairs[2].t_s > pairs[1].t_s);
}

TEST_CASE("a stationary train sees a constant link") {
    auto cfg = base_config();
    cfg.train_speed_mps = 0.0;
    cfg.train_start_position_m = 137.0;
    cfg.duration_s = 5.0;
    const auto samples = run(cfg);
    for (const auto& s : samples) {
        CHECK(s.p_rx_dbm == samples.front().p_rx_dbm);
        CHECK(s.divergence_rad == samples.front().divergence_rad);
        CHECK(s.range_m == samples.front().range_m);
    }
}

TEST_CASE("an approach and a recession at the same distance look identical") {
    auto cfg = base_config();
    cfg.placement.station_spacing_m = 1e7;  // single station in play
    cfg.train_start_position_m = -500.0;
    cfg.train_speed_mps = 100.0;
    cfg.duration_s = 10.0;
    cfg.time_step_s = 0.1;
    const auto samples = run(cfg);
    REQUIRE(samples.size() == 101);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& a = samples[i];
        const auto& b = samples[samples.size() - 1 - i];
        CHECK(std::fabs(a.range_m - b.range_m) < 1e-9);
        CHECK(std::fabs(a.p_rx_dbm - b.p_rx_dbm) < 1e-9);
    }
}

TEST_CASE("samples are recomputable from range and divergence alone") {
    auto cfg = base_config();
    cfg.train_start_position_m = -300.0;
    cfg.train_speed_mps = 80.0;
    cfg.duration_s = 8.0;
    const auto samples = run(cfg);
    for (const auto& s : samples) {
        const auto g = at_slant(cfg, s.range_m);
        const auto ev = evaluate_link(cfg, g, s.divergence_rad);
        CHECK(rel_eq(ev.p_rx_dbm, s.p_rx_dbm, 1e-9));
        CHECK(rel_eq(ev.snr_db, s.snr_db, 1e-9));
        CHECK((s.ber == 0.0 ? ev.ber == 0.0 : rel_eq(ev.ber, s.ber, 1e-9)));
        CHECK(ev.link_up == s.link_up);
    }
}

TEST_CASE("repeated runs are bit identical") {
    auto cfg = base_config();
    cfg.controller.mode = control::ControlMode::AdaptiveMotorized;
    cfg.train_start_position_m = 75.0;
    cfg.train_speed_mps = 111.11111111111111;
    cfg.duration_s = 20.0;
    const auto a = run(cfg);
    const auto b = run(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].t_s == b[i].t_s);
        CHECK(a[i].range_m == b[i].range_m);
        CHECK(a[i].divergence_rad == b[i].divergence_rad);
        CHECK(a[i].p_rx_dbm == b[i].p_rx_dbm);
        CHECK(a[i].snr_db == b[i].snr_db);
        CHECK(a[i].ber == b[i].ber);
    }
}

TEST_CASE("the train hands over to the nearer station as it passes midspan") {
    auto cfg = base_config();
    cfg.placement.station_spacing_m = 400.0;
    cfg.train_start_position_m = 0.0;
    cfg.train_speed_mps = 100.0;
    cfg.duration_s = 4.0;
    cfg.time_step_s = 0.1;
    const auto samples = run(cfg);
    CHECK(samples.front().station_id == 0);
    CHECK(samples.back().station_id == 1);
    const double max_range = std::hypot(200.0, 5.0) + 1e-9;
    long long prev = samples.front().station_id;
    for (const auto& s : samples) {
        CHECK(s.station_id >= prev);
        prev = s.station_id;
        CHECK(s.range_m <= max_range);
    }
}

TEST_CASE("aperture-matched beams never lose to the fixed beam beyond the equal-width point") {
    // The two beams have the same footprint where fixed divergence times range
    // equals the receiver aperture; beyond it the matched beam collects more.
    const auto cfg = base_config();
    for (double R = 110.0; R <= 2000.0; R += 10.0) {
        const auto g = at_slant(cfg, R);
        const auto fixed = evaluate_link(cfg, g, cfg.controller.fixed_full_divergence_rad);
        const auto adaptive = evaluate_link(cfg, g, control::ideal_divergence(g));
        CHECK(adaptive.p_rx_dbm >= fixed.p_rx_dbm);
        CHECK(adaptive.ber <= fixed.ber);
    }
}

TEST_CASE("threshold distances match the independently solved link budget") {
    const auto cfg = base_config();
    const auto f1 = max_distance(cfg, 1.0, SweepMode::Fixed);
    CHECK(std::fabs(f1.distance_m - 500.21038228191223) < 0.06);
    CHECK_FALSE(f1.saturated);
    const auto f05 = max_distance(cfg, 0.5, SweepMode::Fixed);
    CHECK(std::fabs(f05.distance_m - 357.80316677609827) < 0.06);
    const auto a05 = max_distance(cfg, 0.5, SweepMode::Adaptive);
    CHECK(std::fabs(a05.distance_m - 993.2172288783599) < 0.06);
    const auto a1 = max_distance(cfg, 1.0, SweepMode::Adaptive);
    CHECK(a1.distance_m == 2000.0);
    CHECK(a1.saturated);
    const auto a01 = max_distance(cfg, 0.1, SweepMode::Adaptive);
    CHECK(std::fabs(a01.distance_m - 198.64345560375472) < 0.06);
}

TEST_CASE("an infeasible window floor is an error, not a zero") {
    const auto cfg = base_config();
    CHECK_THROWS_AS(max_distance(cfg, 0.02, SweepMode::Fixed), std::runtime_error);
}

TEST_CASE("sweep rows are ordered and reproduce the metre-grid power gap") {
    const auto cfg = base_config();
    std::vector<double> ranges;
    for (double r = 75.0; r <= 2000.0; r += 1.0) ranges.push_back(r);

    const auto result = compare_sweep(cfg, ranges, {1.0},
                                      {SweepMode::Fixed, SweepMode::Adaptive});
    REQUIRE(result.rows.size() == 2 * ranges.size());
    // name order: adaptive block first, ranges ascending inside
    CHECK(result.rows.front().mode == SweepMode::Adaptive);
    CHECK(result.rows.front().range_m == 75.0);
    CHECK(result.rows[ranges.size() - 1].range_m == 2000.0);
    CHECK(result.rows[ranges.size()].mode == SweepMode::Fixed);
    for (std::size_t i = ranges.size(); i < result.rows.size(); ++i)
        CHECK(result.rows[i].divergence_rad == 1e-3);

    REQUIRE(result.summaries.size() == 1);
    CHECK(std::fabs(result.summaries[0].mean_gap_db - 33.374578307219569) < 1e-5);
    CHECK(result.summaries[0].max_distance_ratio ==
          result.summaries[0].max_distance_adaptive_m /
              result.summaries[0].max_distance_fixed_m);
    CHECK(result.summaries[0].adaptive_saturated);
}

TEST_CASE("sweep output does not depend on the worker count") {
    const auto cfg = base_config();
    std::vector<double> ranges;
    for (double r = 75.0; r <= 2000.0; r += 12.5) ranges.push_back(r);

    setenv("FSORAIL_MAX_WORKERS", "1", 1);
    const auto serial = compare_sweep(cfg, ranges, {0.5, 1.0},
                                      {SweepMode::Fixed, SweepMode::Adaptive});
    setenv("FSORAIL_MAX_WORKERS", "8", 1);
    const auto parallel = compare_sweep(cfg, ranges, {0.5, 1.0},
                                        {SweepMode::Fixed, SweepMode::Adaptive});
    unsetenv("FSORAIL_MAX_WORKERS");

    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].p_rx_dbm == parallel.rows[i].p_rx_dbm);
        CHECK(serial.rows[i].ber == parallel.rows[i].ber);
        CHECK(serial.rows[i].range_m == parallel.rows[i].range_m);
        CHECK(serial.rows[i].visibility_km == parallel.rows[i].visibility_km);
    }
}

TEST_CASE("worker count honors the environment cap") {
    setenv("FSORAIL_MAX_WORKERS", "3", 1);
    CHECK(resolved_worker_count(100) <= 3);
    CHECK(resolved_worker_count(2) <= 2);
    unsetenv("FSORAIL_MAX_WORKERS");
    CHECK(resolved_worker_count(1) == 1);
    CHECK(resolved_worker_count(0) == 1);
}

TEST_CASE("overhead mounting never collects less than a trackside cabinet") {
    const auto cfg = base_config();
    geometry::StationPlacement gantry;  // 5 m overhead
    geometry::StationPlacement trackside;
    trackside.mode = geometry::PlacementMode::Trackside;
    trackside.vertical_offset_m = 3.0;
    trackside.lateral_offset_m = 5.0;

    std::vector<double> grid;
    for (double l = 75.0; l <= 2000.0; l += 25.0) grid.push_back(l);
    const auto result = compare_placement(cfg, gantry, trackside, grid);
    REQUIRE(result.rows.size() == grid.size());
    for (const auto& row : result.rows) {
        CHECK(row.p_rx_gantry_dbm >= row.p_rx_trackside_dbm);
        CHECK(row.gap_db == row.p_rx_gantry_dbm - row.p_rx_trackside_dbm);
    }
    CHECK(result.mean_gap_db > 0.0);
}

TEST_CASE("switched controllers get a default bank spanning the evaluation window") {
    auto cfg = base_config();
    cfg.controller.mode = control::ControlMode::AdaptiveSwitched;
    cfg.controller.switch_angles_rad.clear();
    cfg.resolve_defaults();
    REQUIRE(cfg.controller.switch_angles_rad.size() == 16);
    CHECK(rel_eq(cfg.controller.switch_angles_rad.front(),
                 2.0 * std::asin(cfg.optical.rx_aperture_radius_m() / cfg.eval_range_max_m),
                 1e-13));
    CHECK(cfg.controller.switch_angles_rad.back() ==
          cfg.controller.fixed_full_divergence_rad);
    cfg.validate();  // resolved config must be valid as-is
}

TEST_CASE("scenario validation rejects inconsistent inputs") {
    auto cfg = base_config();
    cfg.time_step_s = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = base_config();
    cfg.transceiver_offsets_m = {10.0, 10.0};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = base_config();
    cfg.ber_target = 0.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = base_config();
    cfg.eval_range_min_m = 2000.0;
    cfg.eval_range_max_m = 75.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = base_config();
    cfg.visibility_km = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}
