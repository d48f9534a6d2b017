#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fsorail/atmosphere.hpp"
#include "fsorail/divergence_control.hpp"
#include "fsorail/geometry.hpp"
#include "fsorail/optics.hpp"
#include "fsorail/receiver.hpp"

namespace fsorail::scenario {

struct ScenarioConfig {
    geometry::StationPlacement placement;
    optics::OpticalParams optical;
    receiver::ReceiverParams rx;
    control::ControllerConfig controller;

    double visibility_km = 1.0;
    double train_speed_mps = 0.0;
    double train_start_position_m = 0.0;
    std::vector<double> transceiver_offsets_m{0.0};
    double time_step_s = 0.1;
    double duration_s = 60.0;
    double ber_target = 1e-9;
    double eval_range_min_m = 75.0;
    double eval_range_max_m = 2000.0;

    atmosphere::ChannelState channel() const;
    void validate() const;

    // Fills in derived defaults that need other fields resolved: currently the
    // switched-mode bank (log-spaced between the ideal angle at eval_range_max
    // and the fixed fallback angle) when none was given.
    void resolve_defaults();
};

struct LinkEvaluation {
    double p_rx_dbm = 0.0;
    double snr_db = 0.0;
    double ber = 1.0;
    bool link_up = false;
};

// One time step of one transceiver/station link. range_m is the slant
// distance; the budget itself is evaluated at the axial distance derived from
// it, so every field is recomputable from range_m + divergence_rad + config.
struct LinkSample {
    double t_s = 0.0;
    int transceiver_id = 0;
    long long station_id = 0;
    double range_m = 0.0;
    double divergence_rad = 0.0;
    double p_rx_dbm = 0.0;
    double snr_db = 0.0;
    double ber = 1.0;
    bool link_up = false;
};

// Full chain at the geometry's axial distance: clear-air power, fog loss,
// SNR, BER, and the verdict against config.ber_target.
LinkEvaluation evaluate_link(const ScenarioConfig& config,
                             const geometry::LinkGeometry& geom,
                             double full_divergence_rad);

// Time-stepped pass. Each transceiver tracks its nearest station (ties to the
// lower station id) and carries its own controller pipeline across handovers.
// Samples are ordered by time, then transceiver. Deterministic: a rerun with
// the same config is bit-identical.
std::vector<LinkSample> run(const ScenarioConfig& config);

enum class SweepMode { Fixed, Adaptive };

std::string to_string(SweepMode mode);

struct MaxDistanceResult {
    double distance_m = 0.0;
    bool saturated = false;  // link still closed at eval_range_max_m
};

// Largest slant distance in [eval_range_min, eval_range_max] where the fogged
// received power still meets the BER target, bisected to 0.1 m. Monotone
// decrease of power over the window is asserted before solving. Throws if the
// link fails already at the window minimum.
MaxDistanceResult max_distance(const ScenarioConfig& config, double visibility_km,
                               SweepMode mode);

struct SweepRow {
    SweepMode mode = SweepMode::Fixed;
    double visibility_km = 0.0;
    double range_m = 0.0;
    double divergence_rad = 0.0;
    double p_rx_dbm = 0.0;
    double snr_db = 0.0;
    double ber = 1.0;
};

struct SweepSummary {
    double visibility_km = 0.0;
    // Present when both modes were swept; NaN otherwise.
    double mean_gap_db = 0.0;          // mean(adaptive dBm - fixed dBm) over ranges
    double max_distance_fixed_m = 0.0;
    double max_distance_adaptive_m = 0.0;
    double max_distance_ratio = 0.0;
    bool fixed_saturated = false;
    bool adaptive_saturated = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;        // (mode, visibility, range) lexicographic
    std::vector<SweepSummary> summaries;
};

// Static grid sweep. Rows are evaluated independently (optionally in parallel,
// capped by FSORAIL_MAX_WORKERS) and assembled in deterministic grid order.
SweepResult compare_sweep(const ScenarioConfig& config,
                          const std::vector<double>& ranges_m,
                          const std::vector<double>& visibilities_km,
                          const std::vector<SweepMode>& modes);

struct PlacementRow {
    double longitudinal_m = 0.0;
    double p_rx_gantry_dbm = 0.0;
    double p_rx_trackside_dbm = 0.0;
    double gap_db = 0.0;  // gantry - trackside
};

struct PlacementResult {
    std::vector<PlacementRow> rows;
    double mean_gap_db = 0.0;
    double visibility_km = 0.0;
};

// Adaptive-beam received power for the two placement geometries over a grid of
// longitudinal distances, at the config's visibility.
PlacementResult compare_placement(const ScenarioConfig& config,
                                  const geometry::StationPlacement& gantry,
                                  const geometry::StationPlacement& trackside,
                                  const std::vector<double>& longitudinal_grid_m);

// Worker-count policy shared by the parallel sweeps: hardware concurrency
// capped by the FSORAIL_MAX_WORKERS environment variable (>= 1).
unsigned resolved_worker_count(std::size_t task_count);

}  // namespace fsorail::scenario
