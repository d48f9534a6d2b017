#include "fsorail/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "fsorail/units.hpp"

namespace fsorail::scenario {

atmosphere::ChannelState ScenarioConfig::channel() const {
    return {visibility_km, optical.wavelength_m * 1e6};
}

void ScenarioConfig::validate() const {
    placement.validate();
    optical.validate();
    rx.validate();
    controller.validate();
    channel().validate();
    if (train_speed_mps < 0.0)
        throw std::invalid_argument("scenario: train_speed_mps must be >= 0");
    if (transceiver_offsets_m.empty())
        throw std::invalid_argument("scenario: transceiver_offsets_m must be non-empty");
    for (std::size_t i = 1; i < transceiver_offsets_m.size(); ++i)
        if (!(transceiver_offsets_m[i] > transceiver_offsets_m[i - 1]))
            throw std::invalid_argument(
                "scenario: transceiver_offsets_m must be strictly increasing");
    if (!(time_step_s > 0.0))
        throw std::invalid_argument("scenario: time_step_s must be > 0");
    if (!(duration_s >= 0.0))
        throw std::invalid_argument("scenario: duration_s must be >= 0");
    if (!(ber_target > 0.0) || !(ber_target < 0.5))
        throw std::invalid_argument("scenario: ber_target must lie in (0, 0.5)");
    if (!(eval_range_min_m > 0.0) || !(eval_range_max_m > eval_range_min_m))
        throw std::invalid_argument("scenario: eval range must satisfy 0 < min < max");
    if (!(eval_range_min_m > optical.rx_aperture_radius_m()))
        throw std::invalid_argument(
            "scenario: eval_range_min_m must exceed the receiver aperture radius");
}

void ScenarioConfig::resolve_defaults() {
    if (controller.mode == control::ControlMode::AdaptiveSwitched &&
        controller.switch_angles_rad.empty()) {
        const double r = optical.rx_aperture_radius_m();
        const double narrowest = 2.0 * std::asin(r / eval_range_max_m);
        controller.switch_angles_rad = control::default_switch_bank(
            narrowest, controller.fixed_full_divergence_rad, 16);
    }
}

namespace {

ScenarioConfig resolved(const ScenarioConfig& config) {
    ScenarioConfig c = config;
    c.resolve_defaults();
    c.validate();
    return c;
}

geometry::LinkGeometry geom_from_slant(const ScenarioConfig& config, double slant_m) {
    return geometry::link_geometry_from_slant(slant_m,
                                              config.placement.effective_vertical_m(),
                                              config.optical.rx_aperture_radius_m());
}

double beam_angle_for_mode(const ScenarioConfig& config, SweepMode mode,
                           const geometry::LinkGeometry& geom) {
    if (mode == SweepMode::Fixed) return config.controller.fixed_full_divergence_rad;
    return control::ideal_divergence(geom);
}

}  // namespace

LinkEvaluation evaluate_link(const ScenarioConfig& config,
                             const geometry::LinkGeometry& geom,
                             double full_divergence_rad) {
    const optics::BeamSpec beam{full_divergence_rad, optics::BeamOrigin::Adaptive};
    const double clear_w =
        optics::received_power_clear(config.optical, beam, geom.axial_m);
    const double p_dbm =
        atmosphere::received_power_fog_dbm(clear_w, config.channel(), geom.axial_m);
    const double snr_linear = receiver::snr(config.rx, watts_from_dbm(p_dbm));

    LinkEvaluation ev;
    ev.p_rx_dbm = p_dbm;
    ev.snr_db = db_from_linear(snr_linear);
    ev.ber = receiver::ber_ook_nrz(snr_linear);
    ev.link_up = ev.ber <= config.ber_target;
    return ev;
}

std::vector<LinkSample> run(const ScenarioConfig& raw) {
    const ScenarioConfig config = resolved(raw);
    const double r_rx = config.optical.rx_aperture_radius_m();

    geometry::TrainState train;
    train.speed_mps = config.train_speed_mps;
    train.transceiver_offsets_m = config.transceiver_offsets_m;
    train.validate();

    const auto n_steps =
        static_cast<long long>(std::llround(config.duration_s / config.time_step_s));
    const std::size_t n_tr = config.transceiver_offsets_m.size();

    // One expander pipeline per transceiver, alive across station handovers.
    std::vector<control::ControllerState> ctrl(n_tr);
    {
        train.position_m = config.train_start_position_m;
        for (std::size_t k = 0; k < n_tr; ++k) {
            const double pos = train.position_m + train.transceiver_offsets_m[k];
            const long long sid =
                geometry::nearest_station_id(pos, config.placement.station_spacing_m);
            const auto g0 = geometry::link_geometry(
                train, k, static_cast<double>(sid) * config.placement.station_spacing_m,
                config.placement, r_rx);
            ctrl[k] = control::make_controller_state(config.controller, 0.0, g0, r_rx);
        }
    }

    std::vector<LinkSample> samples;
    samples.reserve(static_cast<std::size_t>(n_steps + 1) * n_tr);

    for (long long i = 0; i <= n_steps; ++i) {
        const double t = static_cast<double>(i) * config.time_step_s;
        // Position from t directly, not accumulated, so reruns and symmetric
        // passes do not pick up stepwise rounding drift.
        train.position_m = config.train_start_position_m + config.train_speed_mps * t;

        for (std::size_t k = 0; k < n_tr; ++k) {
            const double pos = train.position_m + train.transceiver_offsets_m[k];
            const long long sid =
                geometry::nearest_station_id(pos, config.placement.station_spacing_m);
            const auto geom = geometry::link_geometry(
                train, k, static_cast<double>(sid) * config.placement.station_spacing_m,
                config.placement, r_rx);

            auto [next_state, active] = control::step(ctrl[k], config.controller, t, geom);
            ctrl[k] = next_state;

            const LinkEvaluation ev = evaluate_link(config, geom, active);
            LinkSample s;
            s.t_s = t;
            s.transceiver_id = static_cast<int>(k);
            s.station_id = sid;
            s.range_m = geom.slant_m;
            s.divergence_rad = active;
            s.p_rx_dbm = ev.p_rx_dbm;
            s.snr_db = ev.snr_db;
            s.ber = ev.ber;
            s.link_up = ev.link_up;
            samples.push_back(s);
        }
    }
    return samples;
}

std::string to_string(SweepMode mode) {
    return mode == SweepMode::Fixed ? "fixed" : "adaptive";
}

MaxDistanceResult max_distance(const ScenarioConfig& raw, double visibility_km,
                               SweepMode mode) {
    ScenarioConfig config = resolved(raw);
    config.visibility_km = visibility_km;
    config.channel().validate();

    const double req_dbm = dbm_from_watts(
        receiver::required_power_for_ber(config.rx, config.ber_target));

    auto power_dbm = [&](double slant) {
        const auto geom = geom_from_slant(config, slant);
        const double theta = beam_angle_for_mode(config, mode, geom);
        const optics::BeamSpec beam{theta, mode == SweepMode::Fixed
                                               ? optics::BeamOrigin::Fixed
                                               : optics::BeamOrigin::Adaptive};
        const double clear_w =
            optics::received_power_clear(config.optical, beam, geom.axial_m);
        return atmosphere::received_power_fog_dbm(clear_w, config.channel(),
                                                  geom.axial_m);
    };

    const double lo0 = config.eval_range_min_m, hi0 = config.eval_range_max_m;

    // The solver below assumes a single crossing; check the power really does
    // fall monotonically across the window before trusting it.
    {
        const int n = 64;
        double prev = power_dbm(lo0);
        for (int i = 1; i <= n; ++i) {
            const double s = lo0 + (hi0 - lo0) * static_cast<double>(i) / n;
            const double p = power_dbm(s);
            if (!(p < prev))
                throw std::runtime_error(
                    "max_distance: received power is not strictly decreasing over "
                    "the evaluation window");
            prev = p;
        }
    }

    if (power_dbm(lo0) < req_dbm)
        throw std::runtime_error(
            "max_distance: link infeasible at the evaluation window minimum");
    if (power_dbm(hi0) >= req_dbm) return {hi0, true};

    double lo = lo0, hi = hi0;
    while (hi - lo > 0.1) {
        const double mid = 0.5 * (lo + hi);
        (power_dbm(mid) >= req_dbm ? lo : hi) = mid;
    }
    return {0.5 * (lo + hi), false};
}

unsigned resolved_worker_count(std::size_t task_count) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned cap = hw;
    if (const char* env = std::getenv("FSORAIL_MAX_WORKERS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1) cap = static_cast<unsigned>(std::min<unsigned long>(v, 256));
    }
    const auto by_tasks = static_cast<unsigned>(std::min<std::size_t>(task_count, 256));
    return std::max(1u, std::min(cap, std::max(1u, by_tasks)));
}

SweepResult compare_sweep(const ScenarioConfig& raw, const std::vector<double>& ranges_m,
                          const std::vector<double>& visibilities_km,
                          const std::vector<SweepMode>& modes) {
    const ScenarioConfig base = resolved(raw);
    if (ranges_m.empty() || visibilities_km.empty() || modes.empty())
        throw std::invalid_argument("compare_sweep: empty grid");

    std::vector<SweepMode> mode_order = modes;
    std::sort(mode_order.begin(), mode_order.end(),
              [](SweepMode a, SweepMode b) { return to_string(a) < to_string(b); });
    mode_order.erase(std::unique(mode_order.begin(), mode_order.end()), mode_order.end());
    std::vector<double> vis = visibilities_km;
    std::sort(vis.begin(), vis.end());
    std::vector<double> ranges = ranges_m;
    std::sort(ranges.begin(), ranges.end());

    SweepResult result;
    result.rows.resize(mode_order.size() * vis.size() * ranges.size());

    // Row (m, v, r) lives at ((m * |vis|) + v) * |ranges| + r: already the
    // (mode, visibility, range) lexicographic order the CSV promises.
    auto fill_row = [&](std::size_t flat) {
        const std::size_t per_mode = vis.size() * ranges.size();
        const std::size_t mi = flat / per_mode;
        const std::size_t vi = (flat % per_mode) / ranges.size();
        const std::size_t ri = flat % ranges.size();

        ScenarioConfig local = base;
        local.visibility_km = vis[vi];
        const auto geom = geom_from_slant(local, ranges[ri]);
        const double theta = beam_angle_for_mode(local, mode_order[mi], geom);
        const LinkEvaluation ev = evaluate_link(local, geom, theta);

        SweepRow& row = result.rows[flat];
        row.mode = mode_order[mi];
        row.visibility_km = vis[vi];
        row.range_m = ranges[ri];
        row.divergence_rad = theta;
        row.p_rx_dbm = ev.p_rx_dbm;
        row.snr_db = ev.snr_db;
        row.ber = ev.ber;
    };

    const std::size_t total = result.rows.size();
    const unsigned workers = resolved_worker_count(total);
    if (workers <= 1) {
        for (std::size_t i = 0; i < total; ++i) fill_row(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < total; i += workers) fill_row(i);
            });
        for (auto& th : pool) th.join();
    }

    const bool both = mode_order.size() == 2;
    if (both) {
        const std::size_t per_mode = vis.size() * ranges.size();
        // mode_order is name-sorted: adaptive first, fixed second.
        for (std::size_t vi = 0; vi < vis.size(); ++vi) {
            SweepSummary sum;
            sum.visibility_km = vis[vi];
            double acc = 0.0;
            for (std::size_t ri = 0; ri < ranges.size(); ++ri) {
                const double ad = result.rows[vi * ranges.size() + ri].p_rx_dbm;
                const double fx = result.rows[per_mode + vi * ranges.size() + ri].p_rx_dbm;
                acc += ad - fx;
            }
            sum.mean_gap_db = acc / static_cast<double>(ranges.size());
            const auto mf = max_distance(base, vis[vi], SweepMode::Fixed);
            const auto ma = max_distance(base, vis[vi], SweepMode::Adaptive);
            sum.max_distance_fixed_m = mf.distance_m;
            sum.max_distance_adaptive_m = ma.distance_m;
            sum.fixed_saturated = mf.saturated;
            sum.adaptive_saturated = ma.saturated;
            sum.max_distance_ratio = ma.distance_m / mf.distance_m;
            result.summaries.push_back(sum);
        }
    }
    return result;
}

PlacementResult compare_placement(const ScenarioConfig& raw,
                                  const geometry::StationPlacement& gantry,
                                  const geometry::StationPlacement& trackside,
                                  const std::vector<double>& longitudinal_grid_m) {
    const ScenarioConfig config = resolved(raw);
    gantry.validate();
    trackside.validate();
    if (longitudinal_grid_m.empty())
        throw std::invalid_argument("compare_placement: empty grid");

    const double r_rx = config.optical.rx_aperture_radius_m();
    auto adaptive_power_dbm = [&](double longitudinal, const geometry::StationPlacement& p) {
        const double v = p.effective_vertical_m();
        geometry::LinkGeometry g;
        g.longitudinal_m = longitudinal;
        g.vertical_m = v;
        g.slant_m = geometry::slant_distance(v, longitudinal);
        g.half_angle_rad = geometry::adaptive_half_angle(r_rx, g.slant_m);
        g.axial_m = geometry::axial_distance(g.half_angle_rad, g.slant_m);
        return evaluate_link(config, g, control::ideal_divergence(g)).p_rx_dbm;
    };

    PlacementResult result;
    result.visibility_km = config.visibility_km;
    result.rows.reserve(longitudinal_grid_m.size());
    double acc = 0.0;
    for (const double L : longitudinal_grid_m) {
        PlacementRow row;
        row.longitudinal_m = L;
        row.p_rx_gantry_dbm = adaptive_power_dbm(L, gantry);
        row.p_rx_trackside_dbm = adaptive_power_dbm(L, trackside);
        row.gap_db = row.p_rx_gantry_dbm - row.p_rx_trackside_dbm;
        acc += row.gap_db;
        result.rows.push_back(row);
    }
    result.mean_gap_db = acc / static_cast<double>(result.rows.size());
    return result;
}

}  // namespace fsorail::scenario
