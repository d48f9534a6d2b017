#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fsorail/config.hpp"
#include "fsorail/csv.hpp"
#include "fsorail/presets.hpp"
#include "fsorail/scenario.hpp"
#include "fsorail/units.hpp"
#include "fsorail/version.hpp"

namespace {

using namespace fsorail;

std::vector<double> parse_number_list(const std::string& text) {
    // Comma-separated values; a start:stop:step token expands to a grid.
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string token = text.substr(pos, comma - pos);
        if (token.empty()) throw std::invalid_argument("empty entry in number list");
        const std::size_t c1 = token.find(':');
        try {
            if (c1 == std::string::npos) {
                out.push_back(std::stod(token));
            } else {
                const std::size_t c2 = token.find(':', c1 + 1);
                if (c2 == std::string::npos)
                    throw std::invalid_argument("grid token needs start:stop:step");
                const double start = std::stod(token.substr(0, c1));
                const double stop = std::stod(token.substr(c1 + 1, c2 - c1 - 1));
                const double step = std::stod(token.substr(c2 + 1));
                for (const double v : presets::grid(start, stop, step)) out.push_back(v);
            }
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("cannot parse number list entry '" + token + "'");
        }
        pos = comma + 1;
    }
    return out;
}

std::vector<scenario::SweepMode> parse_modes(const std::string& text) {
    std::vector<scenario::SweepMode> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string token = text.substr(pos, comma - pos);
        if (token == "fixed")
            out.push_back(scenario::SweepMode::Fixed);
        else if (token == "adaptive")
            out.push_back(scenario::SweepMode::Adaptive);
        else
            throw std::invalid_argument("mode must be 'fixed' or 'adaptive', got '" +
                                        token + "'");
        pos = comma + 1;
    }
    return out;
}

struct Loaded {
    scenario::ScenarioConfig config;
    const presets::Preset* preset = nullptr;  // set when --preset was given
};

Loaded load(const std::string& config_arg, const std::string& preset_name) {
    Loaded l;
    if (!preset_name.empty()) {
        if (!config_arg.empty())
            throw std::invalid_argument("give either a config argument or --preset, not both");
        l.preset = &presets::get(preset_name);
        l.config = config::parse_config(l.preset->config_json);
    } else {
        l.config = config::load_config(config_arg.empty() ? "table1" : config_arg);
    }
    return l;
}

void warn_dense_fog(double visibility_km) {
    if (visibility_km <= atmosphere::kDenseFogVisibilityKm)
        std::fprintf(stderr,
                     "warning: visibility %g km is at or below the dense-fog boundary "
                     "(%g km); attenuation is wavelength-independent there\n",
                     visibility_km, atmosphere::kDenseFogVisibilityKm);
}

void write_output(const std::string& out_path, const csv::Table& table,
                  const scenario::ScenarioConfig& cfg, const std::string& command,
                  const std::string& started_at) {
    csv::write_file_atomic(out_path, table.to_string());
    config::RunManifest manifest;
    manifest.tool_version = kVersion;
    manifest.command = command;
    manifest.config_digest = config::config_digest(cfg);
    manifest.started_at = started_at;
    manifest.finished_at = config::iso8601_utc_now();
    manifest.resolved_config_json = config::canonical_json(cfg);
    csv::write_file_atomic(out_path + ".manifest.json", config::manifest_json(manifest));
    std::printf("wrote %zu rows to %s\n", table.rows.size(), out_path.c_str());
}

std::string joined_command(int argc, char** argv) {
    std::string s;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) s += ' ';
        s += argv[i];
    }
    return s;
}

std::string fmt(double v) { return csv::format_double(v); }

int cmd_link(const Loaded& l, double range_m, std::optional<double> visibility_km,
             const std::string& mode_name) {
    scenario::ScenarioConfig cfg = l.config;
    if (visibility_km) cfg.visibility_km = *visibility_km;
    cfg.validate();
    warn_dense_fog(cfg.visibility_km);

    const auto geom = geometry::link_geometry_from_slant(
        range_m, cfg.placement.effective_vertical_m(), cfg.optical.rx_aperture_radius_m());
    const double divergence = mode_name == "fixed"
                                  ? cfg.controller.fixed_full_divergence_rad
                                  : control::ideal_divergence(geom);
    const auto ev = scenario::evaluate_link(cfg, geom, divergence);
    const double required_dbm =
        dbm_from_watts(receiver::required_power_for_ber(cfg.rx, cfg.ber_target));

    std::printf("range_m            %s\n", fmt(range_m).c_str());
    std::printf("visibility_km      %s\n", fmt(cfg.visibility_km).c_str());
    std::printf("mode               %s\n", mode_name.c_str());
    std::printf("divergence_mrad    %s\n", fmt(divergence * 1e3).c_str());
    std::printf("p_rx_dbm           %s\n", fmt(ev.p_rx_dbm).c_str());
    std::printf("required_p_dbm     %s\n", fmt(required_dbm).c_str());
    std::printf("margin_db          %s\n", fmt(ev.p_rx_dbm - required_dbm).c_str());
    std::printf("snr_db             %s\n", fmt(ev.snr_db).c_str());
    std::printf("ber                %s\n", fmt(ev.ber).c_str());
    std::printf("link_up            %s\n", ev.link_up ? "yes" : "no");
    if (!ev.link_up) {
        std::fprintf(stderr, "link infeasible: ber %s exceeds target %s\n",
                     fmt(ev.ber).c_str(), fmt(cfg.ber_target).c_str());
        return 2;
    }
    return 0;
}

int cmd_sweep(const Loaded& l, std::vector<double> ranges, std::vector<double> vis,
              std::vector<scenario::SweepMode> modes, const std::string& out_path,
              const std::string& command, const std::string& started_at) {
    const scenario::ScenarioConfig& cfg = l.config;
    if (ranges.empty() && l.preset) ranges = l.preset->ranges_m;
    if (vis.empty() && l.preset) vis = l.preset->visibilities_km;
    if (modes.empty() && l.preset) modes = l.preset->modes;
    if (ranges.empty())
        ranges = presets::grid(cfg.eval_range_min_m, cfg.eval_range_max_m, 25.0);
    if (vis.empty()) vis = {cfg.visibility_km};
    if (modes.empty()) modes = {scenario::SweepMode::Fixed, scenario::SweepMode::Adaptive};
    for (const double v : vis) warn_dense_fog(v);

    const auto result = scenario::compare_sweep(cfg, ranges, vis, modes);

    csv::Table table;
    table.header = {"mode", "visibility_km", "range_m", "divergence_rad",
                    "p_rx_dbm", "snr_db", "ber"};
    for (const auto& row : result.rows)
        table.rows.push_back({to_string(row.mode), fmt(row.visibility_km),
                              fmt(row.range_m), fmt(row.divergence_rad),
                              fmt(row.p_rx_dbm), fmt(row.snr_db), fmt(row.ber)});
    write_output(out_path, table, cfg, command, started_at);

    for (const auto& s : result.summaries)
        std::printf("V=%s km: mean adaptive-fixed gap %s dB; max distance fixed %s m%s, "
                    "adaptive %s m%s (ratio %s)\n",
                    fmt(s.visibility_km).c_str(), fmt(s.mean_gap_db).c_str(),
                    fmt(s.max_distance_fixed_m).c_str(), s.fixed_saturated ? " (window max)" : "",
                    fmt(s.max_distance_adaptive_m).c_str(),
                    s.adaptive_saturated ? " (window max)" : "", fmt(s.max_distance_ratio).c_str());
    return 0;
}

int cmd_maxdist(const Loaded& l, std::vector<double> vis,
                std::vector<scenario::SweepMode> modes, const std::string& out_path,
                const std::string& command, const std::string& started_at) {
    const scenario::ScenarioConfig& cfg = l.config;
    if (vis.empty() && l.preset) vis = l.preset->visibilities_km;
    if (modes.empty() && l.preset) modes = l.preset->modes;
    if (vis.empty()) vis = {cfg.visibility_km};
    if (modes.empty()) modes = {scenario::SweepMode::Fixed, scenario::SweepMode::Adaptive};
    for (const double v : vis) warn_dense_fog(v);

    std::sort(vis.begin(), vis.end());
    std::vector<scenario::SweepMode> mode_order = modes;
    std::sort(mode_order.begin(), mode_order.end(),
              [](scenario::SweepMode a, scenario::SweepMode b) {
                  return to_string(a) < to_string(b);
              });
    mode_order.erase(std::unique(mode_order.begin(), mode_order.end()), mode_order.end());

    csv::Table table;
    table.header = {"mode", "visibility_km", "max_distance_m", "saturated"};
    for (const auto mode : mode_order)
        for (const double v : vis) {
            const auto r = scenario::max_distance(cfg, v, mode);
            table.rows.push_back({to_string(mode), fmt(v), fmt(r.distance_m),
                                  r.saturated ? "1" : "0"});
        }
    write_output(out_path, table, cfg, command, started_at);
    return 0;
}

int cmd_pass(const Loaded& l, const std::string& out_path, const std::string& command,
             const std::string& started_at) {
    const scenario::ScenarioConfig& cfg = l.config;
    warn_dense_fog(cfg.visibility_km);
    const auto samples = scenario::run(cfg);

    csv::Table table;
    table.header = {"t_s", "transceiver_id", "station_id", "range_m",
                    "divergence_rad", "p_rx_dbm", "snr_db", "ber", "link_up"};
    for (const auto& s : samples)
        table.rows.push_back({fmt(s.t_s), std::to_string(s.transceiver_id),
                              std::to_string(s.station_id), fmt(s.range_m),
                              fmt(s.divergence_rad), fmt(s.p_rx_dbm), fmt(s.snr_db),
                              fmt(s.ber), s.link_up ? "1" : "0"});
    write_output(out_path, table, cfg, command, started_at);
    return 0;
}

int cmd_placement(const Loaded& l, std::vector<double> longitudinals,
                  double trackside_vertical_m, double trackside_lateral_m,
                  const std::string& out_path, const std::string& command,
                  const std::string& started_at) {
    const scenario::ScenarioConfig& cfg = l.config;
    warn_dense_fog(cfg.visibility_km);
    if (longitudinals.empty() && l.preset) longitudinals = l.preset->ranges_m;
    if (longitudinals.empty())
        longitudinals = presets::grid(cfg.eval_range_min_m, cfg.eval_range_max_m, 25.0);

    geometry::StationPlacement gantry = cfg.placement;
    gantry.mode = geometry::PlacementMode::Gantry;
    gantry.lateral_offset_m = 0.0;
    geometry::StationPlacement trackside;
    trackside.mode = geometry::PlacementMode::Trackside;
    trackside.vertical_offset_m = trackside_vertical_m;
    trackside.lateral_offset_m = trackside_lateral_m;
    trackside.station_spacing_m = cfg.placement.station_spacing_m;

    const auto result = scenario::compare_placement(cfg, gantry, trackside, longitudinals);

    csv::Table table;
    table.header = {"longitudinal_m", "p_rx_gantry_dbm", "p_rx_trackside_dbm", "gap_db"};
    for (const auto& row : result.rows)
        table.rows.push_back({fmt(row.longitudinal_m), fmt(row.p_rx_gantry_dbm),
                              fmt(row.p_rx_trackside_dbm), fmt(row.gap_db)});
    write_output(out_path, table, cfg, command, started_at);
    std::printf("mean gantry-trackside gap %s dB at V=%s km\n",
                fmt(result.mean_gap_db).c_str(), fmt(result.visibility_km).c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Free-space optical train-to-ground link simulator"};
    app.set_version_flag("--version", std::string("fsorail ") + kVersion);
    app.require_subcommand(1);

    const std::string started_at = config::iso8601_utc_now();
    const std::string command = joined_command(argc, argv);

    std::string config_arg, preset_name, out_path, mode_name = "adaptive";
    std::string ranges_text, vis_text, modes_text, longitudinals_text;
    double range_m = 500.0, trackside_vertical_m = 3.0, trackside_lateral_m = 5.0;
    std::optional<double> visibility_km;

    auto add_common = [&](CLI::App* sub, bool with_preset) {
        sub->add_option("config", config_arg,
                        "Config file path or preset name (default: table1)");
        if (with_preset)
            sub->add_option("--preset", preset_name,
                            "Built-in preset supplying config and grids")
                ->check(CLI::IsMember(presets::names()));
    };

    CLI::App* link = app.add_subcommand("link", "Evaluate a single link");
    add_common(link, false);
    link->add_option("--range", range_m, "Slant range in meters")->check(CLI::PositiveNumber);
    link->add_option("--visibility", visibility_km, "Visibility in km");
    link->add_option("--mode", mode_name, "Beam mode")
        ->check(CLI::IsMember({"fixed", "adaptive"}));

    CLI::App* sweep = app.add_subcommand("sweep", "Power/SNR/BER over a range grid");
    add_common(sweep, true);
    sweep->add_option("--ranges", ranges_text, "Ranges in m (comma list or start:stop:step)");
    sweep->add_option("--visibilities", vis_text, "Visibilities in km");
    sweep->add_option("--modes", modes_text, "Comma list of fixed,adaptive");
    sweep->add_option("--out", out_path, "Output CSV path")->required();

    CLI::App* maxdist = app.add_subcommand("maxdist", "Largest range meeting the BER target");
    add_common(maxdist, true);
    maxdist->add_option("--visibilities", vis_text, "Visibilities in km");
    maxdist->add_option("--modes", modes_text, "Comma list of fixed,adaptive");
    maxdist->add_option("--out", out_path, "Output CSV path")->required();

    CLI::App* pass = app.add_subcommand("pass", "Time series of a train pass");
    add_common(pass, true);
    pass->add_option("--out", out_path, "Output CSV path")->required();

    CLI::App* placement = app.add_subcommand("placement",
                                             "Gantry vs trackside mounting comparison");
    add_common(placement, true);
    placement->add_option("--longitudinals", longitudinals_text,
                          "Longitudinal offsets in m (comma list or start:stop:step)");
    placement->add_option("--trackside-vertical-m", trackside_vertical_m,
                          "Trackside unit mounting height");
    placement->add_option("--trackside-lateral-m", trackside_lateral_m,
                          "Trackside unit lateral offset from track center");
    placement->add_option("--out", out_path, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        const Loaded l = load(config_arg, preset_name);
        const auto ranges = ranges_text.empty() ? std::vector<double>{}
                                                : parse_number_list(ranges_text);
        const auto vis = vis_text.empty() ? std::vector<double>{}
                                          : parse_number_list(vis_text);
        const auto modes = modes_text.empty() ? std::vector<scenario::SweepMode>{}
                                              : parse_modes(modes_text);
        const auto longitudinals = longitudinals_text.empty()
                                       ? std::vector<double>{}
                                       : parse_number_list(longitudinals_text);

        if (link->parsed()) return cmd_link(l, range_m, visibility_km, mode_name);
        if (sweep->parsed())
            return cmd_sweep(l, ranges, vis, modes, out_path, command, started_at);
        if (maxdist->parsed())
            return cmd_maxdist(l, vis, modes, out_path, command, started_at);
        if (pass->parsed()) return cmd_pass(l, out_path, command, started_at);
        if (placement->parsed())
            return cmd_placement(l, longitudinals, trackside_vertical_m,
                                 trackside_lateral_m, out_path, command, started_at);
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
