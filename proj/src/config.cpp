#include "fsorail/config.hpp"

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "fsorail/presets.hpp"
#include "fsorail/units.hpp"
#include "fsorail/version.hpp"

namespace fsorail::config {

using nlohmann::json;

namespace {

[[noreturn]] void bad_key(const std::string& key, const std::string& why) {
    throw std::invalid_argument("config: key '" + key + "' " + why);
}

// Tracks which keys of one JSON object have been consumed so that leftovers
// can be reported by name instead of silently ignored.
class Section {
public:
    Section(const json& obj, std::string prefix)
        : obj_(obj), prefix_(std::move(prefix)) {
        if (!obj_.is_object()) bad_key(prefix_.empty() ? "<root>" : prefix_, "must be an object");
    }

    bool has(const std::string& key) {
        if (!obj_.contains(key)) return false;
        seen_.insert(key);
        return true;
    }

    double number(const std::string& key, double fallback) {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_number()) bad_key(path(key), "must be a number");
        return v.get<double>();
    }

    std::string text(const std::string& key, const std::string& fallback) {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_string()) bad_key(path(key), "must be a string");
        return v.get<std::string>();
    }

    std::vector<double> number_list(const std::string& key,
                                    const std::vector<double>& fallback) {
        if (!has(key)) return fallback;
        const json& v = obj_.at(key);
        if (!v.is_array()) bad_key(path(key), "must be an array of numbers");
        std::vector<double> out;
        out.reserve(v.size());
        for (const json& item : v) {
            if (!item.is_number()) bad_key(path(key), "must be an array of numbers");
            out.push_back(item.get<double>());
        }
        return out;
    }

    const json* subsection(const std::string& key) {
        if (!has(key)) return nullptr;
        return &obj_.at(key);
    }

    std::string path(const std::string& key) const {
        return prefix_.empty() ? key : prefix_ + "." + key;
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key())) bad_key(path(it.key()), "is not recognized");
    }

private:
    const json& obj_;
    std::string prefix_;
    std::set<std::string> seen_;
};

void parse_placement(const json& obj, geometry::StationPlacement& p) {
    Section s(obj, "placement");
    const std::string mode = s.text("mode", "gantry");
    if (mode == "gantry")
        p.mode = geometry::PlacementMode::Gantry;
    else if (mode == "trackside")
        p.mode = geometry::PlacementMode::Trackside;
    else
        bad_key("placement.mode", "must be \"gantry\" or \"trackside\"");
    p.vertical_offset_m = s.number("vertical_offset_m", p.vertical_offset_m);
    p.lateral_offset_m = s.number("lateral_offset_m", p.lateral_offset_m);
    p.station_spacing_m = s.number("station_spacing_m", p.station_spacing_m);
    s.finish();
}

// Each quantity may be spelled in exactly one of its accepted units; the
// canonical echo uses the SI spelling so values survive round-trips verbatim.
double pick_unit(Section& s, std::initializer_list<std::pair<const char*, double>> spellings,
                 double fallback) {
    const char* found = nullptr;
    double value = fallback;
    for (const auto& [key, divisor] : spellings) {
        if (!s.has(key)) continue;
        if (found) bad_key(s.path(key), std::string("conflicts with ") + found + "; give only one");
        found = key;
        value = s.number(key, 0.0) / divisor;
    }
    return value;
}

void parse_optical(const json& obj, optics::OpticalParams& o) {
    Section s(obj, "optical");
    o.wavelength_m = pick_unit(s, {{"wavelength_nm", 1e9}, {"wavelength_m", 1.0}},
                               o.wavelength_m);
    const bool has_mw = obj.contains("tx_power_mw");
    const bool has_dbm = obj.contains("tx_power_dbm");
    const bool has_w = obj.contains("tx_power_w");
    if (has_mw + has_dbm + has_w > 1)
        bad_key("optical.tx_power_mw",
                "tx power must be given in exactly one of mW, dBm, or W");
    if (has_mw) o.tx_power_w = s.number("tx_power_mw", 0.0) / 1000.0;
    if (has_dbm) o.tx_power_w = watts_from_dbm(s.number("tx_power_dbm", 0.0));
    if (has_w) o.tx_power_w = s.number("tx_power_w", 0.0);
    o.tx_aperture_area_m2 = pick_unit(
        s, {{"tx_aperture_area_cm2", 1e4}, {"tx_aperture_area_m2", 1.0}},
        o.tx_aperture_area_m2);
    o.rx_aperture_area_m2 = pick_unit(
        s, {{"rx_aperture_area_cm2", 1e4}, {"rx_aperture_area_m2", 1.0}},
        o.rx_aperture_area_m2);
    o.system_loss = s.number("system_loss", o.system_loss);
    o.tx_pointing_error_rad = pick_unit(
        s, {{"tx_pointing_error_mrad", 1e3}, {"tx_pointing_error_rad", 1.0}},
        o.tx_pointing_error_rad);
    o.rx_pointing_error_rad = pick_unit(
        s, {{"rx_pointing_error_mrad", 1e3}, {"rx_pointing_error_rad", 1.0}},
        o.rx_pointing_error_rad);
    s.finish();
}

void parse_receiver(const json& obj, receiver::ReceiverParams& r) {
    Section s(obj, "receiver");
    r.sensitivity_a_per_w = s.number("sensitivity_a_per_w", r.sensitivity_a_per_w);
    r.apd_gain = s.number("apd_gain", r.apd_gain);
    r.excess_noise_factor = s.number("excess_noise_factor", r.excess_noise_factor);
    r.bandwidth_hz = s.number("bandwidth_hz", r.bandwidth_hz);
    r.load_resistance_ohm = s.number("load_resistance_ohm", r.load_resistance_ohm);
    r.temperature_k = s.number("temperature_k", r.temperature_k);
    s.finish();
}

void parse_controller(const json& obj, control::ControllerConfig& c) {
    Section s(obj, "controller");
    const std::string mode = s.text("mode", "adaptive_ideal");
    if (mode == "fixed")
        c.mode = control::ControlMode::Fixed;
    else if (mode == "adaptive_ideal")
        c.mode = control::ControlMode::AdaptiveIdeal;
    else if (mode == "adaptive_motorized")
        c.mode = control::ControlMode::AdaptiveMotorized;
    else if (mode == "adaptive_switched")
        c.mode = control::ControlMode::AdaptiveSwitched;
    else
        bad_key("controller.mode",
                "must be one of \"fixed\", \"adaptive_ideal\", \"adaptive_motorized\", "
                "\"adaptive_switched\"");
    c.fixed_full_divergence_rad = pick_unit(
        s, {{"fixed_full_divergence_mrad", 1e3}, {"fixed_full_divergence_rad", 1.0}},
        c.fixed_full_divergence_rad);
    c.adjust_delay_s = s.number("adjust_delay_s", c.adjust_delay_s);
    c.control_latency_s = s.number("control_latency_s", c.control_latency_s);
    if (obj.contains("switch_angles_mrad") && obj.contains("switch_angles_rad"))
        bad_key("controller.switch_angles_mrad",
                "conflicts with switch_angles_rad; give only one");
    for (const char* key : {"switch_angles_mrad", "switch_angles_rad"}) {
        if (!s.has(key)) continue;
        const json& v = obj.at(key);
        if (!v.is_array()) bad_key(s.path(key), "must be an array of numbers");
        const double divisor = std::string(key) == "switch_angles_mrad" ? 1e3 : 1.0;
        c.switch_angles_rad.clear();
        for (const json& item : v) {
            if (!item.is_number()) bad_key(s.path(key), "must be an array of numbers");
            c.switch_angles_rad.push_back(item.get<double>() / divisor);
        }
    }
    s.finish();
}

}  // namespace

scenario::ScenarioConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
    }

    scenario::ScenarioConfig cfg;
    Section root(doc, "");
    if (const json* sub = root.subsection("placement")) parse_placement(*sub, cfg.placement);
    if (const json* sub = root.subsection("optical")) parse_optical(*sub, cfg.optical);
    if (const json* sub = root.subsection("receiver")) parse_receiver(*sub, cfg.rx);
    if (const json* sub = root.subsection("controller")) parse_controller(*sub, cfg.controller);

    cfg.visibility_km = root.number("visibility_km", cfg.visibility_km);
    const bool has_mps = doc.contains("train_speed_mps");
    const bool has_kmh = doc.contains("train_speed_kmh");
    if (has_mps && has_kmh)
        bad_key("train_speed_mps", "conflicts with train_speed_kmh; give only one");
    if (has_mps) cfg.train_speed_mps = root.number("train_speed_mps", 0.0);
    if (has_kmh) cfg.train_speed_mps = mps_from_kmh(root.number("train_speed_kmh", 0.0));
    cfg.train_start_position_m = root.number("train_start_position_m", cfg.train_start_position_m);
    cfg.transceiver_offsets_m = root.number_list("transceiver_offsets_m", cfg.transceiver_offsets_m);
    cfg.time_step_s = root.number("time_step_s", cfg.time_step_s);
    cfg.duration_s = root.number("duration_s", cfg.duration_s);
    cfg.ber_target = root.number("ber_target", cfg.ber_target);
    cfg.eval_range_min_m = root.number("eval_range_min_m", cfg.eval_range_min_m);
    cfg.eval_range_max_m = root.number("eval_range_max_m", cfg.eval_range_max_m);
    root.finish();

    cfg.resolve_defaults();
    cfg.validate();
    return cfg;
}

scenario::ScenarioConfig load_config(const std::string& path_or_preset) {
    if (presets::is_preset(path_or_preset))
        return parse_config(presets::get(path_or_preset).config_json);
    std::ifstream in(path_or_preset, std::ios::binary);
    if (!in)
        throw std::invalid_argument("config: cannot read '" + path_or_preset +
                                    "' (not a file or a known preset)");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string canonical_json(const scenario::ScenarioConfig& config) {
    json doc;
    doc["placement"] = {
        {"mode", config.placement.mode == geometry::PlacementMode::Gantry ? "gantry"
                                                                          : "trackside"},
        {"vertical_offset_m", config.placement.vertical_offset_m},
        {"lateral_offset_m", config.placement.lateral_offset_m},
        {"station_spacing_m", config.placement.station_spacing_m},
    };
    doc["optical"] = {
        {"wavelength_m", config.optical.wavelength_m},
        {"tx_power_w", config.optical.tx_power_w},
        {"tx_aperture_area_m2", config.optical.tx_aperture_area_m2},
        {"rx_aperture_area_m2", config.optical.rx_aperture_area_m2},
        {"system_loss", config.optical.system_loss},
        {"tx_pointing_error_rad", config.optical.tx_pointing_error_rad},
        {"rx_pointing_error_rad", config.optical.rx_pointing_error_rad},
    };
    doc["receiver"] = {
        {"sensitivity_a_per_w", config.rx.sensitivity_a_per_w},
        {"apd_gain", config.rx.apd_gain},
        {"excess_noise_factor", config.rx.excess_noise_factor},
        {"bandwidth_hz", config.rx.bandwidth_hz},
        {"load_resistance_ohm", config.rx.load_resistance_ohm},
        {"temperature_k", config.rx.temperature_k},
    };
    const char* mode = nullptr;
    switch (config.controller.mode) {
        case control::ControlMode::Fixed: mode = "fixed"; break;
        case control::ControlMode::AdaptiveIdeal: mode = "adaptive_ideal"; break;
        case control::ControlMode::AdaptiveMotorized: mode = "adaptive_motorized"; break;
        case control::ControlMode::AdaptiveSwitched: mode = "adaptive_switched"; break;
    }
    doc["controller"] = {
        {"mode", mode},
        {"fixed_full_divergence_rad", config.controller.fixed_full_divergence_rad},
        {"adjust_delay_s", config.controller.adjust_delay_s},
        {"control_latency_s", config.controller.control_latency_s},
        {"switch_angles_rad", config.controller.switch_angles_rad},
    };
    doc["visibility_km"] = config.visibility_km;
    doc["train_speed_mps"] = config.train_speed_mps;
    doc["train_start_position_m"] = config.train_start_position_m;
    doc["transceiver_offsets_m"] = config.transceiver_offsets_m;
    doc["time_step_s"] = config.time_step_s;
    doc["duration_s"] = config.duration_s;
    doc["ber_target"] = config.ber_target;
    doc["eval_range_min_m"] = config.eval_range_min_m;
    doc["eval_range_max_m"] = config.eval_range_max_m;
    return doc.dump(2);
}

std::string config_digest(const scenario::ScenarioConfig& config) {
    const std::string canon = canonical_json(config);
    std::uint64_t hash = 14695981039346656037ULL;
    for (const unsigned char c : canon) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(hash));
    return buf;
}

std::string manifest_json(const RunManifest& manifest) {
    json doc;
    doc["tool_version"] = manifest.tool_version;
    doc["command"] = manifest.command;
    doc["config_digest"] = manifest.config_digest;
    doc["started_at"] = manifest.started_at;
    doc["finished_at"] = manifest.finished_at;
    doc["resolved_config"] = json::parse(manifest.resolved_config_json);
    return doc.dump(2) + "\n";
}

std::string iso8601_utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace fsorail::config
