#pragma once

#include <string>

#include "fsorail/scenario.hpp"

namespace fsorail::config {

// Parse a JSON config document (unit-suffixed keys, see README) into a
// validated ScenarioConfig. Unknown keys and malformed values throw
// std::invalid_argument naming the offending key.
scenario::ScenarioConfig parse_config(const std::string& json_text);

// Load from a file path, or from the built-in preset table when the argument
// names one (e.g. "table1").
scenario::ScenarioConfig load_config(const std::string& path_or_preset);

// Canonical JSON echo of a resolved config. Parsing it back yields an
// identical config; the digest is computed over this form, so it is stable
// against key reordering in the source document.
std::string canonical_json(const scenario::ScenarioConfig& config);

// FNV-1a 64-bit digest of the canonical form, rendered as "fnv1a64:<hex>".
std::string config_digest(const scenario::ScenarioConfig& config);

struct RunManifest {
    std::string tool_version;
    std::string command;         // subcommand + flags as invoked
    std::string config_digest;
    std::string started_at;      // ISO 8601 UTC
    std::string finished_at;
    std::string resolved_config_json;
};

std::string manifest_json(const RunManifest& manifest);

std::string iso8601_utc_now();

}  // namespace fsorail::config
