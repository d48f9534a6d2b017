#pragma once

#include <cmath>
#include <stdexcept>

namespace fsorail {

// Decibel helpers. Power quantities are watts unless a name says otherwise.

inline double dbm_from_watts(double watts) {
    if (!(watts > 0.0))
        throw std::domain_error("dbm_from_watts: power must be > 0 W");
    return 10.0 * std::log10(watts * 1e3);
}

inline double watts_from_dbm(double dbm) {
    return std::pow(10.0, dbm / 10.0) * 1e-3;
}

inline double db_from_linear(double ratio) {
    if (!(ratio > 0.0))
        throw std::domain_error("db_from_linear: ratio must be > 0");
    return 10.0 * std::log10(ratio);
}

inline double linear_from_db(double db) {
    return std::pow(10.0, db / 10.0);
}

inline double mps_from_kmh(double kmh) { return kmh / 3.6; }

}  // namespace fsorail
