#pragma once

// Physical constants (CODATA 2018) and the unit conversions used at the
// library boundary. Internally everything is SI.

namespace becwh {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHbar = 1.054571817e-34;           // J s
inline constexpr double kBohrRadius = 5.29177210903e-11;   // m
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;  // kg
inline constexpr double kSpeedOfLight = 2.99792458e8;      // m/s

inline constexpr double kMicron = 1e-6;  // m

constexpr double microns_to_m(double um) { return um * kMicron; }
constexpr double m_to_microns(double m) { return m / kMicron; }
constexpr double bohr_to_m(double a0_units) { return a0_units * kBohrRadius; }
constexpr double m_to_bohr(double m) { return m / kBohrRadius; }

}  // namespace becwh
