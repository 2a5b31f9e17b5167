#pragma once

namespace ffsim::constants {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDegToRad = kPi / 180.0;

// Earth (WGS-84 consistent)
inline constexpr double kMuEarth = 3.986004418e14;      // m^3/s^2
inline constexpr double kEarthRadius = 6378137.0;       // m
inline constexpr double kJ2 = 1.08263e-3;
inline constexpr double kEarthRotationRate = 7.2921159e-5;  // rad/s

// Sun and Moon
inline constexpr double kMuSun = 1.32712440018e20;   // m^3/s^2
inline constexpr double kMuMoon = 4.9028e12;         // m^3/s^2
inline constexpr double kAstronomicalUnit = 1.495978707e11;  // m
inline constexpr double kMoonDistance = 3.844e8;             // m
inline constexpr double kSecondsPerYear = 365.25 * 86400.0;
inline constexpr double kSiderealMonth = 27.321661 * 86400.0;
inline constexpr double kObliquity = 23.439 * kDegToRad;
inline constexpr double kMoonInclination = 5.145 * kDegToRad;

// Solar radiation pressure at 1 AU for a constant solar flux.
inline constexpr double kSolarPressure = 4.56e-6;  // N/m^2

// Geomagnetic tilted dipole
inline constexpr double kDipoleEquatorialField = 3.12e-5;  // T at Earth radius
inline constexpr double kDipoleTilt = 11.5 * kDegToRad;

}  // namespace ffsim::constants
