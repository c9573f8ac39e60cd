#pragma once

namespace ringsqueeze::constants {

// CODATA 2018, 10 significant digits.
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double bohr_radius = 5.291772109e-11; // m
inline constexpr double atomic_mass_unit = 1.660539067e-27; // kg

// 87Rb mass, AME2020 in u times CODATA u.
inline constexpr double mass_rb87 = 86.909180527 * atomic_mass_unit;

inline constexpr double pi = 3.14159265358979323846;

}
