#pragma once

// Physical constants (CODATA 2018, exact where the SI fixes them).

#include <numbers>

namespace casimir::constants {

inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double c = 299792458.0;             // m/s
inline constexpr double k_B = 1.380649e-23;          // J/K
inline constexpr double e_charge = 1.602176634e-19;  // C, also J per eV

inline constexpr double pi = std::numbers::pi;

/// Angular frequency (rad/s) of a photon energy given in eV.
constexpr double ev_to_rad_per_s(double ev) { return ev * e_charge / hbar; }
constexpr double rad_per_s_to_ev(double omega) { return omega * hbar / e_charge; }

/// Canonical text table of the constants above; hashed into output provenance.
inline constexpr const char* table =
    "hbar=1.054571817e-34 J s;c=299792458 m/s;k_B=1.380649e-23 J/K;e=1.602176634e-19 C";

}  // namespace casimir::constants
