#pragma once

namespace smpd {

inline constexpr char kVersion[] = "0.1.0";

// CODATA 2018 / SI-2019 exact values, 10 significant digits.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double k_boltzmann = 1.380649e-23;   // J / K
inline constexpr double two_pi = 6.283185307179586;
}  // namespace constants

// Configuration files quote ordinary frequencies nu (Hz); everything
// internal is angular (rad/s). This is the single conversion boundary.
inline constexpr double hz_to_angular(double nu_hz) {
    return constants::two_pi * nu_hz;
}
inline constexpr double angular_to_hz(double omega) {
    return omega / constants::two_pi;
}

}  // namespace smpd
