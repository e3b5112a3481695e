#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace smpd {

/// Static parameters of one detector. All frequencies and rates are
/// angular (rad/s), all times are seconds; conversion from the ordinary
/// frequencies (Hz) used in configuration files happens at ingestion.
struct DeviceParams {
    double omega_q = 0;        // qubit frequency
    std::optional<double> e_c; // anharmonicity scale, informational only
    double chi_b = 0;          // dispersive shift, buffer
    double chi_w = 0;          // dispersive shift, waste
    double omega_b = 0;        // buffer frequency
    double omega_w = 0;        // waste frequency
    double kappa_b_ext = 0;
    double kappa_b_int = 0;
    double kappa_w_ext = 0;
    double kappa_w_int = 0;
    double t1 = 0;
    std::optional<double> t2;  // informational only
    double p_eq = 0;           // qubit equilibrium excited population
    double p_reset = 0;        // residual excited population after reset
    double eta_ro = 0;         // readout fidelity p(1|e)
    double alpha_4wm = 0;      // pump-heating dark rate contribution (1/s)

    double kappa_b_total() const { return kappa_b_ext + kappa_b_int; }
    double kappa_w_total() const { return kappa_w_ext + kappa_w_int; }
};

/// Durations of the detect / measure / reset protocol windows.
struct CycleTiming {
    double t_d = 0;      // detection window
    double t_m = 0;      // measurement window
    double t_r_avg = 0;  // mean conditional reset time
    double t_wait = 0;   // waste ring-down wait
};

struct CycleDerived {
    double t_cycle = 0;
    double eta_d = 0;  // duty cycle t_d / t_cycle
};

struct PumpConfig {
    double xi = 0;       // pump amplitude |xi| in sqrt(excitation) units
    double omega_p = 0;  // pump frequency (rad/s)
};

struct Environment {
    double temperature = 0;  // equivalent electromagnetic temperature of the input line (K)
    double input_rate = 0;   // photons/s at the buffer input
};

struct DeviceConfig {
    DeviceParams device;
    CycleTiming timing;
    PumpConfig pump;
    Environment environment;
    std::vector<std::string> warnings;  // non-fatal findings from validation
};

/// Parses and validates a configuration document (JSON). Ordinary
/// frequencies carry an `_hz` suffix and are converted to rad/s here;
/// the canonical serialized form uses `_rad_per_s` / `_s` suffixes and
/// reloads bit-for-bit. Unknown keys are rejected.
DeviceConfig load_device_config(std::string_view text);
DeviceConfig load_device_config_file(const std::string& path);

/// Canonical serialization (angular frequencies, SI seconds).
std::string serialize_device_config(const DeviceConfig& cfg);

CycleDerived derive_cycle(const CycleTiming& t);

/// Pump frequency from the four-wave mixing resonance condition
/// omega_p = omega_q + omega_w - chi_w - omega_b (bare value; the pump
/// Stark shift observed in experiments is not modeled).
double pump_frequency(const DeviceParams& d);

}  // namespace smpd
