#pragma once

#include <complex>
#include <string>
#include <vector>

#include "smpd/device.hpp"

namespace smpd {

enum class PulseShape { rectangular, gaussian, custom };

/// Drive applied to the buffer input. Amplitude is in sqrt(photons/s):
/// |b_in|^2 integrates to a photon number.
struct PulseEnvelope {
    PulseShape shape = PulseShape::rectangular;
    double duration = 0;   // t_b
    double amplitude = 0;  // b_in
    double detuning = 0;   // carrier detuning, applied to both rotating modes
    std::vector<double> samples;  // custom shape, uniform over [0, duration]
};

/// Fixed-step RK4 only; adaptive stepping would break bit-reproducibility.
struct SolverConfig {
    double dt = 0;     // 0 = stability bound 1/(20 max(kb, kw, G, |delta|))
    double t_max = 0;  // 0 = pulse duration plus ring-down
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::complex<double>> nu;    // buffer field
    std::vector<std::complex<double>> beta;  // waste field
    std::vector<double> transferred;         // cumulative conversions (photons)
    std::vector<double> out_flux;            // kappa_w_ext |beta|^2

    // End-of-run energy bookkeeping (photon counts).
    double photons_in = 0;
    double reflected = 0;
    double buffer_loss = 0;
    double stored_end = 0;
};

/// Integrates the coupled buffer/waste input-output equations
///   nu'   = -i d nu - iG beta - (kb/2) nu + sqrt(kb_ext) b_in(t)
///   beta' = -i d beta - iG nu - (kw/2) beta
/// from vacuum. A conversion is a photon absorbed by the waste through
/// any channel, so `transferred` integrates kappa_w_total |beta|^2.
Trajectory integrate_pulse(const PulseEnvelope& env, const DeviceParams& d,
                           const PumpConfig& p, const SolverConfig& s);

/// |beta_out / nu_in|^2 from the late-time window of a CW drive at
/// detuning delta on both modes. Fails if the late-time window has not
/// settled.
double steady_state_s21(const DeviceParams& d, const PumpConfig& p, double delta,
                        const SolverConfig& s = {});

struct DurationPoint {
    double t_b = 0;
    double transfer_ratio = 0;  // conversions per injected photon
};

/// Transfer ratio of a resonant rectangular pulse vs its duration,
/// integrated until the stored fields have rung down.
std::vector<DurationPoint> efficiency_vs_duration(const std::vector<double>& durations,
                                                  const DeviceParams& d, const PumpConfig& p,
                                                  const SolverConfig& s = {});

/// Delimited-text export: t, Re nu, Im nu, Re beta, Im beta, transferred.
void write_trajectory_csv(const Trajectory& tr, const std::string& path);

}  // namespace smpd
