#pragma once

#include "smpd/device.hpp"

namespace smpd {

/// The four multiplicative efficiency contributions and their product.
struct EfficiencyBudget {
    double eta_4wm = 0;
    double eta_ro = 0;
    double eta_d = 0;
    double eta_qubit = 0;
    double eta_total = 0;
};

/// Dark count contributions (observed click rates, 1/s) and their sum.
struct DarkCountBudget {
    double alpha_qubit = 0;
    double alpha_4wm = 0;
    double alpha_th = 0;
    double alpha_total = 0;
};

/// Two-cavity coupling G = xi * sqrt(chi_b chi_w) from the pump amplitude.
double coupling_strength(const PumpConfig& p, const DeviceParams& d);

/// Cooperativity C = 4 xi^2 chi_b chi_w / (kappa_b kappa_w) with total
/// (ext + int) decay rates. C = 1 maximizes conversion: the coupling
/// 2 xi sqrt(chi_b chi_w) matches the geometric mean of the decay rates.
double cooperativity(const PumpConfig& p, const DeviceParams& d);

/// Same quantity normalized with the external buffer coupling instead of
/// the total: the parameterization used by the buffer-lossy transfer
/// formula, whose maximum sits at C_ext = 1 + kappa_b_int/kappa_b_ext.
double cooperativity_ext(const PumpConfig& p, const DeviceParams& d);

/// Lossless transfer efficiency 4C/(1+C)^2.
double transfer_efficiency(double c);

/// Buffer-lossy transfer efficiency 4c/(r+1+c)^2 with r = k_int/k_ext and
/// c the ext-normalized cooperativity; bounded by 1/(1+r).
double transfer_efficiency_lossy(double c, double k_int, double k_ext);

/// Detection bandwidth (FWHM of the resonant transmission at C = 1).
double detector_bandwidth(double kb, double kw);

/// Transmission |S21|^2 of the coupled buffer/waste system at detunings
/// (delta_b, delta_w), cooperativity c, total decay rates (kb, kw).
double transmission(double delta_b, double delta_w, double c, double kb, double kw);

/// Conversion efficiency vs detuning for a buffer with internal losses:
/// transmission with total rates, scaled by kappa_b_ext/kappa_b_total.
/// A photon lost from the waste after conversion still counts as detected.
double conversion_efficiency(double delta_b, double delta_w, double c_total,
                             const DeviceParams& d);

/// Probability that a stored excitation survives a detection window of
/// length td when averaged over uniform arrival times: (t1/td)(1-exp(-td/t1)).
double qubit_efficiency(double t1, double td);

/// Budget at ext-normalized cooperativity c.
EfficiencyBudget efficiency_budget(const DeviceParams& d, const CycleTiming& t, double c);

/// Bose-Einstein occupancy 1/(exp(hbar w / kB T) - 1).
double thermal_occupancy(double temperature, double omega);

/// Exact inverse of thermal_occupancy: T = hbar w / (kB ln(1 + 1/nbar)).
double equivalent_temperature(double nbar, double omega);

/// Qubit-origin dark rate (p_eq/t1) eta_d + p_reset/t_cycle.
double alpha_qubit(double p_eq, double t1, double eta_d, double p_reset, double t_cycle);

/// Thermal dark rate (kd/4) eta nbar.
double alpha_thermal(double kd, double eta, double nbar);

DarkCountBudget dark_budget(const DeviceParams& d, const CycleDerived& cd,
                            const Environment& env, double kd, double eta);

/// SNR of counting a continuous tone of power p over time t:
/// eta N / sqrt(eta N + alpha t) with N = p t / (hbar omega).
double snr(double power, double t, double alpha, double eta, double omega);

/// Minimum detectable power at SNR = 1 for integration time t:
/// hbar omega (1 + sqrt(1 + 4 t alpha)) / (2 t eta).
double nep(double t, double alpha, double eta, double omega);

/// Power sensitivity hbar omega sqrt(alpha) / eta (the sqrt(alpha t) >> 1
/// limit of sqrt(t) * NEP(t)).
double sensitivity(double alpha, double eta, double omega);

}  // namespace smpd
