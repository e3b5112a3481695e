#include "smpd/analytics.hpp"

#include <cmath>
#include <complex>

#include "smpd/constants.hpp"
#include "smpd/errors.hpp"

namespace smpd {

using constants::hbar;
using constants::k_boltzmann;

double coupling_strength(const PumpConfig& p, const DeviceParams& d) {
    return p.xi * std::sqrt(d.chi_b * d.chi_w);
}

double cooperativity(const PumpConfig& p, const DeviceParams& d) {
    const double kb = d.kappa_b_total();
    const double kw = d.kappa_w_total();
    if (!(kb > 0 && kw > 0)) throw ValidationError("cooperativity: zero kappa denominator");
    return 4 * p.xi * p.xi * d.chi_b * d.chi_w / (kb * kw);
}

double cooperativity_ext(const PumpConfig& p, const DeviceParams& d) {
    const double kw = d.kappa_w_total();
    if (!(d.kappa_b_ext > 0 && kw > 0))
        throw ValidationError("cooperativity: zero kappa denominator");
    return 4 * p.xi * p.xi * d.chi_b * d.chi_w / (d.kappa_b_ext * kw);
}

double transfer_efficiency(double c) {
    if (c < 0) throw ValidationError("transfer_efficiency: negative cooperativity");
    const double s = 1 + c;
    return 4 * c / (s * s);
}

double transfer_efficiency_lossy(double c, double k_int, double k_ext) {
    if (c < 0) throw ValidationError("transfer_efficiency_lossy: negative cooperativity");
    if (!(k_ext > 0)) throw ValidationError("transfer_efficiency_lossy: k_ext must be positive");
    if (k_int < 0) throw ValidationError("transfer_efficiency_lossy: k_int must be nonnegative");
    const double s = k_int / k_ext + 1 + c;
    return 4 * c / (s * s);
}

double detector_bandwidth(double kb, double kw) {
    if (!(kb > 0 && kw > 0)) throw ValidationError("detector_bandwidth: rates must be positive");
    const double half_diff_sq = (kb - kw) * (kb - kw) / 4;
    return std::sqrt(2.0) *
           std::sqrt(std::sqrt(kb * kb * kw * kw + half_diff_sq * half_diff_sq) - half_diff_sq);
}

double transmission(double delta_b, double delta_w, double c, double kb, double kw) {
    if (!(kb > 0 && kw > 0)) throw ValidationError("transmission: rates must be positive");
    if (c < 0) throw ValidationError("transmission: negative cooperativity");
    const std::complex<double> den(1 + c - 4 * delta_b * delta_w / (kb * kw),
                                   2 * delta_b / kb + 2 * delta_w / kw);
    return 4 * c / std::norm(den);
}

double conversion_efficiency(double delta_b, double delta_w, double c_total,
                             const DeviceParams& d) {
    const double kb = d.kappa_b_total();
    return transmission(delta_b, delta_w, c_total, kb, d.kappa_w_total()) * d.kappa_b_ext / kb;
}

double qubit_efficiency(double t1, double td) {
    if (!(t1 > 0 && td > 0)) throw ValidationError("qubit_efficiency: times must be positive");
    // -expm1 keeps precision in the td << t1 limit.
    return -(t1 / td) * std::expm1(-td / t1);
}

EfficiencyBudget efficiency_budget(const DeviceParams& d, const CycleTiming& t, double c) {
    EfficiencyBudget b;
    b.eta_4wm = transfer_efficiency_lossy(c, d.kappa_b_int, d.kappa_b_ext);
    b.eta_ro = d.eta_ro;
    b.eta_d = derive_cycle(t).eta_d;
    b.eta_qubit = qubit_efficiency(d.t1, t.t_d);
    b.eta_total = b.eta_4wm * b.eta_ro * b.eta_d * b.eta_qubit;
    return b;
}

double thermal_occupancy(double temperature, double omega) {
    if (!(temperature > 0)) throw ValidationError("thermal_occupancy: temperature must be positive");
    if (!(omega > 0)) throw ValidationError("thermal_occupancy: frequency must be positive");
    return 1.0 / std::expm1(hbar * omega / (k_boltzmann * temperature));
}

double equivalent_temperature(double nbar, double omega) {
    if (!(nbar > 0)) throw ValidationError("equivalent_temperature: nbar must be positive");
    if (!(omega > 0)) throw ValidationError("equivalent_temperature: frequency must be positive");
    return hbar * omega / (k_boltzmann * std::log1p(1.0 / nbar));
}

double alpha_qubit(double p_eq, double t1, double eta_d, double p_reset, double t_cycle) {
    if (!(t1 > 0 && t_cycle > 0)) throw ValidationError("alpha_qubit: times must be positive");
    if (!(p_eq >= 0 && p_eq <= 1 && p_reset >= 0 && p_reset <= 1))
        throw ValidationError("alpha_qubit: probabilities must lie in [0, 1]");
    return (p_eq / t1) * eta_d + p_reset / t_cycle;
}

double alpha_thermal(double kd, double eta, double nbar) {
    if (!(kd > 0)) throw ValidationError("alpha_thermal: kd must be positive");
    if (!(eta >= 0 && eta <= 1)) throw ValidationError("alpha_thermal: eta must lie in [0, 1]");
    if (nbar < 0) throw ValidationError("alpha_thermal: nbar must be nonnegative");
    return kd / 4 * eta * nbar;
}

DarkCountBudget dark_budget(const DeviceParams& d, const CycleDerived& cd,
                            const Environment& env, double kd, double eta) {
    DarkCountBudget b;
    b.alpha_qubit = alpha_qubit(d.p_eq, d.t1, cd.eta_d, d.p_reset, cd.t_cycle);
    b.alpha_4wm = d.alpha_4wm;
    b.alpha_th = alpha_thermal(kd, eta, thermal_occupancy(env.temperature, d.omega_b));
    b.alpha_total = b.alpha_qubit + b.alpha_4wm + b.alpha_th;
    return b;
}

double snr(double power, double t, double alpha, double eta, double omega) {
    if (!(t > 0)) throw ValidationError("snr: integration time must be positive");
    if (power < 0 || alpha < 0) throw ValidationError("snr: power and alpha must be nonnegative");
    if (!(eta >= 0 && eta <= 1)) throw ValidationError("snr: eta must lie in [0, 1]");
    if (!(omega > 0)) throw ValidationError("snr: frequency must be positive");
    const double detected = eta * power * t / (hbar * omega);
    if (detected == 0) return 0;
    return detected / std::sqrt(detected + alpha * t);
}

double nep(double t, double alpha, double eta, double omega) {
    if (!(t > 0)) throw ValidationError("nep: integration time must be positive");
    if (!(eta > 0)) throw ValidationError("nep: eta must be positive");
    if (alpha < 0) throw ValidationError("nep: alpha must be nonnegative");
    if (!(omega > 0)) throw ValidationError("nep: frequency must be positive");
    return hbar * omega * (1 + std::sqrt(1 + 4 * t * alpha)) / (2 * t * eta);
}

double sensitivity(double alpha, double eta, double omega) {
    if (!(eta > 0)) throw ValidationError("sensitivity: eta must be positive");
    if (alpha < 0) throw ValidationError("sensitivity: alpha must be nonnegative");
    if (!(omega > 0)) throw ValidationError("sensitivity: frequency must be positive");
    return hbar * omega * std::sqrt(alpha) / eta;
}

}  // namespace smpd
