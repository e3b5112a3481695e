#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "smpd/analytics.hpp"
#include "smpd/device.hpp"

namespace smpd {

/// Window-level model of one detection cycle. Each incoming photon
/// independently produces a click with probability
/// eta_4wm * eta_qubit * eta_ro (conversion, survival to readout, and
/// readout success), so the per-cycle signal click probability is
/// 1 - exp(-eta_4wm eta_qubit eta_ro r T_d). Dark counts enter as the
/// observed rate alpha: per-cycle probability alpha * T_cycle. The duty
/// cycle emerges from the timing, never as an explicit factor.
struct SimConfig {
    uint64_t n_cycles = 0;
    uint64_t seed = 0;
    uint64_t chunk_size = 65536;
    unsigned n_workers = 1;

    double input_rate = 0;  // photons/s at the buffer input
    double eta_4wm = 0;
    double eta_qubit = 0;
    double eta_ro = 1;
    double dark_rate = 0;  // observed dark click rate (1/s)

    double p_g1 = 0;       // ground state misread probability p(1|g)
    double pi_error = 0;   // reset pi-pulse infidelity
    double t_pi = 50e-9;   // reset pi-pulse duration
};

/// Components from the operating-point budgets; pi_error defaults so the
/// realized reset infidelity reproduces the configured p_reset.
SimConfig make_sim_config(const EfficiencyBudget& eff, const DarkCountBudget& dark,
                          const DeviceParams& d, uint64_t n_cycles, uint64_t seed,
                          double input_rate);

/// Per-cycle outcomes of one run. Rates are measured against the nominal
/// cycle time (clicks per cycle-count times t_cycle); the conditional
/// reset extension shows up only in timestamps and total_time.
struct ClickRecord {
    uint64_t n_cycles = 0;
    uint64_t seed = 0;
    uint64_t params_hash = 0;
    double t_cycle = 0;

    std::vector<uint8_t> clicks;  // bit-packed, cycle order, LSB first
    std::vector<double> click_times;
    std::vector<uint32_t> reset_attempts;
    uint64_t n_clicks = 0;
    double total_time = 0;

    bool click_at(uint64_t cycle) const {
        return (clicks[cycle >> 3] >> (cycle & 7)) & 1;
    }
    double rate() const { return static_cast<double>(n_clicks) / (static_cast<double>(n_cycles) * t_cycle); }
};

ClickRecord simulate_run(const SimConfig& cfg, const DeviceParams& d, const CycleTiming& t);

struct RateCurvePoint {
    double input_rate = 0;
    double detected_rate = 0;
    double stderr_rate = 0;
};

/// Detected rate vs incoming photon rate. Each point gets a decorrelated
/// seed derived from (cfg.seed, point index).
std::vector<RateCurvePoint> rate_curve(const std::vector<double>& rates, const SimConfig& cfg,
                                       const DeviceParams& d, const CycleTiming& t);

/// Dark rate binned over `bin` cycles for a wall-clock span; incomplete
/// trailing bins are dropped.
std::vector<double> dark_series(double wall_time, uint64_t bin, const SimConfig& cfg,
                                const DeviceParams& d, const CycleTiming& t);

struct ResetStats {
    double mean_attempts = 0;
    double mean_reset_time = 0;
    double residual_excited = 0;  // P(qubit excited after reset reports ground)
};

/// Statistics of cfg.n_cycles standalone reset loops started from the
/// excited state.
ResetStats reset_statistics(const SimConfig& cfg, const DeviceParams& d, const CycleTiming& t);

/// Compact binary export; see docs/file_formats.md for the layout.
void write_click_record(const ClickRecord& rec, const std::string& path);
ClickRecord read_click_record(const std::string& path);

/// Delimited-text summary (key=value lines).
void write_click_summary(const ClickRecord& rec, const std::string& path);

}  // namespace smpd
