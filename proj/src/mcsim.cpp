#include "smpd/mcsim.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <thread>

#include "smpd/errors.hpp"
#include "smpd/format.hpp"
#include "smpd/rng.hpp"

namespace smpd {

namespace {

constexpr char kMagic[8] = {'S', 'M', 'P', 'D', 'C', 'L', 'K', '1'};
constexpr uint64_t kResetStreamSalt = 0x72657365740a0d42ULL;

struct CycleProbabilities {
    double p_click = 0;
    double p_true_excited_given_click = 1;  // vs a pure ground misread
};

CycleProbabilities cycle_probabilities(const SimConfig& cfg, double t_d, double t_cycle) {
    const double p_dark = cfg.dark_rate * t_cycle;
    const double eta_window = cfg.eta_4wm * cfg.eta_qubit * cfg.eta_ro;
    const double p_sig = -std::expm1(-eta_window * cfg.input_rate * t_d);
    const double p_quiet = (1 - p_dark) * (1 - p_sig);
    const double p_click = 1 - p_quiet * (1 - cfg.p_g1);
    if (!(p_dark >= 0 && p_dark <= 1) || !(p_sig >= 0 && p_sig <= 1) ||
        !(p_click >= 0 && p_click <= 1))
        throw ValidationError("cycle probability out of [0, 1]; simulation config is inconsistent");
    CycleProbabilities out;
    out.p_click = p_click;
    out.p_true_excited_given_click =
        p_click > 0 ? 1 - cfg.p_g1 * p_quiet / p_click : 1.0;
    return out;
}

struct ResetOutcome {
    uint32_t attempts = 0;
    bool residual_excited = false;
};

/// Conditional reset: pi-pulse then measure, repeated until a measurement
/// reports ground. The loop tracks the physical state so an imperfect
/// pi-pulse or a ground misread propagates correctly.
ResetOutcome run_reset_loop(CycleRng& rng, const SimConfig& cfg, bool excited) {
    ResetOutcome out;
    while (true) {
        ++out.attempts;
        if (!rng.bernoulli(cfg.pi_error)) excited = !excited;
        const double p_report_one = excited ? cfg.eta_ro : cfg.p_g1;
        if (!rng.bernoulli(p_report_one)) break;
        if (out.attempts >= 1000000)
            throw NumericalError("reset loop failed to terminate; check readout fidelities");
    }
    out.residual_excited = excited;
    return out;
}

void validate_sim_config(const SimConfig& cfg) {
    if (cfg.n_cycles == 0) throw ValidationError("n_cycles must be positive");
    if (cfg.chunk_size == 0) throw ValidationError("chunk_size must be positive");
    if (cfg.input_rate < 0) throw ValidationError("input_rate must be nonnegative");
    for (auto [v, name] : {std::pair{cfg.eta_4wm, "eta_4wm"}, {cfg.eta_qubit, "eta_qubit"},
                           {cfg.eta_ro, "eta_ro"}, {cfg.p_g1, "p_g1"}, {cfg.pi_error, "pi_error"}})
        if (!(v >= 0 && v <= 1))
            throw ValidationError(std::string("sim config ") + name + " must lie in [0, 1]");
    if (cfg.dark_rate < 0) throw ValidationError("dark_rate must be nonnegative");
}

struct ChunkResult {
    std::vector<uint64_t> click_cycles;
    std::vector<uint32_t> attempts;
};

uint64_t config_hash(const SimConfig& cfg, const CycleTiming& t) {
    std::string blob;
    auto add = [&](double v) { blob.append(reinterpret_cast<const char*>(&v), sizeof(v)); };
    add(cfg.input_rate);
    add(cfg.eta_4wm);
    add(cfg.eta_qubit);
    add(cfg.eta_ro);
    add(cfg.dark_rate);
    add(cfg.p_g1);
    add(cfg.pi_error);
    add(cfg.t_pi);
    add(t.t_d);
    add(t.t_m);
    add(t.t_r_avg);
    add(t.t_wait);
    return fnv1a64(blob);
}

}  // namespace

SimConfig make_sim_config(const EfficiencyBudget& eff, const DarkCountBudget& dark,
                          const DeviceParams& d, uint64_t n_cycles, uint64_t seed,
                          double input_rate) {
    SimConfig cfg;
    cfg.n_cycles = n_cycles;
    cfg.seed = seed;
    cfg.input_rate = input_rate;
    cfg.eta_4wm = eff.eta_4wm;
    cfg.eta_qubit = eff.eta_qubit;
    cfg.eta_ro = eff.eta_ro;
    cfg.dark_rate = dark.alpha_total;
    cfg.pi_error = d.eta_ro < 1 ? std::min(1.0, d.p_reset / (1 - d.eta_ro)) : d.p_reset;
    return cfg;
}

ClickRecord simulate_run(const SimConfig& cfg, const DeviceParams& d, const CycleTiming& t) {
    (void)d;
    validate_sim_config(cfg);
    const CycleDerived cd = derive_cycle(t);
    const CycleProbabilities probs = cycle_probabilities(cfg, t.t_d, cd.t_cycle);

    ClickRecord rec;
    rec.n_cycles = cfg.n_cycles;
    rec.seed = cfg.seed;
    rec.params_hash = config_hash(cfg, t);
    rec.t_cycle = cd.t_cycle;
    rec.clicks.assign((cfg.n_cycles + 7) / 8, 0);

    // Chunks are byte-aligned in the click bitmap so workers never share
    // a byte; outcomes depend only on (seed, cycle index).
    const uint64_t chunk = ((cfg.chunk_size + 7) / 8) * 8;
    const uint64_t n_chunks = (cfg.n_cycles + chunk - 1) / chunk;
    std::vector<ChunkResult> results(n_chunks);

    std::atomic<uint64_t> next_chunk{0};
    auto worker = [&]() {
        while (true) {
            const uint64_t ci = next_chunk.fetch_add(1);
            if (ci >= n_chunks) return;
            const uint64_t begin = ci * chunk;
            const uint64_t end = std::min(begin + chunk, cfg.n_cycles);
            ChunkResult& res = results[ci];
            for (uint64_t i = begin; i < end; ++i) {
                CycleRng rng(cfg.seed, i);
                if (!rng.bernoulli(probs.p_click)) continue;
                rec.clicks[i >> 3] |= static_cast<uint8_t>(1u << (i & 7));
                const bool excited = rng.bernoulli(probs.p_true_excited_given_click);
                const ResetOutcome reset = run_reset_loop(rng, cfg, excited);
                res.click_cycles.push_back(i);
                res.attempts.push_back(reset.attempts);
            }
        }
    };

    const unsigned n_workers = std::max(1u, cfg.n_workers);
    if (n_workers == 1 || n_chunks == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < std::min<uint64_t>(n_workers, n_chunks); ++w)
            pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    const double base_cycle = t.t_d + t.t_m + t.t_wait;
    const double per_attempt = t.t_m + cfg.t_pi;
    double extension = 0;
    for (const auto& res : results) {
        for (size_t k = 0; k < res.click_cycles.size(); ++k) {
            const double start =
                static_cast<double>(res.click_cycles[k]) * base_cycle + extension;
            rec.click_times.push_back(start + t.t_d + t.t_m);
            rec.reset_attempts.push_back(res.attempts[k]);
            extension += res.attempts[k] * per_attempt;
        }
    }
    rec.n_clicks = rec.click_times.size();
    rec.total_time = static_cast<double>(cfg.n_cycles) * base_cycle + extension;
    return rec;
}

std::vector<RateCurvePoint> rate_curve(const std::vector<double>& rates, const SimConfig& cfg,
                                       const DeviceParams& d, const CycleTiming& t) {
    for (size_t i = 0; i + 1 < rates.size(); ++i)
        if (rates[i] > rates[i + 1]) throw ValidationError("rates must be nonnegative ascending");
    if (!rates.empty() && rates.front() < 0)
        throw ValidationError("rates must be nonnegative ascending");

    std::vector<RateCurvePoint> out;
    out.reserve(rates.size());
    for (size_t i = 0; i < rates.size(); ++i) {
        SimConfig point = cfg;
        point.input_rate = rates[i];
        point.seed = cfg.seed ^ ((i + 1) * 0x9E3779B97F4A7C15ULL);
        const ClickRecord rec = simulate_run(point, d, t);
        const double n = static_cast<double>(rec.n_cycles);
        const double p_hat = static_cast<double>(rec.n_clicks) / n;
        const double spread = std::sqrt(std::max(n * p_hat * (1 - p_hat), 1.0));
        out.push_back({rates[i], rec.rate(), spread / (n * rec.t_cycle)});
    }
    return out;
}

std::vector<double> dark_series(double wall_time, uint64_t bin, const SimConfig& cfg,
                                const DeviceParams& d, const CycleTiming& t) {
    if (!(bin > 0)) throw ValidationError("bin must be positive");
    if (!(wall_time > 0)) throw ValidationError("wall_time must be positive");
    const CycleDerived cd = derive_cycle(t);
    SimConfig run = cfg;
    run.input_rate = 0;
    run.n_cycles = static_cast<uint64_t>(std::ceil(wall_time / cd.t_cycle));
    if (run.n_cycles < bin) throw ValidationError("wall_time shorter than one bin");
    const ClickRecord rec = simulate_run(run, d, t);

    std::vector<double> out;
    const uint64_t n_bins = run.n_cycles / bin;
    out.reserve(n_bins);
    for (uint64_t b = 0; b < n_bins; ++b) {
        uint64_t count = 0;
        for (uint64_t i = b * bin; i < (b + 1) * bin; ++i)
            if (rec.click_at(i)) ++count;
        out.push_back(static_cast<double>(count) / (static_cast<double>(bin) * cd.t_cycle));
    }
    return out;
}

ResetStats reset_statistics(const SimConfig& cfg, const DeviceParams& d, const CycleTiming& t) {
    (void)d;
    validate_sim_config(cfg);
    double attempts_sum = 0;
    uint64_t residual = 0;
    for (uint64_t i = 0; i < cfg.n_cycles; ++i) {
        CycleRng rng(cfg.seed ^ kResetStreamSalt, i);
        const ResetOutcome r = run_reset_loop(rng, cfg, /*excited=*/true);
        attempts_sum += r.attempts;
        residual += r.residual_excited ? 1 : 0;
    }
    ResetStats stats;
    stats.mean_attempts = attempts_sum / static_cast<double>(cfg.n_cycles);
    stats.mean_reset_time = stats.mean_attempts * (t.t_m + cfg.t_pi);
    stats.residual_excited = static_cast<double>(residual) / static_cast<double>(cfg.n_cycles);
    return stats;
}

void write_click_record(const ClickRecord& rec, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open click record output file '" + path + "'");
    auto put = [&](const void* p, size_t n) { f.write(static_cast<const char*>(p), static_cast<std::streamsize>(n)); };
    put(kMagic, sizeof(kMagic));
    put(&rec.seed, 8);
    put(&rec.params_hash, 8);
    put(&rec.n_cycles, 8);
    put(&rec.n_clicks, 8);
    put(&rec.t_cycle, 8);
    put(&rec.total_time, 8);
    put(rec.clicks.data(), rec.clicks.size());
    for (uint64_t i = 0; i < rec.n_clicks; ++i) {
        put(&rec.click_times[i], 8);
        put(&rec.reset_attempts[i], 4);
    }
}

ClickRecord read_click_record(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open click record file '" + path + "'");
    char magic[8];
    f.read(magic, 8);
    if (!f || std::memcmp(magic, kMagic, 8) != 0)
        throw ValidationError("not a click record file: '" + path + "'");
    ClickRecord rec;
    auto get = [&](void* p, size_t n) {
        f.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
        if (!f) throw ValidationError("truncated click record file '" + path + "'");
    };
    get(&rec.seed, 8);
    get(&rec.params_hash, 8);
    get(&rec.n_cycles, 8);
    get(&rec.n_clicks, 8);
    get(&rec.t_cycle, 8);
    get(&rec.total_time, 8);
    rec.clicks.resize((rec.n_cycles + 7) / 8);
    get(rec.clicks.data(), rec.clicks.size());
    rec.click_times.resize(rec.n_clicks);
    rec.reset_attempts.resize(rec.n_clicks);
    for (uint64_t i = 0; i < rec.n_clicks; ++i) {
        get(&rec.click_times[i], 8);
        get(&rec.reset_attempts[i], 4);
    }
    return rec;
}

void write_click_summary(const ClickRecord& rec, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot open summary output file '" + path + "'");
    f << "seed=" << rec.seed << '\n';
    f << "params_hash=" << rec.params_hash << '\n';
    f << "n_cycles=" << rec.n_cycles << '\n';
    f << "n_clicks=" << rec.n_clicks << '\n';
    f << "t_cycle_s=" << format_sci(rec.t_cycle) << '\n';
    f << "total_time_s=" << format_sci(rec.total_time) << '\n';
    f << "rate_per_s=" << format_sci(rec.rate()) << '\n';
}

}  // namespace smpd
