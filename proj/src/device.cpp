#include "smpd/device.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "smpd/constants.hpp"
#include "smpd/errors.hpp"

namespace smpd {

namespace {

using nlohmann::json;

enum class Unit { frequency, time, temperature, rate, plain };

struct FieldSpec {
    const char* stem;
    Unit unit;
    bool required;
    double default_value;  // used when !required
};

// Accepted key spellings per unit: the config form and the canonical form.
// Frequencies: <stem>_hz (ordinary, converted x2pi) or <stem>_rad_per_s.
// Times: <stem>_us or <stem>_s. Temperature: <stem>_k. Rates: <stem>_per_s.
std::vector<std::pair<std::string, double>> spellings(const FieldSpec& f) {
    switch (f.unit) {
        case Unit::frequency:
            return {{std::string(f.stem) + "_hz", constants::two_pi},
                    {std::string(f.stem) + "_rad_per_s", 1.0}};
        case Unit::time:
            return {{std::string(f.stem) + "_us", 1e-6},
                    {std::string(f.stem) + "_s", 1.0}};
        case Unit::temperature:
            return {{std::string(f.stem) + "_k", 1.0}};
        case Unit::rate:
            return {{std::string(f.stem) + "_per_s", 1.0}};
        case Unit::plain:
            return {{std::string(f.stem), 1.0}};
    }
    return {};
}

const char* canonical_suffix(Unit u) {
    switch (u) {
        case Unit::frequency: return "_rad_per_s";
        case Unit::time: return "_s";
        case Unit::temperature: return "_k";
        case Unit::rate: return "_per_s";
        case Unit::plain: return "";
    }
    return "";
}

class SectionReader {
public:
    SectionReader(const json& section, std::string name, const std::vector<FieldSpec>& fields)
        : section_(section), name_(std::move(name)), fields_(fields) {
        if (!section.is_object())
            throw ValidationError("config section '" + name_ + "' must be an object");
        check_keys();
    }

    std::optional<double> get(const char* stem) const {
        const FieldSpec* spec = find(stem);
        std::optional<double> value;
        for (const auto& [key, scale] : spellings(*spec)) {
            auto it = section_.find(key);
            if (it == section_.end()) continue;
            if (value)
                throw ValidationError("config field '" + name_ + "." + stem +
                                      "' given in more than one unit spelling");
            if (!it->is_number())
                throw ValidationError("config field '" + name_ + "." + key + "' must be a number");
            value = it->get<double>() * scale;
        }
        if (!value && spec->required)
            throw ValidationError("config field '" + name_ + "." + stem + canonical_suffix(spec->unit) +
                                  "' is required");
        if (!value && !spec->required) return spec->default_value;
        return value;
    }

    double get_required_or_default(const char* stem) const { return *get(stem); }

private:
    const FieldSpec* find(const char* stem) const {
        for (const auto& f : fields_)
            if (std::string_view(f.stem) == stem) return &f;
        throw std::logic_error("unregistered field stem");
    }

    void check_keys() const {
        for (auto it = section_.begin(); it != section_.end(); ++it) {
            const std::string& key = it.key();
            bool known = false;
            for (const auto& f : fields_)
                for (const auto& [spelled, scale] : spellings(f))
                    if (spelled == key) known = true;
            if (known) continue;
            // Distinguish a wrong unit suffix from a genuinely unknown key.
            for (const auto& f : fields_) {
                std::string stem(f.stem);
                if (key == stem || key.rfind(stem + "_", 0) == 0) {
                    std::string expected;
                    for (const auto& [spelled, scale] : spellings(f)) {
                        if (!expected.empty()) expected += "' or '";
                        expected += spelled;
                    }
                    throw ValidationError("unit suffix mismatch in section '" + name_ + "': key '" +
                                          key + "' should be '" + expected + "'");
                }
            }
            throw ValidationError("unknown key '" + key + "' in config section '" + name_ + "'");
        }
    }

    const json& section_;
    std::string name_;
    const std::vector<FieldSpec>& fields_;
};

const std::vector<FieldSpec> kDeviceFields = {
    {"omega_q", Unit::frequency, true, 0},
    {"e_c", Unit::frequency, false, -1},
    {"chi_b", Unit::frequency, true, 0},
    {"chi_w", Unit::frequency, true, 0},
    {"omega_b", Unit::frequency, true, 0},
    {"omega_w", Unit::frequency, true, 0},
    {"kappa_b_ext", Unit::frequency, true, 0},
    {"kappa_b_int", Unit::frequency, true, 0},
    {"kappa_w_ext", Unit::frequency, true, 0},
    {"kappa_w_int", Unit::frequency, true, 0},
    {"t1", Unit::time, true, 0},
    {"t2", Unit::time, false, -1},
    {"p_eq", Unit::plain, true, 0},
    {"p_reset", Unit::plain, true, 0},
    {"eta_ro", Unit::plain, true, 0},
    {"alpha_4wm", Unit::rate, false, 0},
};

const std::vector<FieldSpec> kTimingFields = {
    {"t_d", Unit::time, true, 0},
    {"t_m", Unit::time, false, 0},
    {"t_r_avg", Unit::time, false, 0},
    {"t_wait", Unit::time, false, 0},
};

const std::vector<FieldSpec> kPumpFields = {
    {"xi", Unit::plain, true, 0},
    {"omega_p", Unit::frequency, false, -1},
};

const std::vector<FieldSpec> kEnvironmentFields = {
    {"temperature", Unit::temperature, false, 0.010},
    {"input_rate", Unit::rate, false, 0},
};

void require_positive(double v, const char* name) {
    if (!(v > 0)) throw ValidationError(std::string(name) + " must be positive");
}

void require_nonnegative(double v, const char* name) {
    if (!(v >= 0)) throw ValidationError(std::string(name) + " must be nonnegative");
}

void require_probability(double v, const char* name) {
    if (!(v >= 0 && v <= 1))
        throw ValidationError(std::string(name) + " must lie in [0, 1]");
}

void validate_device(const DeviceParams& d, std::vector<std::string>& warnings) {
    require_positive(d.omega_q, "omega_q");
    require_positive(d.chi_b, "chi_b");
    require_positive(d.chi_w, "chi_w");
    require_positive(d.omega_b, "omega_b");
    require_positive(d.omega_w, "omega_w");
    require_positive(d.kappa_b_ext, "kappa_b_ext");
    require_positive(d.kappa_w_ext, "kappa_w_ext");
    require_nonnegative(d.kappa_b_int, "kappa_b_int");
    require_nonnegative(d.kappa_w_int, "kappa_w_int");
    require_positive(d.t1, "t1");
    if (d.e_c) require_positive(*d.e_c, "e_c");
    if (d.t2) {
        require_positive(*d.t2, "t2");
        if (*d.t2 > 2 * d.t1) throw ValidationError("t2 must not exceed 2*t1");
    }
    require_probability(d.p_eq, "p_eq");
    require_probability(d.p_reset, "p_reset");
    require_probability(d.eta_ro, "eta_ro");
    require_nonnegative(d.alpha_4wm, "alpha_4wm");
    if (d.p_reset > d.p_eq)
        warnings.push_back("p_reset exceeds p_eq; reset is expected to prepare below equilibrium");
}

void validate_timing(const CycleTiming& t) {
    require_positive(t.t_d, "t_d");
    require_nonnegative(t.t_m, "t_m");
    require_nonnegative(t.t_r_avg, "t_r_avg");
    require_nonnegative(t.t_wait, "t_wait");
}

}  // namespace

DeviceConfig load_device_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config parse failure: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config document must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string& key = it.key();
        if (key != "device" && key != "timing" && key != "pump" && key != "environment")
            throw ValidationError("unknown top-level config section '" + key + "'");
    }
    if (!doc.contains("device")) throw ValidationError("config section 'device' is required");
    if (!doc.contains("timing")) throw ValidationError("config section 'timing' is required");
    if (!doc.contains("pump")) throw ValidationError("config section 'pump' is required");

    DeviceConfig cfg;

    SectionReader dev(doc["device"], "device", kDeviceFields);
    DeviceParams& d = cfg.device;
    d.omega_q = *dev.get("omega_q");
    if (auto v = dev.get("e_c"); *v >= 0) d.e_c = *v;
    d.chi_b = *dev.get("chi_b");
    d.chi_w = *dev.get("chi_w");
    d.omega_b = *dev.get("omega_b");
    d.omega_w = *dev.get("omega_w");
    d.kappa_b_ext = *dev.get("kappa_b_ext");
    d.kappa_b_int = *dev.get("kappa_b_int");
    d.kappa_w_ext = *dev.get("kappa_w_ext");
    d.kappa_w_int = *dev.get("kappa_w_int");
    d.t1 = *dev.get("t1");
    if (auto v = dev.get("t2"); *v >= 0) d.t2 = *v;
    d.p_eq = *dev.get("p_eq");
    d.p_reset = *dev.get("p_reset");
    d.eta_ro = *dev.get("eta_ro");
    d.alpha_4wm = *dev.get("alpha_4wm");
    validate_device(d, cfg.warnings);

    SectionReader tim(doc["timing"], "timing", kTimingFields);
    cfg.timing.t_d = *tim.get("t_d");
    cfg.timing.t_m = *tim.get("t_m");
    cfg.timing.t_r_avg = *tim.get("t_r_avg");
    cfg.timing.t_wait = *tim.get("t_wait");
    validate_timing(cfg.timing);

    SectionReader pump(doc["pump"], "pump", kPumpFields);
    cfg.pump.xi = *pump.get("xi");
    require_nonnegative(cfg.pump.xi, "xi");
    if (auto v = pump.get("omega_p"); *v >= 0)
        cfg.pump.omega_p = *v;
    else
        cfg.pump.omega_p = pump_frequency(d);

    if (doc.contains("environment")) {
        SectionReader env(doc["environment"], "environment", kEnvironmentFields);
        cfg.environment.temperature = *env.get("temperature");
        cfg.environment.input_rate = *env.get("input_rate");
    } else {
        cfg.environment.temperature = 0.010;
        cfg.environment.input_rate = 0;
    }
    require_positive(cfg.environment.temperature, "temperature");
    require_nonnegative(cfg.environment.input_rate, "input_rate");

    return cfg;
}

DeviceConfig load_device_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_device_config(buf.str());
}

std::string serialize_device_config(const DeviceConfig& cfg) {
    json doc;
    json& d = doc["device"];
    d["omega_q_rad_per_s"] = cfg.device.omega_q;
    if (cfg.device.e_c) d["e_c_rad_per_s"] = *cfg.device.e_c;
    d["chi_b_rad_per_s"] = cfg.device.chi_b;
    d["chi_w_rad_per_s"] = cfg.device.chi_w;
    d["omega_b_rad_per_s"] = cfg.device.omega_b;
    d["omega_w_rad_per_s"] = cfg.device.omega_w;
    d["kappa_b_ext_rad_per_s"] = cfg.device.kappa_b_ext;
    d["kappa_b_int_rad_per_s"] = cfg.device.kappa_b_int;
    d["kappa_w_ext_rad_per_s"] = cfg.device.kappa_w_ext;
    d["kappa_w_int_rad_per_s"] = cfg.device.kappa_w_int;
    d["t1_s"] = cfg.device.t1;
    if (cfg.device.t2) d["t2_s"] = *cfg.device.t2;
    d["p_eq"] = cfg.device.p_eq;
    d["p_reset"] = cfg.device.p_reset;
    d["eta_ro"] = cfg.device.eta_ro;
    d["alpha_4wm_per_s"] = cfg.device.alpha_4wm;

    json& t = doc["timing"];
    t["t_d_s"] = cfg.timing.t_d;
    t["t_m_s"] = cfg.timing.t_m;
    t["t_r_avg_s"] = cfg.timing.t_r_avg;
    t["t_wait_s"] = cfg.timing.t_wait;

    json& p = doc["pump"];
    p["xi"] = cfg.pump.xi;
    p["omega_p_rad_per_s"] = cfg.pump.omega_p;

    json& e = doc["environment"];
    e["temperature_k"] = cfg.environment.temperature;
    e["input_rate_per_s"] = cfg.environment.input_rate;

    return doc.dump(2) + "\n";
}

CycleDerived derive_cycle(const CycleTiming& t) {
    validate_timing(t);
    CycleDerived out;
    out.t_cycle = t.t_d + t.t_m + t.t_r_avg + t.t_wait;
    out.eta_d = t.t_d / out.t_cycle;
    return out;
}

double pump_frequency(const DeviceParams& d) {
    const double omega_p = d.omega_q + d.omega_w - d.chi_w - d.omega_b;
    if (!(omega_p > 0)) throw ValidationError("nonpositive pump frequency");
    return omega_p;
}

}  // namespace smpd
