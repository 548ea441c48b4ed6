#include "dmme/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dmme {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// section -> allowed keys
const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"scenario", {"name", "label"}},
        {"protocol",
         {"family", "delta0", "omega0", "drive_freq", "sweep_velocity", "window_scale",
          "t_start", "t_end", "table_file", "mu", "omega_bar", "beta0"}},
        {"bath", {"kappa", "cutoff", "temperature", "laser_offset"}},
        {"initial", {"state", "bloch", "lri_index"}},
        {"lri", {"init", "eta0", "zeta0", "omega_floor_fraction"}},
        {"integrator", {"rtol", "atol", "output_points"}},
        {"rates", {"source", "convention", "channels", "lamb", "s_max"}},
        {"check", {"tolerance"}},
        {"output", {"csv", "svg", "summary"}},
    };
    return s;
}

double parse_double(const RawEntry& e) {
    try {
        size_t pos = 0;
        const double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("line " + std::to_string(e.line) + ": key '" + e.section + "." + e.key +
                          "' expects a number, got '" + e.value + "'");
    }
}

int parse_int(const RawEntry& e) {
    try {
        size_t pos = 0;
        const int v = std::stoi(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("line " + std::to_string(e.line) + ": key '" + e.section + "." + e.key +
                          "' expects an integer, got '" + e.value + "'");
    }
}

bool parse_bool(const RawEntry& e) {
    if (e.value == "on" || e.value == "true" || e.value == "1") return true;
    if (e.value == "off" || e.value == "false" || e.value == "0") return false;
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + e.section + "." + e.key +
                      "' expects on/off, got '" + e.value + "'");
}

[[noreturn]] void bad_enum(const RawEntry& e, const std::string& allowed) {
    throw ConfigError("line " + std::to_string(e.line) + ": key '" + e.section + "." + e.key +
                      "' must be one of {" + allowed + "}, got '" + e.value + "'");
}

[[noreturn]] void bad_value(const std::string& field, const std::string& why) {
    throw ConfigError("invalid value for '" + field + "': " + why);
}

}  // namespace

void RawConfig::set(const std::string& section, const std::string& key, const std::string& value) {
    for (auto& e : entries) {
        if (e.section == section && e.key == key) {
            e.value = value;
            return;
        }
    }
    entries.push_back({section, key, value, 0});
}

const RawEntry* RawConfig::find(const std::string& section, const std::string& key) const {
    for (const auto& e : entries)
        if (e.section == section && e.key == key) return &e;
    return nullptr;
}

RawConfig parse_raw_config(const std::string& text, const std::string& origin) {
    RawConfig raw;
    raw.origin = origin;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header '" +
                                  t + "'");
            section = trim(t.substr(1, t.size() - 2));
            if (schema().find(section) == schema().end())
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section '[" +
                                  section + "]'");
            continue;
        }
        const auto pos = t.find('=');
        if (pos == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value', got '" +
                              t + "'");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
        const std::string key = trim(t.substr(0, pos));
        const std::string value = trim(t.substr(pos + 1));
        const auto& allowed = schema().at(section);
        if (allowed.find(key) == allowed.end())
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + section + "." +
                              key + "'");
        raw.entries.push_back({section, key, value, lineno});
    }
    return raw;
}

RawConfig load_raw_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_raw_config(buf.str(), path);
}

ScenarioConfig build_scenario_config(const RawConfig& raw) {
    ScenarioConfig cfg;
    bool have_name = false, have_family = false;
    bool have_t_start = false, have_t_end = false;

    for (const auto& e : raw.entries) {
        const std::string full = e.section + "." + e.key;
        if (full == "scenario.name") {
            have_name = true;
            if (e.value == "dephasing")
                cfg.kind = ScenarioKind::dephasing;
            else if (e.value == "landau-zener")
                cfg.kind = ScenarioKind::landau_zener;
            else if (e.value == "adiabatic")
                cfg.kind = ScenarioKind::adiabatic;
            else if (e.value == "inertial-check")
                cfg.kind = ScenarioKind::inertial_check;
            else if (e.value == "custom")
                cfg.kind = ScenarioKind::custom;
            else
                bad_enum(e, "dephasing, landau-zener, adiabatic, inertial-check, custom");
        } else if (full == "scenario.label") {
            cfg.label = e.value;
        } else if (full == "protocol.family") {
            have_family = true;
            if (e.value == "constant")
                cfg.family = ProtocolFamily::constant;
            else if (e.value == "sine-squared")
                cfg.family = ProtocolFamily::sine_squared;
            else if (e.value == "landau-zener")
                cfg.family = ProtocolFamily::landau_zener;
            else if (e.value == "tabulated")
                cfg.family = ProtocolFamily::tabulated;
            else
                bad_enum(e, "constant, sine-squared, landau-zener, tabulated");
        } else if (full == "protocol.delta0") {
            cfg.delta0 = parse_double(e);
        } else if (full == "protocol.omega0") {
            cfg.omega0 = parse_double(e);
        } else if (full == "protocol.drive_freq") {
            cfg.drive_freq = parse_double(e);
        } else if (full == "protocol.sweep_velocity") {
            cfg.sweep_velocity = parse_double(e);
        } else if (full == "protocol.window_scale") {
            cfg.window_scale = parse_double(e);
        } else if (full == "protocol.t_start") {
            cfg.t_start = parse_double(e);
            have_t_start = true;
        } else if (full == "protocol.t_end") {
            cfg.t_end = parse_double(e);
            have_t_end = true;
        } else if (full == "protocol.table_file") {
            cfg.table_file = e.value;
        } else if (full == "protocol.mu") {
            cfg.mu = parse_double(e);
        } else if (full == "protocol.omega_bar") {
            cfg.omega_bar = parse_double(e);
        } else if (full == "protocol.beta0") {
            cfg.beta0 = parse_double(e);
        } else if (full == "bath.kappa") {
            cfg.bath.kappa = parse_double(e);
        } else if (full == "bath.cutoff") {
            cfg.bath.omega_c = parse_double(e);
        } else if (full == "bath.temperature") {
            cfg.bath.temperature = parse_double(e);
        } else if (full == "bath.laser_offset") {
            cfg.bath.laser_offset = parse_double(e);
        } else if (full == "initial.state") {
            if (e.value == "bloch")
                cfg.init_is_lri = false;
            else if (e.value == "lri")
                cfg.init_is_lri = true;
            else
                bad_enum(e, "bloch, lri");
        } else if (full == "initial.bloch") {
            std::istringstream bs(e.value);
            if (!(bs >> cfg.bloch0.rx >> cfg.bloch0.ry >> cfg.bloch0.rz))
                throw ConfigError("line " + std::to_string(e.line) +
                                  ": key 'initial.bloch' expects three numbers 'rx ry rz'");
        } else if (full == "initial.lri_index") {
            cfg.lri_index = parse_int(e);
            if (cfg.lri_index != 1 && cfg.lri_index != 2) bad_enum(e, "1, 2");
        } else if (full == "lri.init") {
            if (e.value == "adiabatic")
                cfg.explicit_init = false;
            else if (e.value == "explicit")
                cfg.explicit_init = true;
            else
                bad_enum(e, "adiabatic, explicit");
        } else if (full == "lri.eta0") {
            cfg.eta0 = parse_double(e);
        } else if (full == "lri.zeta0") {
            cfg.zeta0 = parse_double(e);
        } else if (full == "lri.omega_floor_fraction") {
            cfg.omega_floor_fraction = parse_double(e);
        } else if (full == "integrator.rtol") {
            cfg.tol.rtol = parse_double(e);
        } else if (full == "integrator.atol") {
            cfg.tol.atol = parse_double(e);
        } else if (full == "integrator.output_points") {
            cfg.output_points = parse_int(e);
        } else if (full == "rates.source") {
            if (e.value == "slow_phase")
                cfg.source = RateSource::slow_phase;
            else if (e.value == "lz")
                cfg.source = RateSource::lz;
            else if (e.value == "dephasing")
                cfg.source = RateSource::dephasing;
            else if (e.value == "memory_kernel")
                cfg.source = RateSource::memory_kernel;
            else
                bad_enum(e, "slow_phase, lz, dephasing, memory_kernel");
        } else if (full == "rates.convention") {
            if (e.value == "gadi")
                cfg.convention = RateConvention::gadi;
            else if (e.value == "lz_section")
                cfg.convention = RateConvention::lz_section;
            else
                bad_enum(e, "gadi, lz_section");
        } else if (full == "rates.channels") {
            if (e.value == "x")
                cfg.channels = {true, false};
            else if (e.value == "y")
                cfg.channels = {false, true};
            else if (e.value == "xy")
                cfg.channels = {true, true};
            else
                bad_enum(e, "x, y, xy");
        } else if (full == "rates.lamb") {
            cfg.lamb_shift = parse_bool(e);
        } else if (full == "rates.s_max") {
            if (e.value == "auto")
                cfg.s_max = -1.0;
            else
                cfg.s_max = parse_double(e);
        } else if (full == "check.tolerance") {
            cfg.check_tolerance = parse_double(e);
        } else if (full == "output.csv") {
            cfg.write_csv = parse_bool(e);
        } else if (full == "output.svg") {
            cfg.write_svg = parse_bool(e);
        } else if (full == "output.summary") {
            cfg.write_summary = parse_bool(e);
        } else {
            throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + full + "'");
        }
    }

    if (!have_name) throw ConfigError("missing required key 'scenario.name'");

    // scenario-level defaults
    if (!have_family) {
        switch (cfg.kind) {
            case ScenarioKind::dephasing: cfg.family = ProtocolFamily::sine_squared; break;
            case ScenarioKind::landau_zener: cfg.family = ProtocolFamily::landau_zener; break;
            default: break;
        }
    }
    if (cfg.kind == ScenarioKind::dephasing) cfg.source = RateSource::dephasing;
    if (cfg.kind == ScenarioKind::landau_zener) {
        cfg.source = RateSource::lz;
        cfg.convention = RateConvention::lz_section;
    }

    if (cfg.kind == ScenarioKind::landau_zener && cfg.family != ProtocolFamily::landau_zener)
        throw ConfigError("the landau-zener scenario requires the landau-zener protocol family");
    if (!(cfg.bath.kappa >= 0.0)) bad_value("bath.kappa", "must be >= 0");
    if (!(cfg.bath.omega_c > 0.0)) bad_value("bath.cutoff", "must be > 0");
    if (!(cfg.bath.temperature >= 0.0)) bad_value("bath.temperature", "must be >= 0");
    if (cfg.family != ProtocolFamily::landau_zener) {
        if (cfg.kind != ScenarioKind::inertial_check && (!have_t_start || !have_t_end))
            throw ConfigError("missing required keys 'protocol.t_start'/'protocol.t_end'");
        if (have_t_start && have_t_end && !(cfg.t_end > cfg.t_start))
            bad_value("protocol.t_end", "must exceed t_start");
    } else {
        if (!(cfg.sweep_velocity > 0.0)) bad_value("protocol.sweep_velocity", "must be > 0");
        if (!(cfg.window_scale > 0.0)) bad_value("protocol.window_scale", "must be > 0");
    }
    if (cfg.kind == ScenarioKind::inertial_check) {
        if (!(cfg.omega_bar > 0.0)) bad_value("protocol.omega_bar", "must be > 0");
        if (!have_t_start || !have_t_end) {
            cfg.t_start = 0.0;
            cfg.t_end = 2.4;
        }
    }
    if (!cfg.init_is_lri && cfg.bloch0.length() > 1.0 + 1e-7)
        bad_value("initial.bloch", "must lie inside the unit ball");
    if (!(cfg.tol.rtol > 0.0)) bad_value("integrator.rtol", "must be > 0");
    if (!(cfg.tol.atol > 0.0)) bad_value("integrator.atol", "must be > 0");
    if (cfg.output_points < 2) bad_value("integrator.output_points", "must be >= 2");
    if (!(cfg.check_tolerance > 0.0)) bad_value("check.tolerance", "must be > 0");
    if (!(cfg.omega_floor_fraction > 0.0 && cfg.omega_floor_fraction <= 1.0))
        bad_value("lri.omega_floor_fraction", "must be in (0, 1]");
    return cfg;
}

Protocol ScenarioConfig::make_protocol() const {
    if (kind == ScenarioKind::inertial_check)
        return make_inertial_protocol(mu, omega_bar, beta0, t_start, t_end);
    switch (family) {
        case ProtocolFamily::constant:
            return Protocol::constant(delta0, omega0, t_start, t_end);
        case ProtocolFamily::sine_squared:
            return Protocol::sine_squared(delta0, omega0, drive_freq, t_start, t_end);
        case ProtocolFamily::landau_zener:
            return Protocol::landau_zener(sweep_velocity, omega0, window_scale);
        case ProtocolFamily::tabulated: {
            if (table_file.empty())
                throw ConfigError("tabulated protocol requires 'protocol.table_file'");
            std::ifstream f(table_file);
            if (!f) throw ConfigError("cannot open protocol table: " + table_file);
            std::vector<double> ts, ds, os;
            std::string line;
            while (std::getline(f, line)) {
                std::string t = line;
                if (t.empty() || t[0] == '#') continue;
                std::replace(t.begin(), t.end(), ',', ' ');
                std::istringstream row(t);
                double a, b, c;
                if (row >> a >> b >> c) {
                    ts.push_back(a);
                    ds.push_back(b);
                    os.push_back(c);
                } else {
                    throw ConfigError("malformed protocol table row: '" + line + "'");
                }
            }
            return Protocol::tabulated(std::move(ts), std::move(ds), std::move(os));
        }
    }
    throw ConfigError("unsupported protocol family");
}

LriInit ScenarioConfig::make_lri_init(const Protocol& p) const {
    if (explicit_init) return {eta0, zeta0};
    if (kind == ScenarioKind::inertial_check) {
        // inertial closed-form parameterization at the window start
        const auto s = p.eval(p.t_start());
        const double bar = std::hypot(s.delta, s.omega);
        const double kbar = std::sqrt(1.0 + mu * mu);
        return {std::acos(std::clamp(-std::sqrt(0.5 * (kbar * bar - s.delta) / (kbar * bar)),
                                     -1.0, 1.0)),
                -std::atan2(mu * bar, s.omega)};
    }
    return adiabatic_init_regularized(p, omega_floor_fraction);
}

std::string ScenarioConfig::kind_name() const {
    switch (kind) {
        case ScenarioKind::dephasing: return "dephasing";
        case ScenarioKind::landau_zener: return "landau-zener";
        case ScenarioKind::adiabatic: return "adiabatic";
        case ScenarioKind::inertial_check: return "inertial-check";
        case ScenarioKind::custom: return "custom";
    }
    return "?";
}

}  // namespace dmme
