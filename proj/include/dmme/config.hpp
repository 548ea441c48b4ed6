#pragma once

// Flat sectioned key-value scenario configuration. Unknown keys are
// validation errors carrying the offending key and line number.

#include <map>
#include <string>
#include <vector>

#include "dmme/driving.hpp"
#include "dmme/evolve.hpp"

namespace dmme {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RawEntry {
    std::string section;
    std::string key;
    std::string value;
    int line;
};

struct RawConfig {
    std::string origin;
    std::vector<RawEntry> entries;

    void set(const std::string& section, const std::string& key, const std::string& value);
    const RawEntry* find(const std::string& section, const std::string& key) const;
};

RawConfig parse_raw_config(const std::string& text, const std::string& origin);
RawConfig load_raw_config(const std::string& path);

enum class ScenarioKind { dephasing, landau_zener, adiabatic, inertial_check, custom };

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::custom;
    std::string label = "run";

    // [protocol]
    ProtocolFamily family = ProtocolFamily::constant;
    double delta0 = 0.0;
    double omega0 = 0.0;
    double drive_freq = 1.0;
    double sweep_velocity = 1.0;
    double window_scale = 40.0;
    double t_start = 0.0;
    double t_end = 1.0;
    std::string table_file;

    // [protocol] inertial construction (inertial-check scenario)
    double mu = 0.5;
    double omega_bar = 1.0;
    double beta0 = 2.8;

    // [bath]
    BathSpec bath{1.0, 20.0, 0.0, 0.0};

    // [initial]
    bool init_is_lri = false;
    BlochVector bloch0{1.0, 0.0, 0.0};
    int lri_index = 1;

    // [lri]
    bool explicit_init = false;
    double eta0 = 0.0;
    double zeta0 = 0.0;
    double omega_floor_fraction = 1e-3;

    // [integrator]
    OdeTolerances tol{1e-8, 1e-10};
    int output_points = 1001;

    // [rates]
    RateSource source = RateSource::slow_phase;
    RateConvention convention = RateConvention::gadi;
    ChannelSet channels{};
    bool lamb_shift = false;
    double s_max = -1.0;

    // [check]
    double check_tolerance = 1e-3;

    // [output]
    bool write_csv = true;
    bool write_svg = true;
    bool write_summary = true;

    Protocol make_protocol() const;
    LriInit make_lri_init(const Protocol& p) const;
    std::string kind_name() const;
};

// Validates the raw entries against the schema and builds the scenario
// configuration. Throws ConfigError with key and line context.
ScenarioConfig build_scenario_config(const RawConfig& raw);

}  // namespace dmme
