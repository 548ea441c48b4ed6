#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dmme/acceptance.hpp"
#include "dmme/scenario.hpp"

using namespace dmme;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(static_cast<bool>(f));
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

// a cheap scenario for pipeline tests
const char* kTinyConfig = R"(
[scenario]
name = custom
label = tiny

[protocol]
family = constant
delta0 = 0.6
omega0 = 0.8
t_start = 0.0
t_end = 2.0

[bath]
kappa = 0.1
cutoff = 8.0
temperature = 1.0

[initial]
state = lri
lri_index = 2

[integrator]
output_points = 41

[rates]
source = slow_phase
channels = y
)";

}  // namespace

TEST_CASE("config parsing reports unknown keys with their line") {
    const char* text = R"([scenario]
name = custom
typo_key = 1
)";
    try {
        parse_raw_config(text, "<test>");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("scenario.typo_key") != std::string::npos);
        CHECK(msg.find("line 3") != std::string::npos);
    }

    CHECK_THROWS_AS(parse_raw_config("[nosuch]\nx = 1\n", "<test>"), ConfigError);
    CHECK_THROWS_AS(parse_raw_config("key = 1\n", "<test>"), ConfigError);
    CHECK_THROWS_AS(parse_raw_config("[scenario\nname = custom\n", "<test>"), ConfigError);
}

TEST_CASE("scenario validation names the offending field") {
    RawConfig raw = parse_raw_config(kTinyConfig, "<test>");
    raw.set("bath", "kappa", "-1");
    try {
        build_scenario_config(raw);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bath.kappa") != std::string::npos);
    }

    raw = parse_raw_config(kTinyConfig, "<test>");
    raw.set("rates", "source", "nonsense");
    CHECK_THROWS_AS(build_scenario_config(raw), ConfigError);

    raw = parse_raw_config(kTinyConfig, "<test>");
    raw.set("initial", "bloch", "2 0 0");
    raw.set("initial", "state", "bloch");
    CHECK_THROWS_AS(build_scenario_config(raw), ConfigError);
}

TEST_CASE("bundled configs parse and match the canonical parameters") {
    const std::string dir = CONFIG_DIR;
    const ScenarioConfig fig2 = build_scenario_config(load_raw_config(dir + "/fig2.config"));
    const ScenarioConfig canon2 = fig2_config();
    CHECK(fig2.kind == ScenarioKind::dephasing);
    CHECK(fig2.bath.kappa == canon2.bath.kappa);
    CHECK(fig2.bath.omega_c == canon2.bath.omega_c);
    CHECK(fig2.t_end == canon2.t_end);
    CHECK(fig2.check_tolerance == canon2.check_tolerance);

    const ScenarioConfig fig3 = build_scenario_config(load_raw_config(dir + "/fig3.config"));
    CHECK(fig3.kind == ScenarioKind::landau_zener);
    CHECK(fig3.omega0 == fig3_config().omega0);
    CHECK(fig3.source == RateSource::lz);

    const ScenarioConfig fig4 = build_scenario_config(load_raw_config(dir + "/fig4.config"));
    CHECK(fig4.omega0 == fig4_config().omega0);
    CHECK(fig4.check_tolerance == fig4_config().check_tolerance);

    CHECK(build_scenario_config(load_raw_config(dir + "/adiabatic.config")).kind ==
          ScenarioKind::adiabatic);
    CHECK(build_scenario_config(load_raw_config(dir + "/inertial.config")).kind ==
          ScenarioKind::inertial_check);
}

TEST_CASE("csv output is deterministic and well formed") {
    const ScenarioConfig cfg = build_scenario_config(parse_raw_config(kTinyConfig, "<test>"));
    const RunArtifacts a = run_scenario(cfg);
    const RunArtifacts b = run_scenario(cfg);
    const std::string csv_a = trajectory_csv(a.main);
    const std::string csv_b = trajectory_csv(b.main);
    CHECK(csv_a == csv_b);
    CHECK(csv_a.rfind("t,rx,ry,rz,rho11,alpha12_x,alpha12_y,gamma_plus,gamma_minus,gamma_d,"
                      "trace_err,min_eig\n",
                      0) == 0);
    CHECK(csv_a.find("\r") == std::string::npos);
    // 41 data rows + header
    size_t lines = 0;
    for (char c : csv_a)
        if (c == '\n') ++lines;
    CHECK(lines == 42);
}

TEST_CASE("format_g17 round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 6.626e-34, -2.997e8, 0.0, 1e300}) {
        CHECK(std::stod(format_g17(v)) == v);
    }
}

TEST_CASE("svg plot is emitted with the expected structure") {
    const ScenarioConfig cfg = build_scenario_config(parse_raw_config(kTinyConfig, "<test>"));
    const RunArtifacts art = run_scenario(cfg);
    const std::string svg = render_svg_plot(scenario_plot(art, cfg));
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    size_t polylines = 0;
    for (size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos)
        ++polylines;
    CHECK(polylines >= 3);
}

TEST_CASE("axis spec parsing") {
    const SweepAxis ax = parse_axis_spec("bath.temperature=0,0.5,1");
    CHECK(ax.section == "bath");
    CHECK(ax.key == "temperature");
    REQUIRE(ax.values.size() == 3);
    CHECK(ax.values[2] == "1");
    CHECK_THROWS_AS(parse_axis_spec("no_equals"), ConfigError);
    CHECK_THROWS_AS(parse_axis_spec("unqualified=1,2"), ConfigError);
}

TEST_CASE("sweep over a numeric axis") {
    const RawConfig base = parse_raw_config(kTinyConfig, "<test>");
    const SweepResult r =
        run_sweep(base, {parse_axis_spec("bath.temperature=0.5,1.0,2.0")}, 2);
    REQUIRE(r.rows.size() == 3);
    CHECK(!r.had_error);
    for (const auto& row : r.rows) {
        CHECK(row.front() != "");
        CHECK(row[1] == "ok");
    }
    CHECK(r.header.front() == "bath.temperature");

    // empty axis list: one row, equal to the plain run
    const SweepResult single = run_sweep(base, {}, 1);
    REQUIRE(single.rows.size() == 1);
    CHECK(single.rows[0][0] == "ok");

    CHECK_THROWS_AS(run_sweep(base, {parse_axis_spec("scenario.label=a,b")}, 1), ConfigError);
    CHECK_THROWS_AS(run_sweep(base, {parse_axis_spec("bath.nosuch=1,2")}, 1), ConfigError);
    const std::vector<SweepAxis> four(4, parse_axis_spec("bath.kappa=0.1"));
    CHECK_THROWS_AS(run_sweep(base, four, 1), ConfigError);
}

TEST_CASE("unsupported sweep rows are reported in band") {
    RawConfig base = parse_raw_config(kTinyConfig, "<test>");
    base.set("scenario", "name", "dephasing");
    base.set("bath", "kappa", "1.0");
    base.set("bath", "cutoff", "20.0");
    base.set("protocol", "family", "sine-squared");
    base.set("protocol", "drive_freq", "1.0");
    base.set("protocol", "t_end", "0.2");
    base.set("initial", "state", "bloch");
    base.set("initial", "bloch", "1 0 0");
    const SweepResult r = run_sweep(base, {parse_axis_spec("bath.temperature=0,1")}, 2);
    REQUIRE(r.rows.size() == 2);
    CHECK(!r.had_error);  // unsupported rows are not hard failures
    CHECK(r.rows[0][1] == "ok");
    CHECK(r.rows[1][1].rfind("unsupported", 0) == 0);
}

TEST_CASE("stronger coupling drains more population in a dissipative sweep") {
    // Final diabatic population decreases monotonically with the bath
    // coupling in the non-adiabatic sweep scenario.
    RawConfig base;
    base.set("scenario", "name", "landau-zener");
    base.set("scenario", "label", "lzsweep");
    base.set("protocol", "family", "landau-zener");
    base.set("protocol", "sweep_velocity", "1.0");
    base.set("protocol", "omega0", "0.2");
    base.set("protocol", "window_scale", "40.0");
    base.set("bath", "kappa", "0.1");
    base.set("bath", "cutoff", "8.0");
    base.set("bath", "temperature", "0.0");
    base.set("initial", "state", "lri");
    base.set("initial", "lri_index", "1");
    base.set("integrator", "rtol", "1e-7");
    base.set("integrator", "atol", "1e-9");
    base.set("integrator", "output_points", "101");
    base.set("check", "tolerance", "0.05");
    const SweepResult r =
        run_sweep(base, {parse_axis_spec("bath.kappa=0.01,0.02,0.05,0.1")}, 2);
    REQUIRE(r.rows.size() == 4);
    double prev = 2.0;
    for (const auto& row : r.rows) {
        REQUIRE(row[1] == "ok");
        const double rho11 = std::stod(row[5]);
        CHECK(rho11 < prev);
        prev = rho11;
    }
}

TEST_CASE("tabulated protocol can be loaded from a table file") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "dmme_table_test";
    fs::create_directories(dir);
    const fs::path table = dir / "drive.csv";
    {
        std::ofstream f(table);
        f.precision(17);
        f << "# t, delta, omega\n";
        for (int i = 0; i <= 400; ++i) {
            const double t = 2.0 * i / 400.0;
            f << t << ", 0.6, " << 0.8 + 0.1 * std::sin(t) << "\n";
        }
    }
    RawConfig raw = parse_raw_config(kTinyConfig, "<test>");
    raw.set("protocol", "family", "tabulated");
    raw.set("protocol", "table_file", table.string());
    const ScenarioConfig cfg = build_scenario_config(raw);
    const Protocol p = cfg.make_protocol();
    CHECK(p.family() == ProtocolFamily::tabulated);
    CHECK(p.eval(1.0).delta == doctest::Approx(0.6));
    CHECK(p.eval(1.0).omega == doctest::Approx(0.8 + 0.1 * std::sin(1.0)).epsilon(1e-6));
    const RunArtifacts art = run_scenario(cfg);
    CHECK(art.main.max_trace_err <= 1e-8);

    raw.set("protocol", "table_file", (dir / "missing.csv").string());
    CHECK_THROWS_AS(build_scenario_config(raw).make_protocol(), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("cli exit codes") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "dmme_cli_test";
    fs::create_directories(dir);

    const fs::path good = dir / "good.config";
    {
        std::ofstream f(good);
        f << kTinyConfig;
    }
    const fs::path bad = dir / "bad.config";
    {
        std::ofstream f(bad);
        f << "[scenario]\nname = custom\nbogus = 1\n";
    }

    const std::string bin = SIMULATE_BIN;
    auto run = [&](const std::string& args) {
        const std::string cmd = bin + " " + args + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WEXITSTATUS(status);
    };

    CHECK(run("run " + good.string() + " --out " + (dir / "out").string()) == 0);
    CHECK(fs::exists(dir / "out" / "tiny.csv"));
    CHECK(fs::exists(dir / "out" / "tiny_summary.txt"));
    CHECK(fs::exists(dir / "out" / "tiny.svg"));
    CHECK(run("run " + bad.string()) == 2);
    CHECK(run("run " + (dir / "missing.config").string()) == 2);

    // integrator failure: explicit init sits on the singular manifold
    const fs::path singular = dir / "singular.config";
    {
        std::ofstream f(singular);
        f << kTinyConfig;
        f << "\n[lri]\ninit = explicit\neta0 = 0.0\nzeta0 = 0.0\n";
    }
    CHECK(run("run " + singular.string() + " --out " + (dir / "s").string()) == 3);

    // oracle-tolerance failure surfaces only under --check
    const fs::path strict = dir / "strict.config";
    {
        std::ofstream f(strict);
        f << R"([scenario]
name = dephasing
label = strict
[protocol]
family = sine-squared
delta0 = 1.0
omega0 = 1.0
drive_freq = 1.0
t_start = 0.0
t_end = 0.2
[bath]
kappa = 1.0
cutoff = 20.0
temperature = 0.0
[initial]
state = bloch
bloch = 1 0 0
[integrator]
output_points = 51
[rates]
source = dephasing
[check]
tolerance = 1e-18
)";
    }
    CHECK(run("run " + strict.string() + " --out " + (dir / "c1").string()) == 0);
    CHECK(run("run " + strict.string() + " --check --out " + (dir / "c2").string()) == 4);

    // sweep CLI writes the long-format table
    CHECK(run("sweep " + good.string() + " --axis bath.temperature=0.5,1 --jobs 2 --out " +
              (dir / "sw").string()) == 0);
    CHECK(fs::exists(dir / "sw" / "sweep.csv"));
    const std::string table = slurp((dir / "sw" / "sweep.csv").string());
    CHECK(table.rfind("bath.temperature,status,", 0) == 0);

    // a bundled config through the real binary, with its oracle check armed
    const std::string cfgdir = CONFIG_DIR;
    CHECK(run("run " + cfgdir + "/inertial.config --check --out " + (dir / "in").string()) == 0);
    CHECK(fs::exists(dir / "in" / "inertial.csv"));

    fs::remove_all(dir);
}
