// simulate: config-driven runner for driven open two-level system dynamics.
//
//   simulate run <config> [--check] [--out DIR]
//   simulate sweep <config> --axis section.key=v1,v2,... [--jobs N] [--out DIR]
//   simulate selftest [--out DIR]
//
// Exit codes: 0 success, 2 validation failure, 3 integrator failure,
// 4 oracle-tolerance failure when --check is set.

#include <clocale>
#include <filesystem>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "dmme/acceptance.hpp"
#include "dmme/errors.hpp"
#include "dmme/scenario.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitIntegrator = 3;
constexpr int kExitCheck = 4;

void ensure_dir(const std::string& dir) {
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

int cmd_run(const std::string& config_path, bool check, const std::string& out_dir) {
    dmme::ScenarioConfig cfg;
    try {
        cfg = dmme::build_scenario_config(dmme::load_raw_config(config_path));
    } catch (const dmme::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    }
    dmme::RunArtifacts art;
    try {
        art = dmme::run_scenario(cfg);
    } catch (const dmme::IntegratorError& e) {
        std::cerr << "integrator failure: " << e.what() << "\n";
        return kExitIntegrator;
    } catch (const dmme::SingularEtaError& e) {
        std::cerr << "integrator failure: " << e.what() << "\n";
        return kExitIntegrator;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    ensure_dir(out_dir);
    for (const auto& f : dmme::write_artifacts(art, cfg, out_dir))
        std::cout << "wrote " << f << "\n";
    std::cout << dmme::summary_text(art);
    if (check && !art.checks_pass()) {
        std::cerr << "oracle tolerance check failed\n";
        return kExitCheck;
    }
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& axis_specs,
              int jobs, const std::string& out_dir) {
    dmme::RawConfig raw;
    std::vector<dmme::SweepAxis> axes;
    try {
        raw = dmme::load_raw_config(config_path);
        (void)dmme::build_scenario_config(raw);  // validate the base config up front
        for (const auto& spec : axis_specs) axes.push_back(dmme::parse_axis_spec(spec));
        const dmme::SweepResult result = dmme::run_sweep(raw, axes, jobs);
        ensure_dir(out_dir);
        const std::string path =
            (out_dir.empty() ? std::string{} : out_dir + "/") + "sweep.csv";
        dmme::write_text_file(path, dmme::table_csv(result.header, result.rows));
        std::cout << "wrote " << path << " (" << result.rows.size() << " rows)\n";
        if (result.had_error) {
            std::cerr << "sweep finished with failed rows (see status column)\n";
            return kExitIntegrator;
        }
        return 0;
    } catch (const dmme::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

int cmd_selftest(const std::string& out_dir) {
    ensure_dir(out_dir);
    const dmme::AcceptanceReport report = dmme::run_acceptance(out_dir);
    dmme::print_report(std::cout, report);
    return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");  // CSV formatting is part of the output contract
    CLI::App app{"driven-Markovian master equation simulator for two-level systems"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    bool check = false;
    auto* run = app.add_subcommand("run", "run one scenario from a config file");
    run->add_option("config", config_path, "scenario config file")->required();
    run->add_flag("--check", check, "exit 4 if an oracle tolerance check fails");
    run->add_option("--out", out_dir, "output directory (default: current)");

    std::vector<std::string> axis_specs;
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    sweep->add_option("config", config_path, "scenario config file")->required();
    sweep->add_option("--axis", axis_specs, "axis spec section.key=v1,v2,... (max 3)")
        ->required();
    sweep->add_option("--jobs", jobs, "worker threads (default: hardware parallelism)");
    sweep->add_option("--out", out_dir, "output directory (default: current)");

    auto* selftest = app.add_subcommand("selftest", "run the full acceptance suite");
    selftest->add_option("--out", out_dir, "artifact output directory");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(config_path, check, out_dir);
    if (sweep->parsed()) return cmd_sweep(config_path, axis_specs, jobs, out_dir);
    if (selftest->parsed()) return cmd_selftest(out_dir.empty() ? "selftest_out" : out_dir);
    return 0;
}
