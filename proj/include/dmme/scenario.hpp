#pragma once

// Declarative scenario execution: build protocol + frame from a
// ScenarioConfig, run the simulation(s), collect oracle comparisons, and
// serialize CSV / summary / SVG artifacts.

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dmme/config.hpp"
#include "dmme/csvio.hpp"
#include "dmme/svgplot.hpp"

namespace dmme {

struct CheckResult {
    std::string name;
    double measured;
    double threshold;
    bool within_threshold;  // measured <= threshold
};

struct RunArtifacts {
    std::string label;
    Trajectory main;
    std::optional<Trajectory> oracle;  // exact solution / AME / closed run
    std::string oracle_name;
    std::vector<std::pair<std::string, std::string>> summary;
    std::vector<CheckResult> checks;

    bool checks_pass() const;
};

RunArtifacts run_scenario(const ScenarioConfig& cfg);

std::string summary_text(const RunArtifacts& art);
PlotSpec scenario_plot(const RunArtifacts& art, const ScenarioConfig& cfg);

// Writes <label>.csv, <label>_<oracle>.csv, <label>_summary.txt, <label>.svg
// under out_dir according to the [output] block. Returns the file names
// written.
std::vector<std::string> write_artifacts(const RunArtifacts& art, const ScenarioConfig& cfg,
                                         const std::string& out_dir);

struct SweepAxis {
    std::string section;
    std::string key;
    std::vector<std::string> values;
};

SweepAxis parse_axis_spec(const std::string& spec);

struct SweepResult {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    bool had_error = false;  // hard validation/integration failure in a row
};

// Runs the scenario once per grid point of the Cartesian product of the axes
// (at most 3), distributing points over `jobs` worker threads. Rows keep grid
// order regardless of scheduling. Unsupported-configuration rows are reported
// in-band via their status column.
SweepResult run_sweep(const RawConfig& base, const std::vector<SweepAxis>& axes, int jobs);

}  // namespace dmme
