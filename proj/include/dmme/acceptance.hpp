#pragma once

// Quantitative acceptance suite: every criterion is pinned here, in code,
// with the tolerance it must meet. `simulate selftest` and the acceptance
// test binary both run this.

#include <ostream>
#include <string>
#include <vector>

#include "dmme/config.hpp"

namespace dmme {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string detail;  // measured values and thresholds
    double seconds;
};

struct AcceptanceReport {
    std::vector<CriterionResult> results;
    bool all_pass() const;
};

// Runs all criteria. When artifacts_dir is non-empty the benchmark scenario
// artifacts (CSV/summary/SVG) are written there.
AcceptanceReport run_acceptance(const std::string& artifacts_dir = "");

void print_report(std::ostream& os, const AcceptanceReport& report);

// Canonical benchmark configurations (the bundled .config files carry the
// same text).
ScenarioConfig fig2_config();
ScenarioConfig fig3_config();
ScenarioConfig fig4_config();
ScenarioConfig adiabatic_config();
ScenarioConfig inertial_config();

}  // namespace dmme
