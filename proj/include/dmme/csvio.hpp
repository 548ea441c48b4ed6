#pragma once

// Deterministic CSV output: 17 significant digits, '.' decimal separator,
// '\n' line endings. Byte-identical across runs with the same inputs.

#include <string>
#include <vector>

#include "dmme/evolve.hpp"

namespace dmme {

std::string format_g17(double v);

// Columns: t, rx, ry, rz, rho11, alpha12_x, alpha12_y, gamma_plus,
// gamma_minus, gamma_d, trace_err, min_eig.
std::string trajectory_csv(const Trajectory& traj);

// Long-format table with caller-provided header and rows.
std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace dmme
