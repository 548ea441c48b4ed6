#include "dmme/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace dmme {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out =
        "t,rx,ry,rz,rho11,alpha12_x,alpha12_y,gamma_plus,gamma_minus,gamma_d,trace_err,min_eig\n";
    for (const auto& pt : traj.points) {
        const BlochVector b = bloch_of(pt.rho);
        out += format_g17(pt.t);
        out += ',';
        out += format_g17(b.rx);
        out += ',';
        out += format_g17(b.ry);
        out += ',';
        out += format_g17(b.rz);
        out += ',';
        out += format_g17(std::real(pt.rho.mat(0, 0)));
        out += ',';
        out += format_g17(pt.rates.alpha12_x);
        out += ',';
        out += format_g17(pt.rates.alpha12_y);
        out += ',';
        out += format_g17(pt.rates.gamma_plus);
        out += ',';
        out += format_g17(pt.rates.gamma_minus);
        out += ',';
        out += format_g17(pt.rates.gamma_d);
        out += ',';
        out += format_g17(pt.trace_err);
        out += ',';
        out += format_g17(pt.min_eig);
        out += '\n';
    }
    return out;
}

std::string table_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace dmme
