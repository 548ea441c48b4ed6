#include "dmme/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dmme/errors.hpp"
#include "dmme/oracles.hpp"

namespace dmme {

namespace {

DensityMatrix initial_state(const ScenarioConfig& cfg, const LriFrame& frame) {
    if (!cfg.init_is_lri) return state_of(cfg.bloch0);
    const auto [p1, p2] = frame.eigenstates(frame.t_start());
    return DensityMatrix::pure(cfg.lri_index == 1 ? p1 : p2);
}

// The trajectory's rate record doubles as the CSV alpha column; closed runs
// get the frame frequencies filled in after the fact.
void fill_alphas(Trajectory& traj, const CouplingEvaluator& coeffs) {
    for (auto& pt : traj.points) {
        const auto al = coeffs.frequencies_checked(pt.t);
        pt.rates.alpha12_x = al.degenerate_x ? 0.0 : al.alpha12_x;
        pt.rates.alpha12_y = al.degenerate_y ? 0.0 : al.alpha12_y;
    }
}

double bloch_supnorm_gap(const Trajectory& a, const Trajectory& b) {
    double gap = 0.0;
    for (size_t i = 0; i < a.points.size() && i < b.points.size(); ++i) {
        const BlochVector ba = bloch_of(a.points[i].rho);
        const BlochVector bb = bloch_of(b.points[i].rho);
        gap = std::max({gap, std::abs(ba.rx - bb.rx), std::abs(ba.ry - bb.ry),
                        std::abs(ba.rz - bb.rz)});
    }
    return gap;
}

void push(RunArtifacts& art, const std::string& k, double v) {
    art.summary.emplace_back(k, format_g17(v));
}

EvolveOptions evolve_options(const ScenarioConfig& cfg) {
    EvolveOptions opts;
    opts.source = cfg.source;
    opts.convention = cfg.convention;
    opts.channels = cfg.channels;
    opts.lamb_shift = cfg.lamb_shift;
    opts.s_max = cfg.s_max;
    opts.tol = cfg.tol;
    opts.output_points = cfg.output_points;
    return opts;
}

RunArtifacts run_dephasing(const ScenarioConfig& cfg) {
    RunArtifacts art;
    art.label = cfg.label;
    const Protocol p = cfg.make_protocol();
    const LriFrame frame = solve_lri(p, cfg.make_lri_init(p), cfg.tol);
    const CouplingEvaluator coeffs(frame);
    const DensityMatrix rho0 = initial_state(cfg, frame);

    art.main = dmme_evolve(frame, coeffs, cfg.bath, rho0, evolve_options(cfg));
    art.oracle = dephasing_exact(frame, cfg.bath, rho0, cfg.output_points);
    art.oracle_name = "exact";
    fill_alphas(art.main, coeffs);
    fill_alphas(*art.oracle, coeffs);

    const double gap = bloch_supnorm_gap(art.main, *art.oracle);
    art.checks.push_back({"bloch_supnorm_gap_vs_exact", gap, cfg.check_tolerance,
                          gap <= cfg.check_tolerance});

    // The Lamb term of this model is proportional to the identity; toggling it
    // must not move the trajectory.
    EvolveOptions lamb_opts = evolve_options(cfg);
    lamb_opts.lamb_shift = !cfg.lamb_shift;
    const Trajectory other = dmme_evolve(frame, coeffs, cfg.bath, rho0, lamb_opts);
    const double lamb_gap = bloch_supnorm_gap(art.main, other);
    art.checks.push_back({"lamb_toggle_gap", lamb_gap, 1e-9, lamb_gap <= 1e-9});

    const BlochVector bf = bloch_of(art.main.back().rho);
    push(art, "final_rx", bf.rx);
    push(art, "final_ry", bf.ry);
    push(art, "final_rz", bf.rz);
    return art;
}

RunArtifacts run_landau_zener(const ScenarioConfig& cfg) {
    RunArtifacts art;
    art.label = cfg.label;
    const Protocol p = cfg.make_protocol();
    const LriFrame frame = solve_lri(p, cfg.make_lri_init(p), cfg.tol);
    const CouplingEvaluator coeffs(frame);
    const DensityMatrix rho0 = initial_state(cfg, frame);

    art.main = dmme_evolve(frame, coeffs, cfg.bath, rho0, evolve_options(cfg));
    fill_alphas(art.main, coeffs);

    // Closed-system companion run from the same state.
    Vec2 psi0;
    if (cfg.init_is_lri) {
        const auto [p1, p2] = frame.eigenstates(frame.t_start());
        psi0 = (cfg.lri_index == 1) ? p1 : p2;
    } else {
        // nearest pure state along the configured Bloch direction
        const double n = std::max(cfg.bloch0.length(), 1e-300);
        const double th = std::acos(std::clamp(cfg.bloch0.rz / n, -1.0, 1.0));
        const double ph = std::atan2(cfg.bloch0.ry, cfg.bloch0.rx);
        psi0 = {std::cos(0.5 * th), std::exp(iu * ph) * std::sin(0.5 * th)};
    }
    art.oracle = schrodinger_evolve(p, psi0, {1e-12, 1e-14}, cfg.output_points);
    art.oracle_name = "closed";
    fill_alphas(*art.oracle, coeffs);

    const LzPrediction pred =
        lz_exact(cfg.sweep_velocity, cfg.omega0, cfg.bath.kappa, cfg.bath.omega_c);
    const double rho11 = std::real(art.main.back().rho.mat(0, 0));
    const double closed11 = std::real(art.oracle->back().rho.mat(0, 0));
    const double gap = std::abs(rho11 - pred.p11);
    art.checks.push_back({"final_rho11_vs_p11", gap, cfg.check_tolerance,
                          gap <= cfg.check_tolerance});
    push(art, "final_rho11", rho11);
    push(art, "p11_exact", pred.p11);
    push(art, "w_squared", pred.w_squared);
    push(art, "closed_final_population", closed11);
    push(art, "closed_vs_dissipative_contrast", std::abs(closed11 - rho11));
    return art;
}

RunArtifacts run_adiabatic(const ScenarioConfig& cfg) {
    RunArtifacts art;
    art.label = cfg.label;
    const Protocol p = cfg.make_protocol();
    const LriFrame frame = solve_lri(p, cfg.make_lri_init(p), cfg.tol);
    const CouplingEvaluator coeffs(frame);
    const DensityMatrix rho0 = initial_state(cfg, frame);

    art.main = dmme_evolve(frame, coeffs, cfg.bath, rho0, evolve_options(cfg));
    art.oracle = ame_evolve(p, cfg.bath, rho0, cfg.tol, cfg.output_points);
    art.oracle_name = "ame";
    fill_alphas(art.main, coeffs);
    fill_alphas(*art.oracle, coeffs);

    const double final_dist = trace_distance(art.main.back().rho, art.oracle->back().rho);
    double max_dist = 0.0;
    for (size_t i = 0; i < art.main.points.size(); ++i)
        max_dist = std::max(max_dist,
                            trace_distance(art.main.points[i].rho, art.oracle->points[i].rho));
    art.checks.push_back({"final_trace_distance_vs_ame", final_dist, cfg.check_tolerance,
                          final_dist <= cfg.check_tolerance});
    push(art, "max_trace_distance_vs_ame", max_dist);
    return art;
}

RunArtifacts run_inertial(const ScenarioConfig& cfg) {
    RunArtifacts art;
    art.label = cfg.label;
    const Protocol p = cfg.make_protocol();
    const InertialReport rep = inertial_consistency(p, cfg.mu);

    const LriFrame frame = solve_lri(p, cfg.make_lri_init(p), cfg.tol);
    const CouplingEvaluator coeffs(frame);
    const auto [p1, p2] = frame.eigenstates(frame.t_start());
    art.main = schrodinger_evolve(p, cfg.lri_index == 2 ? p2 : p1, {1e-12, 1e-14},
                                  cfg.output_points);
    fill_alphas(art.main, coeffs);

    art.checks.push_back({"parameter_equation_residual", rep.max_residual, cfg.check_tolerance,
                          rep.max_residual <= cfg.check_tolerance});
    const double overlap_defect = 1.0 - rep.min_overlap;
    art.checks.push_back(
        {"sigma_z_eigenvector_overlap_defect", overlap_defect, 1e-10, overlap_defect <= 1e-10});
    push(art, "mu", rep.mu);
    push(art, "max_mu_drift", rep.max_mu_drift);
    return art;
}

RunArtifacts run_custom(const ScenarioConfig& cfg) {
    RunArtifacts art;
    art.label = cfg.label;
    const Protocol p = cfg.make_protocol();
    const LriFrame frame = solve_lri(p, cfg.make_lri_init(p), cfg.tol);
    const CouplingEvaluator coeffs(frame);
    const DensityMatrix rho0 = initial_state(cfg, frame);
    art.main = dmme_evolve(frame, coeffs, cfg.bath, rho0, evolve_options(cfg));
    fill_alphas(art.main, coeffs);
    const BlochVector bf = bloch_of(art.main.back().rho);
    push(art, "final_rx", bf.rx);
    push(art, "final_ry", bf.ry);
    push(art, "final_rz", bf.rz);
    push(art, "final_rho11", std::real(art.main.back().rho.mat(0, 0)));
    return art;
}

}  // namespace

bool RunArtifacts::checks_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.within_threshold; });
}

RunArtifacts run_scenario(const ScenarioConfig& cfg) {
    RunArtifacts art;
    switch (cfg.kind) {
        case ScenarioKind::dephasing: art = run_dephasing(cfg); break;
        case ScenarioKind::landau_zener: art = run_landau_zener(cfg); break;
        case ScenarioKind::adiabatic: art = run_adiabatic(cfg); break;
        case ScenarioKind::inertial_check: art = run_inertial(cfg); break;
        case ScenarioKind::custom: art = run_custom(cfg); break;
    }
    art.summary.emplace_back("max_trace_err", format_g17(art.main.max_trace_err));
    art.summary.emplace_back("max_herm_err", format_g17(art.main.max_herm_err));
    art.summary.emplace_back("min_eigenvalue", format_g17(art.main.min_eigenvalue));
    art.summary.emplace_back("positivity_violated", art.main.positivity_violated ? "yes" : "no");
    art.summary.emplace_back("negative_rates", art.main.negative_rates ? "yes" : "no");
    return art;
}

std::string summary_text(const RunArtifacts& art) {
    std::string out;
    out += "label: " + art.label + "\n";
    for (const auto& [k, v] : art.summary) out += k + ": " + v + "\n";
    for (const auto& c : art.checks) {
        out += "check " + c.name + ": measured " + format_g17(c.measured) + ", tolerance " +
               format_g17(c.threshold) + ", " + (c.within_threshold ? "pass" : "fail") + "\n";
    }
    return out;
}

PlotSpec scenario_plot(const RunArtifacts& art, const ScenarioConfig& cfg) {
    PlotSpec spec;
    spec.x_label = "t";
    auto series_of = [](const Trajectory& traj, auto&& f) {
        std::vector<double> xs, ys;
        xs.reserve(traj.points.size());
        ys.reserve(traj.points.size());
        for (const auto& pt : traj.points) {
            xs.push_back(pt.t);
            ys.push_back(f(pt));
        }
        return std::make_pair(std::move(xs), std::move(ys));
    };
    auto rx = [](const TrajectoryPoint& pt) { return bloch_of(pt.rho).rx; };
    auto ry = [](const TrajectoryPoint& pt) { return bloch_of(pt.rho).ry; };
    auto rz = [](const TrajectoryPoint& pt) { return bloch_of(pt.rho).rz; };
    auto p11 = [](const TrajectoryPoint& pt) { return std::real(pt.rho.mat(0, 0)); };

    if (cfg.kind == ScenarioKind::landau_zener) {
        spec.title = cfg.label + ": diabatic population";
        spec.y_label = "rho11";
        auto [x1, y1] = series_of(art.main, p11);
        spec.series.push_back({"dmme", std::move(x1), std::move(y1), "#1f6eb4", ""});
        if (art.oracle) {
            auto [x2, y2] = series_of(*art.oracle, p11);
            spec.series.push_back({"closed", std::move(x2), std::move(y2), "#c9a227", "6,4"});
        }
        const LzPrediction pred =
            lz_exact(cfg.sweep_velocity, cfg.omega0, cfg.bath.kappa, cfg.bath.omega_c);
        spec.series.push_back({"p11 exact",
                               {art.main.front().t, art.main.back().t},
                               {pred.p11, pred.p11},
                               "#c03434",
                               "2,3"});
        return spec;
    }

    spec.title = cfg.label + ": Bloch components";
    spec.y_label = "r";
    auto [x1, y1] = series_of(art.main, rx);
    auto [x2, y2] = series_of(art.main, ry);
    auto [x3, y3] = series_of(art.main, rz);
    spec.series.push_back({"rx", std::move(x1), std::move(y1), "#1f6eb4", ""});
    spec.series.push_back({"ry", std::move(x2), std::move(y2), "#2c8c4b", ""});
    spec.series.push_back({"rz", std::move(x3), std::move(y3), "#7b4fa6", ""});
    if (art.oracle) {
        auto [ox1, oy1] = series_of(*art.oracle, rx);
        auto [ox2, oy2] = series_of(*art.oracle, ry);
        auto [ox3, oy3] = series_of(*art.oracle, rz);
        spec.series.push_back(
            {"rx " + art.oracle_name, std::move(ox1), std::move(oy1), "#c03434", "6,4"});
        spec.series.push_back(
            {"ry " + art.oracle_name, std::move(ox2), std::move(oy2), "#c9a227", "6,4"});
        spec.series.push_back(
            {"rz " + art.oracle_name, std::move(ox3), std::move(oy3), "#666666", "6,4"});
    }
    return spec;
}

std::vector<std::string> write_artifacts(const RunArtifacts& art, const ScenarioConfig& cfg,
                                         const std::string& out_dir) {
    std::vector<std::string> written;
    const std::string stem = out_dir.empty() ? art.label : out_dir + "/" + art.label;
    if (cfg.write_csv) {
        write_text_file(stem + ".csv", trajectory_csv(art.main));
        written.push_back(stem + ".csv");
        if (art.oracle) {
            write_text_file(stem + "_" + art.oracle_name + ".csv", trajectory_csv(*art.oracle));
            written.push_back(stem + "_" + art.oracle_name + ".csv");
        }
    }
    if (cfg.write_summary) {
        write_text_file(stem + "_summary.txt", summary_text(art));
        written.push_back(stem + "_summary.txt");
    }
    if (cfg.write_svg) {
        write_text_file(stem + ".svg", render_svg_plot(scenario_plot(art, cfg)));
        written.push_back(stem + ".svg");
    }
    return written;
}

SweepAxis parse_axis_spec(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos)
        throw ConfigError("axis spec must look like section.key=v1,v2,...: '" + spec + "'");
    const std::string path = spec.substr(0, eq);
    const auto dot = path.find('.');
    if (dot == std::string::npos)
        throw ConfigError("axis key must be qualified as section.key: '" + path + "'");
    SweepAxis axis;
    axis.section = path.substr(0, dot);
    axis.key = path.substr(dot + 1);
    std::string rest = spec.substr(eq + 1);
    size_t pos = 0;
    while (pos <= rest.size()) {
        const auto comma = rest.find(',', pos);
        const std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                                            : comma - pos);
        if (!tok.empty()) axis.values.push_back(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return axis;
}

SweepResult run_sweep(const RawConfig& base, const std::vector<SweepAxis>& axes, int jobs) {
    if (axes.size() > 3) throw ConfigError("at most 3 sweep axes are supported");
    for (const auto& ax : axes) {
        // the axis must name a schema key; reject up front rather than per row
        RawConfig probe;
        try {
            probe = parse_raw_config("[" + ax.section + "]\n" + ax.key + " = 0\n", "<axis>");
        } catch (const ConfigError&) {
            throw ConfigError("sweep axis '" + ax.section + "." + ax.key +
                              "' does not name a known configuration key");
        }
        for (const auto& v : ax.values) {
            size_t pos = 0;
            bool ok = true;
            try {
                (void)std::stod(v, &pos);
            } catch (...) {
                ok = false;
            }
            if (!ok || pos != v.size())
                throw ConfigError("sweep axis '" + ax.section + "." + ax.key +
                                  "' requires numeric values, got '" + v + "'");
        }
    }

    // Cartesian product, grid order.
    std::vector<std::vector<std::string>> points{{}};
    for (const auto& ax : axes) {
        std::vector<std::vector<std::string>> next;
        for (const auto& pt : points)
            for (const auto& v : ax.values) {
                auto p = pt;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        points = std::move(next);
    }

    SweepResult result;
    for (const auto& ax : axes) result.header.push_back(ax.section + "." + ax.key);
    for (const char* col :
         {"status", "rx", "ry", "rz", "rho11", "check", "check_measured", "check_pass"})
        result.header.emplace_back(col);

    result.rows.resize(points.size());
    std::atomic<size_t> cursor{0};
    std::atomic<bool> had_error{false};

    auto worker = [&]() {
        while (true) {
            const size_t i = cursor.fetch_add(1);
            if (i >= points.size()) return;
            RawConfig raw = base;
            std::vector<std::string> row;
            for (size_t a = 0; a < axes.size(); ++a) {
                raw.set(axes[a].section, axes[a].key, points[i][a]);
                row.push_back(points[i][a]);
            }
            try {
                ScenarioConfig cfg = build_scenario_config(raw);
                cfg.write_csv = cfg.write_svg = cfg.write_summary = false;
                const RunArtifacts art = run_scenario(cfg);
                const BlochVector b = bloch_of(art.main.back().rho);
                row.push_back("ok");
                row.push_back(format_g17(b.rx));
                row.push_back(format_g17(b.ry));
                row.push_back(format_g17(b.rz));
                row.push_back(format_g17(std::real(art.main.back().rho.mat(0, 0))));
                if (!art.checks.empty()) {
                    row.push_back(art.checks.front().name);
                    row.push_back(format_g17(art.checks.front().measured));
                    row.push_back(art.checks.front().within_threshold ? "yes" : "no");
                } else {
                    row.push_back("none");
                    row.push_back("nan");
                    row.push_back("yes");
                }
            } catch (const UnsupportedConfigError& e) {
                row.resize(axes.size());
                std::string msg = e.what();
                std::replace(msg.begin(), msg.end(), ',', ';');
                row.push_back("unsupported: " + msg);
                for (int k = 0; k < 7; ++k) row.push_back("nan");
            } catch (const std::exception& e) {
                had_error = true;
                row.resize(axes.size());
                std::string msg = e.what();
                std::replace(msg.begin(), msg.end(), ',', ';');
                row.push_back("error: " + msg);
                for (int k = 0; k < 7; ++k) row.push_back("nan");
            }
            result.rows[i] = std::move(row);
        }
    };

    if (jobs < 1) jobs = 1;
    jobs = static_cast<int>(
        std::min<size_t>(static_cast<size_t>(jobs), points.size() ? points.size() : 1));
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    result.had_error = had_error.load();
    return result;
}

}  // namespace dmme
