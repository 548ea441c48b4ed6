#include "dmme/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "dmme/errors.hpp"
#include "dmme/oracles.hpp"

namespace dmme {

namespace {

std::array<double, 8> pack(const Mat2& m) {
    return {m.e[0].real(), m.e[0].imag(), m.e[1].real(), m.e[1].imag(),
            m.e[2].real(), m.e[2].imag(), m.e[3].real(), m.e[3].imag()};
}

Mat2 unpack(const std::array<double, 8>& y) {
    return {cplx(y[0], y[1]), cplx(y[2], y[3]), cplx(y[4], y[5]), cplx(y[6], y[7])};
}

void fill_diagnostics(TrajectoryPoint& pt, Trajectory& traj) {
    const Mat2& m = pt.rho.mat;
    pt.trace_err = std::abs(trace(m) - cplx(1.0, 0.0));
    pt.herm_err = hermiticity_defect(m);
    const Mat2 h = 0.5 * (m + dagger(m));
    pt.min_eig = hermitian_eigenvalues(h)[0];
    traj.max_trace_err = std::max(traj.max_trace_err, pt.trace_err);
    traj.max_herm_err = std::max(traj.max_herm_err, pt.herm_err);
    traj.min_eigenvalue = std::min(traj.min_eigenvalue, pt.min_eig);
    if (pt.min_eig < -1e-6) traj.positivity_violated = true;
    if (pt.rates.negative_rate) traj.negative_rates = true;
}

std::vector<double> output_grid(double t0, double t1, int n) {
    if (n < 2) n = 2;
    std::vector<double> ts(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) ts[static_cast<size_t>(i)] = t0 + (t1 - t0) * i / (n - 1);
    return ts;
}

// Generator of the master equation for a given operator set and rate set.
Mat2 gkls_rhs(const Mat2& rho, const Mat2& ham, const LindbladSet& ops, const RateSet& rs,
              bool lamb, const Mat2& proj1, const Mat2& proj2) {
    Mat2 h = ham;
    if (lamb) {
        h = h + rs.lamb_plus * proj1 + rs.lamb_minus * proj2 + rs.lamb_d * (proj1 + proj2);
    }
    Mat2 d = cplx(0.0, -1.0) * commutator(h, rho);
    if (rs.gamma_plus != 0.0) {
        d = d + rs.gamma_plus * (ops.sigma_plus * rho * ops.sigma_minus -
                                 0.5 * anticommutator(ops.sigma_minus * ops.sigma_plus, rho));
    }
    if (rs.gamma_minus != 0.0) {
        d = d + rs.gamma_minus * (ops.sigma_minus * rho * ops.sigma_plus -
                                  0.5 * anticommutator(ops.sigma_plus * ops.sigma_minus, rho));
    }
    if (rs.gamma_d != 0.0) {
        d = d + rs.gamma_d * commutator(ops.sigma_z, commutator(rho, ops.sigma_z));
    }
    return d;
}

}  // namespace

LindbladSet lindblad_set(const LriFrame& frame, double t) {
    const auto [p1, p2] = frame.eigenstates(t);
    return {outer(p2, p1), outer(p1, p2), outer(p2, p2) - outer(p1, p1)};
}

Trajectory schrodinger_evolve(const Protocol& p, const Vec2& psi0, const OdeTolerances& tol,
                              int output_points) {
    if (std::abs(norm(psi0) - 1.0) > 1e-8)
        throw std::invalid_argument("initial state must be normalized");
    auto rhs = [&p](double t, const std::array<double, 4>& y) -> std::array<double, 4> {
        const Mat2 h = p.hamiltonian(t);
        const Vec2 psi{cplx(y[0], y[1]), cplx(y[2], y[3])};
        const Vec2 d = cplx(0.0, -1.0) * (h * psi);
        return {d.c1.real(), d.c1.imag(), d.c2.real(), d.c2.imag()};
    };
    auto sol = integrate_adaptive<4>(rhs, {psi0.c1.real(), psi0.c1.imag(), psi0.c2.real(),
                                           psi0.c2.imag()},
                                     p.t_start(), p.t_end(), tol);
    Trajectory traj;
    for (double t : output_grid(p.t_start(), p.t_end(), output_points)) {
        const auto y = sol.eval(t);
        const Vec2 psi{cplx(y[0], y[1]), cplx(y[2], y[3])};
        TrajectoryPoint pt;
        pt.t = t;
        pt.psi = psi;
        pt.rho = DensityMatrix::unchecked(outer(psi, psi));
        fill_diagnostics(pt, traj);
        traj.points.push_back(std::move(pt));
    }
    return traj;
}

Trajectory dmme_evolve(const LriFrame& frame, const CouplingEvaluator& coeffs,
                       const BathSpec& bath, const DensityMatrix& rho0,
                       const EvolveOptions& opts) {
    bath.validate();
    const double t0 = frame.t_start();

    // Memory-kernel rates are too expensive for per-step evaluation; build an
    // interpolation grid fine enough for both the alpha oscillations and the
    // 1/Omega_c rise of the kernel. Closed-form sources are evaluated directly.
    std::vector<double> grid_t;
    std::vector<RateSet> grid_r;
    if (opts.source == RateSource::memory_kernel) {
        double alpha_max = 1.0;
        for (int i = 0; i <= 200; ++i) {
            const double t = t0 + (frame.t_end() - t0) * i / 200.0;
            const auto al = coeffs.frequencies_checked(t);
            if (!al.degenerate_x) alpha_max = std::max(alpha_max, std::abs(al.alpha12_x));
            if (!al.degenerate_y) alpha_max = std::max(alpha_max, std::abs(al.alpha12_y));
        }
        const double span = frame.t_end() - t0;
        double dt = std::min({2.0 * M_PI / alpha_max / 50.0, 1.0 / (20.0 * bath.omega_c),
                              span / 200.0});
        const int n = std::min(20000, static_cast<int>(std::ceil(span / dt)) + 1);
        for (int i = 0; i <= n; ++i) {
            const double t = t0 + span * i / n;
            grid_t.push_back(t);
            grid_r.push_back(memory_kernel_rate_set(coeffs, bath, t, opts.s_max, opts.channels,
                                                    opts.convention));
        }
    }

    auto rates_at = [&](double t) -> RateSet {
        switch (opts.source) {
            case RateSource::slow_phase:
                return slow_phase_rates(coeffs, bath, t, opts.channels, opts.convention);
            case RateSource::lz:
                return lz_rates(coeffs, bath, t, opts.channels.x && !opts.channels.y
                                                     ? Channel::x
                                                     : Channel::y);
            case RateSource::dephasing: {
                RateSet r = dephasing_rate_set(bath, t - t0);
                r.t = t;
                const auto al = coeffs.frequencies_checked(t);
                r.alpha12_x = al.alpha12_x;
                r.alpha12_y = al.alpha12_y;
                return r;
            }
            case RateSource::memory_kernel: {
                // piecewise-linear interpolation on the precomputed grid
                const auto it = std::upper_bound(grid_t.begin(), grid_t.end(), t);
                size_t i = static_cast<size_t>(std::distance(grid_t.begin(), it));
                if (i == 0) return grid_r.front();
                if (i >= grid_t.size()) return grid_r.back();
                const double w = (t - grid_t[i - 1]) / (grid_t[i] - grid_t[i - 1]);
                RateSet r = grid_r[i - 1];
                r.t = t;
                r.gamma_plus += w * (grid_r[i].gamma_plus - r.gamma_plus);
                r.gamma_minus += w * (grid_r[i].gamma_minus - r.gamma_minus);
                r.gamma_d += w * (grid_r[i].gamma_d - r.gamma_d);
                r.alpha12_x += w * (grid_r[i].alpha12_x - r.alpha12_x);
                r.alpha12_y += w * (grid_r[i].alpha12_y - r.alpha12_y);
                return r;
            }
        }
        throw std::logic_error("unreachable");
    };

    auto rhs = [&](double t, const std::array<double, 8>& y) -> std::array<double, 8> {
        const Mat2 rho = unpack(y);
        const auto [p1, p2] = frame.eigenstates(t);
        const LindbladSet ops{outer(p2, p1), outer(p1, p2), outer(p2, p2) - outer(p1, p1)};
        const RateSet rs = rates_at(t);
        return pack(gkls_rhs(rho, frame.protocol().hamiltonian(t), ops, rs, opts.lamb_shift,
                             outer(p1, p1), outer(p2, p2)));
    };

    auto sol = integrate_adaptive<8>(rhs, pack(rho0.mat), t0, frame.t_end(), opts.tol);

    Trajectory traj;
    for (double t : output_grid(t0, frame.t_end(), opts.output_points)) {
        TrajectoryPoint pt;
        pt.t = t;
        pt.rho = DensityMatrix::unchecked(unpack(sol.eval(t)));
        pt.rates = rates_at(t);
        fill_diagnostics(pt, traj);
        traj.points.push_back(std::move(pt));
    }
    return traj;
}

Trajectory ame_evolve(const Protocol& p, const BathSpec& bath, const DensityMatrix& rho0,
                      const OdeTolerances& tol, int output_points) {
    bath.validate();

    auto ops_and_rates = [&](double t, LindbladSet& ops, RateSet& rs, Mat2& pr1, Mat2& pr2) {
        const auto s = p.eval(t);
        const double bar = std::hypot(s.delta, s.omega);
        if (bar < 1e-12) throw DegenerateHamiltonianError(t);
        const LriInit a = adiabatic_init(s.delta, s.omega);
        const double ce = std::cos(a.eta0);
        const double se = std::sin(a.eta0);
        const Vec2 p1{ce, se};
        const Vec2 p2{se, -ce};
        ops = {outer(p2, p1), outer(p1, p2), outer(p2, p2) - outer(p1, p1)};
        pr1 = outer(p1, p1);
        pr2 = outer(p2, p2);
        rs.t = t;
        const double alpha = 2.0 * bar;
        rs.alpha12_x = rs.alpha12_y = alpha;
        rs.gamma_minus = 2.0 * lambda_real(bath, alpha);
        rs.gamma_plus = 2.0 * lambda_real(bath, -alpha);
        rs.gamma_d = 0.0;
    };

    auto rhs = [&](double t, const std::array<double, 8>& y) -> std::array<double, 8> {
        LindbladSet ops;
        RateSet rs;
        Mat2 pr1, pr2;
        ops_and_rates(t, ops, rs, pr1, pr2);
        return pack(gkls_rhs(unpack(y), p.hamiltonian(t), ops, rs, false, pr1, pr2));
    };

    auto sol = integrate_adaptive<8>(rhs, pack(rho0.mat), p.t_start(), p.t_end(), tol);

    Trajectory traj;
    for (double t : output_grid(p.t_start(), p.t_end(), output_points)) {
        TrajectoryPoint pt;
        pt.t = t;
        pt.rho = DensityMatrix::unchecked(unpack(sol.eval(t)));
        LindbladSet ops;
        Mat2 pr1, pr2;
        ops_and_rates(t, ops, pt.rates, pr1, pr2);
        fill_diagnostics(pt, traj);
        traj.points.push_back(std::move(pt));
    }
    return traj;
}

Trajectory dephasing_exact(const LriFrame& frame, const BathSpec& bath,
                           const DensityMatrix& rho0, int output_points) {
    if (bath.temperature > 0.0)
        throw UnsupportedConfigError("exact dephasing solution requires zero temperature");
    const double t0 = frame.t_start();
    const auto [q1, q2] = frame.eigenstates(t0);
    // Initial state in the dressed basis.
    const Vec2 r1{rho0.mat * q1};
    const Vec2 r2{rho0.mat * q2};
    const cplx m11 = inner(q1, r1);
    const cplx m22 = inner(q2, r2);
    const cplx m12 = inner(q1, r2);

    Trajectory traj;
    for (double t : output_grid(t0, frame.t_end(), output_points)) {
        const double decay = std::exp(-dephasing_gamma_e(bath, t - t0));
        const cplx m12t = m12 * decay;
        const Mat2 rho_tilde = m11 * outer(q1, q1) + m22 * outer(q2, q2) +
                               m12t * outer(q1, q2) + std::conj(m12t) * outer(q2, q1);
        const Mat2 u = frame.propagator(t);
        TrajectoryPoint pt;
        pt.t = t;
        pt.rho = DensityMatrix::unchecked(u * rho_tilde * dagger(u));
        fill_diagnostics(pt, traj);
        traj.points.push_back(std::move(pt));
    }
    return traj;
}

Protocol make_inertial_protocol(double mu, double omega_bar, double beta0, double t_start,
                                double t_end, int table_points) {
    if (!(omega_bar > 0.0)) throw std::invalid_argument("omega_bar must be positive");
    std::vector<double> ts, ds, os;
    ts.reserve(static_cast<size_t>(table_points));
    for (int i = 0; i < table_points; ++i) {
        const double t = t_start + (t_end - t_start) * i / (table_points - 1);
        const double beta = beta0 - 2.0 * mu * omega_bar * (t - t_start);
        ts.push_back(t);
        ds.push_back(omega_bar * std::cos(beta));
        os.push_back(omega_bar * std::sin(beta));
    }
    return Protocol::tabulated(std::move(ts), std::move(ds), std::move(os));
}

InertialReport inertial_consistency(const Protocol& p, double mu, int samples) {
    InertialReport rep;
    rep.mu = mu;
    rep.samples = samples;
    const double kbar = std::sqrt(1.0 + mu * mu);
    for (int i = 0; i < samples; ++i) {
        const double t = p.t_start() + (p.t_end() - p.t_start()) * i / (samples - 1);
        const auto s = p.eval(t);
        const double bar = std::hypot(s.delta, s.omega);
        if (bar < 1e-12) throw DegenerateHamiltonianError(t);
        const double mu_t = (s.omega * s.ddelta - s.delta * s.domega) / (2.0 * bar * bar * bar);
        rep.max_mu_drift = std::max(rep.max_mu_drift, std::abs(mu_t - mu));
    }
    if (rep.max_mu_drift > 1e-6) throw ProtocolNotInertialError(rep.max_mu_drift);

    for (int i = 0; i < samples; ++i) {
        const double t = p.t_start() + (p.t_end() - p.t_start()) * i / (samples - 1);
        const auto s = p.eval(t);
        const double bar = std::hypot(s.delta, s.omega);
        const double mb = mu * bar;
        const double q = std::sqrt(mb * mb + s.omega * s.omega);

        const double zeta = -std::atan2(mb, s.omega);
        const double eta =
            std::acos(std::clamp(-std::sqrt(0.5 * (kbar * bar - s.delta) / (kbar * bar)),
                                 -1.0, 1.0));
        const double zeta_dot = -2.0 * mb * mb * s.delta / (q * q);
        const double eta_dot = -mu * s.omega * bar / q;

        const double s2e = std::sin(2.0 * eta);
        const double c2e = std::cos(2.0 * eta);
        const double r1 = eta_dot - s.omega * std::sin(zeta);
        const double r2 =
            s2e * (2.0 * s.delta + zeta_dot) - 2.0 * s.omega * c2e * std::cos(zeta);
        rep.max_residual = std::max({rep.max_residual, std::abs(r1), std::abs(r2)});

        // Sigma_z = (Omega sx + mu bar sy + Delta sz)/(kbar bar): its +/-
        // eigenvectors must coincide with the parameterized states.
        const double nx = s.omega / (kbar * bar);
        const double ny = mb / (kbar * bar);
        const double nz = s.delta / (kbar * bar);
        const double theta = std::acos(std::clamp(nz, -1.0, 1.0));
        const double phi = std::atan2(ny, nx);
        const cplx eph = std::exp(iu * phi);
        const Vec2 v_plus{std::cos(0.5 * theta), eph * std::sin(0.5 * theta)};
        const Vec2 v_minus{std::sin(0.5 * theta), -eph * std::cos(0.5 * theta)};

        const cplx zph = std::exp(iu * zeta);
        const Vec2 psi1{std::cos(eta) * zph, std::sin(eta)};
        const Vec2 psi2{std::sin(eta) * zph, -std::cos(eta)};
        rep.min_overlap = std::min(rep.min_overlap, std::abs(inner(v_plus, psi2)));
        rep.min_overlap = std::min(rep.min_overlap, std::abs(inner(v_minus, psi1)));
    }
    return rep;
}

}  // namespace dmme
