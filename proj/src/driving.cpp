#include "dmme/driving.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dmme {

namespace {

// Fritsch-Carlson monotone cubic slopes: no overshoot between samples.
std::vector<double> pchip_slopes(const std::vector<double>& t, const std::vector<double>& y) {
    const size_t n = t.size();
    std::vector<double> d(n, 0.0);
    if (n == 1) return d;
    std::vector<double> h(n - 1), s(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = t[i + 1] - t[i];
        s[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        d[0] = d[1] = s[0];
        return d;
    }
    for (size_t i = 1; i + 1 < n; ++i) {
        if (s[i - 1] * s[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d[i] = (w1 + w2) / (w1 / s[i - 1] + w2 / s[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double s0, double s1) {
        double d0 = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if (d0 * s0 <= 0.0)
            d0 = 0.0;
        else if (s0 * s1 <= 0.0 && std::abs(d0) > 3.0 * std::abs(s0))
            d0 = 3.0 * s0;
        return d0;
    };
    d[0] = end_slope(h[0], h[1], s[0], s[1]);
    d[n - 1] = end_slope(h[n - 2], h[n - 3], s[n - 2], s[n - 3]);
    return d;
}

double pchip_eval(const std::vector<double>& t, const std::vector<double>& y,
                  const std::vector<double>& d, double x) {
    const size_t n = t.size();
    size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        if (t[mid] <= x)
            lo = mid;
        else
            hi = mid;
    }
    const double h = t[lo + 1] - t[lo];
    const double s = (x - t[lo]) / h;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    return h00 * y[lo] + h10 * h * d[lo] + h01 * y[lo + 1] + h11 * h * d[lo + 1];
}

}  // namespace

struct Protocol::Impl {
    ProtocolFamily family;
    double t0 = 0.0;
    double t1 = 0.0;
    double delta0 = 0.0;
    double omega0 = 0.0;
    double drive_freq = 0.0;
    double v = 0.0;
    // tabulated data
    std::vector<double> tab_t, tab_delta, tab_omega, tab_ddelta, tab_domega;
    double fd_step = 0.0;
    mutable double cached_max_omega = -1.0;

    void check_window(double t) const {
        const double tol = 1e-9 * std::max(1.0, t1 - t0);
        if (t < t0 - tol || t > t1 + tol)
            throw std::out_of_range("time " + std::to_string(t) + " outside protocol window [" +
                                    std::to_string(t0) + ", " + std::to_string(t1) + "]");
    }

    ProtocolSample eval(double t) const {
        check_window(t);
        switch (family) {
            case ProtocolFamily::constant:
                return {delta0, omega0, 0.0, 0.0};
            case ProtocolFamily::sine_squared: {
                const double s = std::sin(drive_freq * t);
                const double c = std::cos(drive_freq * t);
                return {delta0, omega0 * s * s, 0.0, 2.0 * omega0 * drive_freq * s * c};
            }
            case ProtocolFamily::landau_zener:
                return {0.5 * v * t, 0.5 * omega0, 0.5 * v, 0.0};
            case ProtocolFamily::tabulated: {
                const double tc = std::clamp(t, t0, t1);
                const double dv = pchip_eval(tab_t, tab_delta, tab_ddelta, tc);
                const double ov = pchip_eval(tab_t, tab_omega, tab_domega, tc);
                const double h = fd_step;
                const double tm = std::max(t0, tc - h);
                const double tp = std::min(t1, tc + h);
                const double dd = (pchip_eval(tab_t, tab_delta, tab_ddelta, tp) -
                                   pchip_eval(tab_t, tab_delta, tab_ddelta, tm)) /
                                  (tp - tm);
                const double od = (pchip_eval(tab_t, tab_omega, tab_domega, tp) -
                                   pchip_eval(tab_t, tab_omega, tab_domega, tm)) /
                                  (tp - tm);
                return {dv, ov, dd, od};
            }
        }
        throw std::logic_error("unreachable");
    }
};

Protocol Protocol::constant(double delta0, double omega0, double t_start, double t_end) {
    if (!(t_end > t_start)) throw std::invalid_argument("protocol window must be non-empty");
    auto impl = std::make_shared<Impl>();
    impl->family = ProtocolFamily::constant;
    impl->delta0 = delta0;
    impl->omega0 = omega0;
    impl->t0 = t_start;
    impl->t1 = t_end;
    return Protocol(impl);
}

Protocol Protocol::sine_squared(double delta0, double omega0, double drive_freq, double t_start,
                                double t_end) {
    if (!(t_end > t_start)) throw std::invalid_argument("protocol window must be non-empty");
    auto impl = std::make_shared<Impl>();
    impl->family = ProtocolFamily::sine_squared;
    impl->delta0 = delta0;
    impl->omega0 = omega0;
    impl->drive_freq = drive_freq;
    impl->t0 = t_start;
    impl->t1 = t_end;
    return Protocol(impl);
}

Protocol Protocol::landau_zener(double v, double omega0, double window_scale) {
    if (!(v > 0.0)) throw std::invalid_argument("sweep velocity must be positive");
    if (!(window_scale > 0.0)) throw std::invalid_argument("window scale must be positive");
    auto impl = std::make_shared<Impl>();
    impl->family = ProtocolFamily::landau_zener;
    impl->v = v;
    impl->omega0 = omega0;
    const double T = window_scale / std::sqrt(v);
    impl->t0 = -T;
    impl->t1 = T;
    return Protocol(impl);
}

Protocol Protocol::tabulated(std::vector<double> times, std::vector<double> deltas,
                             std::vector<double> omegas) {
    if (times.size() < 4) throw std::invalid_argument("tabulated protocol needs >= 4 samples");
    if (times.size() != deltas.size() || times.size() != omegas.size())
        throw std::invalid_argument("tabulated protocol columns have mismatched lengths");
    for (size_t i = 0; i + 1 < times.size(); ++i)
        if (!(times[i + 1] > times[i]))
            throw std::invalid_argument("tabulated protocol times must be strictly increasing");
    for (size_t i = 0; i < times.size(); ++i)
        if (!std::isfinite(deltas[i]) || !std::isfinite(omegas[i]))
            throw std::invalid_argument("tabulated protocol values must be finite");
    auto impl = std::make_shared<Impl>();
    impl->family = ProtocolFamily::tabulated;
    impl->t0 = times.front();
    impl->t1 = times.back();
    impl->fd_step = 1e-6 * (impl->t1 - impl->t0);
    impl->tab_ddelta = pchip_slopes(times, deltas);
    impl->tab_domega = pchip_slopes(times, omegas);
    impl->tab_t = std::move(times);
    impl->tab_delta = std::move(deltas);
    impl->tab_omega = std::move(omegas);
    return Protocol(impl);
}

ProtocolSample Protocol::eval(double t) const { return impl_->eval(t); }

Mat2 Protocol::hamiltonian(double t) const {
    const auto s = impl_->eval(t);
    return s.delta * sigma_z() + s.omega * sigma_x();
}

ProtocolFamily Protocol::family() const { return impl_->family; }

std::string Protocol::family_name() const {
    switch (impl_->family) {
        case ProtocolFamily::constant: return "constant";
        case ProtocolFamily::sine_squared: return "sine-squared";
        case ProtocolFamily::landau_zener: return "landau-zener";
        case ProtocolFamily::tabulated: return "tabulated";
    }
    return "?";
}

double Protocol::t_start() const { return impl_->t0; }
double Protocol::t_end() const { return impl_->t1; }

double Protocol::sweep_velocity() const {
    if (impl_->family != ProtocolFamily::landau_zener)
        throw std::logic_error("sweep velocity is defined for the landau-zener family only");
    return impl_->v;
}

double Protocol::max_abs_omega() const {
    if (impl_->cached_max_omega >= 0.0) return impl_->cached_max_omega;
    double m = 0.0;
    const int n = 1001;
    for (int i = 0; i < n; ++i) {
        const double t = impl_->t0 + (impl_->t1 - impl_->t0) * i / (n - 1);
        m = std::max(m, std::abs(impl_->eval(t).omega));
    }
    impl_->cached_max_omega = m;
    return m;
}

}  // namespace dmme
