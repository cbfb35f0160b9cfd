#include "dsprop/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "dsprop/errors.hpp"

namespace dsprop {

namespace {

// Dormand-Prince 5(4) tableau.
const double kA21 = 1.0 / 5.0;
const double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
const double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
const double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0, kA53 = 64448.0 / 6561.0,
             kA54 = -212.0 / 729.0;
const double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0, kA63 = 46732.0 / 5247.0,
             kA64 = 49.0 / 176.0, kA65 = -5103.0 / 18656.0;
const double kB1 = 35.0 / 384.0, kB3 = 500.0 / 1113.0, kB4 = 125.0 / 192.0,
             kB5 = -2187.0 / 6784.0, kB6 = 11.0 / 84.0;
const double kE1 = 35.0 / 384.0 - 5179.0 / 57600.0, kE3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
             kE4 = 125.0 / 192.0 - 393.0 / 640.0, kE5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
             kE6 = 11.0 / 84.0 - 187.0 / 2100.0, kE7 = -1.0 / 40.0;

} // namespace

std::vector<double> dopri5(
    const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& rhs,
    std::vector<double> y, double t0, double t1, const ODESpec& spec) {
    const std::size_t n = y.size();
    if (t1 == t0) return y;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::min(std::abs(spec.initial_step), std::abs(t1 - t0));

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n), ynew(n);
    long steps = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++steps > spec.max_steps) throw StepBudgetExceeded("dopri5: max_steps exceeded");
        if (dir * (t + h - t1) > 0.0) h = t1 - t;

        rhs(t, y, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * kA21 * k1[i];
        rhs(t + h / 5.0, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
        rhs(t + 3.0 * h / 10.0, tmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
        rhs(t + 4.0 * h / 5.0, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
        rhs(t + 8.0 * h / 9.0, tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] + kA64 * k4[i] +
                                 kA65 * k5[i]);
        rhs(t + h, tmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] + kB5 * k5[i] +
                                  kB6 * k6[i]);
        rhs(t + h, ynew, k7);

        double errnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                                  kE6 * k6[i] + kE7 * k7[i]);
            const double scale =
                spec.abs_tol + spec.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            errnorm = std::max(errnorm, std::abs(e) / scale);
        }
        if (errnorm <= 1.0) {
            t += h;
            y.swap(ynew);
        }
        const double factor =
            std::clamp(0.9 * std::pow(std::max(errnorm, 1e-12), -0.2), 0.2, 5.0);
        h *= factor;
    }
    return y;
}

cx kg_mode_oracle(double H, cx M, double xi_abs, cx phi0, cx phi1,
                  const std::function<cx(double)>& source, double t, const ODESpec& spec) {
    auto rhs = [&](double s, const std::vector<double>& y, std::vector<double>& dy) {
        const cx u(y[0], y[1]);
        const cx du(y[2], y[3]);
        cx dd = M * M * u - std::exp(-2.0 * H * s) * xi_abs * xi_abs * u;
        if (source) dd += source(s);
        dy[0] = du.real();
        dy[1] = du.imag();
        dy[2] = dd.real();
        dy[3] = dd.imag();
    };
    const std::vector<double> yf =
        dopri5(rhs, {phi0.real(), phi0.imag(), phi1.real(), phi1.imag()}, 0.0, t, spec);
    return cx(yf[0], yf[1]);
}

SpinorValue dirac_mode_oracle(double H, cx m, const Point3& xi, const SpinorValue& phi,
                              const std::function<SpinorValue(double)>& source, double t,
                              const ODESpec& spec) {
    static const GammaBasis g = standard_basis();
    const Matrix4 xg = spatial_gamma(g, xi);
    const cx i(0.0, 1.0);
    auto rhs = [&](double s, const std::vector<double>& y, std::vector<double>& dy) {
        SpinorValue psi;
        for (int k = 0; k < 4; ++k)
            psi[static_cast<std::size_t>(k)] =
                cx(y[static_cast<std::size_t>(2 * k)], y[static_cast<std::size_t>(2 * k + 1)]);
        // Solve i g0 Psi' = F + e^{-Hs}(xi.gamma)Psi - i(3H/2) g0 Psi + m Psi
        // for Psi' using (g0)^2 = I.
        SpinorValue rhsv = xg * psi;
        const double damp = std::exp(-H * s);
        for (int k = 0; k < 4; ++k) {
            auto ks = static_cast<std::size_t>(k);
            rhsv[ks] = damp * rhsv[ks] + m * psi[ks];
        }
        if (source) {
            const SpinorValue f = source(s);
            for (int k = 0; k < 4; ++k) rhsv[static_cast<std::size_t>(k)] += f[static_cast<std::size_t>(k)];
        }
        SpinorValue dpsi = g.g0 * rhsv;
        for (int k = 0; k < 4; ++k) {
            auto ks = static_cast<std::size_t>(k);
            dpsi[ks] = -i * dpsi[ks] - 1.5 * H * psi[ks];
            dy[2 * ks] = dpsi[ks].real();
            dy[2 * ks + 1] = dpsi[ks].imag();
        }
    };
    std::vector<double> y0(8);
    for (int k = 0; k < 4; ++k) {
        y0[static_cast<std::size_t>(2 * k)] = phi[static_cast<std::size_t>(k)].real();
        y0[static_cast<std::size_t>(2 * k + 1)] = phi[static_cast<std::size_t>(k)].imag();
    }
    const std::vector<double> yf = dopri5(rhs, y0, 0.0, t, spec);
    SpinorValue out;
    for (int k = 0; k < 4; ++k)
        out[static_cast<std::size_t>(k)] =
            cx(yf[static_cast<std::size_t>(2 * k)], yf[static_cast<std::size_t>(2 * k + 1)]);
    return out;
}

double residual_dirac_mode(double H, cx m, const Point3& xi, const std::vector<double>& ts,
                           const std::vector<SpinorValue>& psis,
                           const std::function<SpinorValue(double)>& source) {
    const std::size_t n = ts.size();
    if (n < 5 || psis.size() != n) throw GridTooCoarse("residual_dirac_mode: need >= 5 uniform samples");
    const double h = ts[1] - ts[0];
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(ts[k] - ts[k - 1] - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw GridTooCoarse("residual_dirac_mode: non-uniform grid");

    static const GammaBasis g = standard_basis();
    const Matrix4 xg = spatial_gamma(g, xi);
    const cx i(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t k = 2; k + 2 < n; ++k) {
        SpinorValue dpsi;
        for (int c = 0; c < 4; ++c) {
            auto cs = static_cast<std::size_t>(c);
            dpsi[cs] = (psis[k - 2][cs] - 8.0 * psis[k - 1][cs] + 8.0 * psis[k + 1][cs] -
                        psis[k + 2][cs]) /
                       (12.0 * h);
        }
        const SpinorValue g0dpsi = g.g0 * dpsi;
        const SpinorValue gxipsi = xg * psis[k];
        const SpinorValue g0psi = g.g0 * psis[k];
        SpinorValue f{};
        if (source) f = source(ts[k]);
        const double damp = std::exp(-H * ts[k]);
        for (int c = 0; c < 4; ++c) {
            auto cs = static_cast<std::size_t>(c);
            const cx res = i * g0dpsi[cs] - damp * gxipsi[cs] + i * 1.5 * H * g0psi[cs] -
                           m * psis[k][cs] - f[cs];
            worst = std::max(worst, std::abs(res));
        }
    }
    return worst;
}

} // namespace dsprop
