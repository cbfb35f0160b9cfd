#include "dsprop/kg.hpp"

#include <cmath>
#include <stdexcept>

#include "dsprop/errors.hpp"

namespace dsprop {

namespace {

// Inner rule of an iterated double integral runs tighter than the outer one
// so the inner error behaves like one more outer integrand perturbation.
QuadratureSpec tightened(const QuadratureSpec& q) {
    QuadratureSpec inner = q;
    inner.abs_tol = q.abs_tol / 16.0;
    inner.rel_tol = q.rel_tol / 16.0;
    return inner;
}

void check_window(const char* who, double t, double T) {
    if (t < 0.0 || t > T) throw std::domain_error(std::string(who) + ": t outside [0, T]");
}

} // namespace

cx kg_solve_mode(const KGProblem& p, double t, const QuadratureSpec& q) {
    if (!(p.H > 0.0))
        throw std::invalid_argument("kg_solve_mode: needs H > 0 (flat space has its own entry point)");
    check_window("kg_solve_mode", t, p.T);
    const KernelParams kp{p.H, p.M, {}};
    const Point3& xi = p.mode.xi;
    const double e = phi(p.H, t);

    cx u = std::exp(0.5 * p.H * t) * p.phi0 * mode_wave(xi, e);
    if (p.phi0 != cx{}) {
        const cx k0 = integrate_to_cone(
                          [&](double s) { return kernel_K0(kp, s, t) * mode_wave(xi, s); }, e, q)
                          .value;
        u += 2.0 * p.phi0 * k0;
    }
    if (p.phi1 != cx{}) {
        const cx k1 = integrate_to_cone(
                          [&](double s) { return kernel_K1(kp, s, t) * mode_wave(xi, s); }, e, q)
                          .value;
        u += 2.0 * p.phi1 * k1;
    }
    if (p.source) {
        const QuadratureSpec qin = tightened(q);
        const cx g = integrate_gk(
                         [&](double b) {
                             const double ep = e - phi(p.H, b);
                             const cx inner =
                                 integrate_to_cone(
                                     [&](double r) { return kernel_E(kp, r, t, b) * mode_wave(xi, r); },
                                     ep, qin)
                                     .value;
                             return inner * p.source(b);
                         },
                         0.0, t, q)
                         .value;
        u += 2.0 * g;
    }
    return u;
}

cx kg_solve_mode_minkowski(const KGProblem& p, double t, const QuadratureSpec& q) {
    if (p.H != 0.0) throw std::invalid_argument("kg_solve_mode_minkowski: needs H = 0");
    check_window("kg_solve_mode_minkowski", t, p.T);
    const Point3& xi = p.mode.xi;

    cx u = p.phi0 * mode_wave(xi, t);
    if (p.phi0 != cx{}) {
        const cx k0 = integrate_gk(
                          [&](double r) { return kernel_mink_K0(p.M, t, r) * mode_wave(xi, r); },
                          0.0, t, q)
                          .value;
        u -= p.phi0 * k0;
    }
    if (p.phi1 != cx{}) {
        const cx k1 = integrate_gk(
                          [&](double r) { return kernel_mink_I0(p.M, t, 0.0, r) * mode_wave(xi, r); },
                          0.0, t, q)
                          .value;
        u += p.phi1 * k1;
    }
    if (p.source) {
        const QuadratureSpec qin = tightened(q);
        u += integrate_gk(
                 [&](double b) {
                     const cx inner =
                         integrate_gk(
                             [&](double r) { return kernel_mink_I0(p.M, t, b, r) * mode_wave(xi, r); },
                             0.0, t - b, qin)
                             .value;
                     return inner * p.source(b);
                 },
                 0.0, t, q)
                 .value;
    }
    return u;
}

std::array<cx, 4> kg_solve_diagonal(const std::array<KGProblem, 4>& problems, double t,
                                    const QuadratureSpec& q) {
    const double H = problems[0].H;
    const Point3& xi = problems[0].mode.xi;
    for (const KGProblem& p : problems) {
        if (p.H != H || p.mode.xi != xi)
            throw std::invalid_argument("kg_solve_diagonal: problems must share H and the mode");
    }
    const double scale = 1.0 + std::abs(problems[0].M);
    if (std::abs(problems[0].M - problems[1].M) > 1e-12 * scale ||
        std::abs(problems[2].M - problems[3].M) > 1e-12 * scale ||
        std::abs(problems[0].M + problems[2].M - cx(H)) > 1e-12 * scale)
        throw std::invalid_argument("kg_solve_diagonal: masses must be (M+, M+, M-, M-)");

    std::array<cx, 4> out;
    for (std::size_t j = 0; j < 4; ++j)
        out[j] = (H > 0.0) ? kg_solve_mode(problems[j], t, q)
                           : kg_solve_mode_minkowski(problems[j], t, q);
    return out;
}

cx kg_fundsol_action_1d(const KernelParams& p, double t, double t0,
                        const std::function<cx(double)>& testfn, double x0,
                        const QuadratureSpec& q) {
    if (!(p.H > 0.0)) throw std::invalid_argument("kg_fundsol_action_1d: needs H > 0");
    if (t == t0) return cx{};
    const double ds = phi(p.H, t) - phi(p.H, t0);
    const double sgn = ds > 0.0 ? 1.0 : -1.0;
    const cx bulk = integrate_to_cone(
                        [&](double r) {
                            return kernel_E(p, r, t, t0) * (testfn(x0 + r) + testfn(x0 - r));
                        },
                        std::abs(ds), q)
                        .value;
    return sgn * bulk;
}

cx kg_fundsol_action_dt_1d(const KernelParams& p, double t, double t0,
                           const std::function<cx(double)>& testfn, double x0,
                           const QuadratureSpec& q) {
    if (!(p.H > 0.0)) throw std::invalid_argument("kg_fundsol_action_dt_1d: needs H > 0");
    if (t == t0) throw DegenerateInterval("kg_fundsol_action_dt_1d: t = t0");
    const double ds = phi(p.H, t) - phi(p.H, t0);
    const double sgn = ds > 0.0 ? 1.0 : -1.0;
    const double len = std::abs(ds);
    // d/dt [sgn * int_0^{len}] = sgn * (dlen/dt * integrand(len) + bulk) and
    // dlen/dt = sgn * e^{-Ht}, so the boundary term always enters with +.
    const cx boundary = std::exp(-p.H * t) * kernel_E_boundary(p, t, t0) *
                        (testfn(x0 + len) + testfn(x0 - len));
    const cx bulk = integrate_to_cone(
                        [&](double r) {
                            return kernel_E_dt(p, r, t, t0) * (testfn(x0 + r) + testfn(x0 - r));
                        },
                        len, q)
                        .value;
    return boundary + sgn * bulk;
}

} // namespace dsprop
