#include "dsprop/dirac.hpp"

#include <cmath>
#include <stdexcept>

#include "dsprop/errors.hpp"

namespace dsprop {

namespace {

const cx kI(0.0, 1.0);

// Diagonal of g0; the sign each component picks up under i g0.
constexpr double kEta[4] = {1.0, 1.0, -1.0, -1.0};

QuadratureSpec tightened(const QuadratureSpec& q) {
    QuadratureSpec inner = q;
    inner.abs_tol = q.abs_tol / 16.0;
    inner.rel_tol = q.rel_tol / 16.0;
    return inner;
}

void check_window(const char* who, double t, double T) {
    if (t < 0.0 || t > T) throw std::domain_error(std::string(who) + ": t outside [0, T]");
}

// -e^{-Ht} ( i g0 Xd + e^{-Ht} * (spatial sign) (xi.gamma) X - i (H/2) g0 X + m X )
// shared by the curved assemblies; the flat one differs enough to stay inline.
SpinorValue assemble_outer(double H, double t, cx m, const GammaBasis& g, const Matrix4& xg,
                           const SpinorValue& X, const SpinorValue& Xd) {
    const double damp = std::exp(-H * t);
    const SpinorValue g0Xd = g.g0 * Xd;
    const SpinorValue xgX = xg * X;
    const SpinorValue g0X = g.g0 * X;
    SpinorValue psi;
    for (std::size_t j = 0; j < 4; ++j)
        psi[j] = -damp * (kI * g0Xd[j] - damp * xgX[j] - kI * (H / 2.0) * g0X[j] + m * X[j]);
    return psi;
}

} // namespace

SpinorValue dirac_solve_mode(const DiracModeProblem& p, double t, const QuadratureSpec& q,
                             DiracSolveStats* stats) {
    if (!(p.H > 0.0))
        throw std::invalid_argument("dirac_solve_mode: needs H > 0 (flat space has its own entry point)");
    check_window("dirac_solve_mode", t, p.T);
    static const GammaBasis g = standard_basis();
    const Matrix4 xg = spatial_gamma(g, p.xi);
    const auto [Mp, Mm] = split_masses(p.H, p.m);
    const cx block_mass[4] = {Mp, Mp, Mm, Mm};
    const double H = p.H;
    const double e = phi(H, t);
    const QuadratureSpec qin = tightened(q);

    SpinorValue X{}, Xd{};
    for (std::size_t j = 0; j < 4; ++j) {
        const bool has_phi = p.Phi[j] != cx{};
        const bool has_src = static_cast<bool>(p.F);
        if (!has_phi && !has_src) continue;

        const KernelParams kp{H, block_mass[j], {}};
        long* counter = nullptr;
        if (stats) counter = (j < 2) ? &stats->kernel_evals_mplus : &stats->kernel_evals_mminus;
        const auto count = [counter]() {
            if (counter) ++*counter;
        };

        if (has_phi) {
            const cx k1 = integrate_to_cone(
                              [&](double s) {
                                  count();
                                  return kernel_K1(kp, s, t) * mode_wave(p.xi, s);
                              },
                              e, q)
                              .value;
            // d/dt of the K1 transform: moving boundary (phi'(t) = e^{-Ht},
            // boundary value M-independent) plus the kernel t-derivative.
            const cx k1_dt =
                std::exp(-H * t) * kernel_E_boundary(kp, t, 0.0) * mode_wave(p.xi, e) +
                integrate_to_cone(
                    [&](double s) {
                        count();
                        return kernel_E_dt(kp, s, t, 0.0) * mode_wave(p.xi, s);
                    },
                    e, q)
                    .value;
            const cx amp = 2.0 * kI * kEta[j] * p.Phi[j];
            X[j] += amp * k1;
            Xd[j] += amp * k1_dt;
        }

        if (has_src) {
            X[j] += 2.0 * integrate_gk(
                              [&](double b) {
                                  const double ep = e - phi(H, b);
                                  const cx inner =
                                      integrate_to_cone(
                                          [&](double r) {
                                              count();
                                              return kernel_E(kp, r, t, b) * mode_wave(p.xi, r);
                                          },
                                          ep, qin)
                                          .value;
                                  return inner * std::exp(H * b) * p.F(b)[j];
                              },
                              0.0, t, q)
                              .value;
            // The b = t slice of G has an empty inner integral, so only the
            // inner moving boundary and the kernel t-derivative survive.
            Xd[j] += 2.0 * integrate_gk(
                               [&](double b) {
                                   const double ep = e - phi(H, b);
                                   const cx inner_dt =
                                       std::exp(-H * t) * kernel_E_boundary(kp, t, b) *
                                           mode_wave(p.xi, ep) +
                                       integrate_to_cone(
                                           [&](double r) {
                                               count();
                                               return kernel_E_dt(kp, r, t, b) * mode_wave(p.xi, r);
                                           },
                                           ep, qin)
                                           .value;
                                   return inner_dt * std::exp(H * b) * p.F(b)[j];
                               },
                               0.0, t, q)
                               .value;
        }
    }
    return assemble_outer(H, t, p.m, g, xg, X, Xd);
}

SpinorValue dirac_solve_mode_massless(const DiracModeProblem& p, double t,
                                      const QuadratureSpec& q) {
    if (p.m != cx{}) throw std::invalid_argument("dirac_solve_mode_massless: mass must vanish");
    if (!(p.H > 0.0)) throw std::invalid_argument("dirac_solve_mode_massless: needs H > 0");
    check_window("dirac_solve_mode_massless", t, p.T);
    static const GammaBasis g = standard_basis();
    const Matrix4 xg = spatial_gamma(g, p.xi);
    const double H = p.H;
    const double e = phi(H, t);
    const double axi = std::sqrt(p.xi[0] * p.xi[0] + p.xi[1] * p.xi[1] + p.xi[2] * p.xi[2]);
    const auto wsin = [axi](double s) { return axi > 0.0 ? std::sin(s * axi) / axi : s; };

    const double grow = std::exp(0.5 * H * t);
    SpinorValue Y{}, Yd{};
    for (std::size_t j = 0; j < 4; ++j) {
        cx src{}, src_dt{};
        if (p.F) {
            src = integrate_gk(
                      [&](double b) {
                          return wsin(e - phi(H, b)) * std::exp(1.5 * H * b) * p.F(b)[j];
                      },
                      0.0, t, q)
                      .value;
            src_dt = std::exp(-H * t) *
                     integrate_gk(
                         [&](double b) {
                             return std::cos((e - phi(H, b)) * axi) * std::exp(1.5 * H * b) *
                                    p.F(b)[j];
                         },
                         0.0, t, q)
                         .value;
        }
        const cx data = kI * kEta[j] * p.Phi[j];
        Y[j] = grow * (src + data * wsin(e));
        Yd[j] = 0.5 * H * Y[j] + grow * (src_dt + data * std::cos(e * axi) * std::exp(-H * t));
    }
    return assemble_outer(H, t, cx{}, g, xg, Y, Yd);
}

SpinorValue dirac_solve_mode_minkowski(const DiracModeProblem& p, double t,
                                       const QuadratureSpec& q) {
    if (p.H != 0.0) throw std::invalid_argument("dirac_solve_mode_minkowski: needs H = 0");
    check_window("dirac_solve_mode_minkowski", t, p.T);
    static const GammaBasis g = standard_basis();
    const Matrix4 xg = spatial_gamma(g, p.xi);
    const auto [Mp, Mm] = split_masses(0.0, p.m);
    const cx block_mass[2] = {Mp, Mm}; // block masses (i m, -i m)
    const QuadratureSpec qin = tightened(q);

    // Q(t,b) = int_0^{t-b} I0(M sqrt((t-b)^2 - r^2)) cos(r|xi|) dr and its
    // t-derivative cos((t-b)|xi|) + int_0^{t-b} M^2 (t-b) [I1(w)/w] cos(r|xi|) dr.
    const auto kernel_int = [&](cx M, double b) {
        return integrate_gk(
                   [&](double r) { return kernel_mink_I0(M, t, b, r) * mode_wave(p.xi, r); }, 0.0,
                   t - b, qin)
            .value;
    };
    const auto kernel_int_dt = [&](cx M, double b) {
        const double tau = t - b;
        return cx(mode_wave(p.xi, tau)) +
               integrate_gk(
                   [&](double r) {
                       return M * M * tau * bessel_i1_over_w_from_w2(M * M * (tau * tau - r * r)) *
                              mode_wave(p.xi, r);
                   },
                   0.0, tau, qin)
                   .value;
    };

    SpinorValue X{}, Xd{};
    for (std::size_t j = 0; j < 4; ++j) {
        const cx M = block_mass[j / 2];
        const bool has_phi = p.Phi[j] != cx{};
        const bool has_src = static_cast<bool>(p.F);
        if (!has_phi && !has_src) continue;
        if (has_phi) {
            const cx data = kI * kEta[j] * p.Phi[j];
            X[j] += data * kernel_int(M, 0.0);
            Xd[j] += data * kernel_int_dt(M, 0.0);
        }
        if (has_src) {
            X[j] += integrate_gk([&](double b) { return kernel_int(M, b) * p.F(b)[j]; }, 0.0, t, q)
                        .value;
            Xd[j] +=
                integrate_gk([&](double b) { return kernel_int_dt(M, b) * p.F(b)[j]; }, 0.0, t, q)
                    .value;
        }
    }

    const SpinorValue g0Xd = g.g0 * Xd;
    const SpinorValue xgX = xg * X;
    SpinorValue psi;
    for (std::size_t j = 0; j < 4; ++j)
        psi[j] = -(kI * g0Xd[j] - xgX[j] + p.m * X[j]);
    return psi;
}

SpinorValue dirac_fundsol_action_1d(double H, cx m, double t, double t0, double x0,
                                    const SpinorTestFn1D& testfn, Propagator branch,
                                    const QuadratureSpec& q) {
    if (!(H > 0.0)) throw std::invalid_argument("dirac_fundsol_action_1d: needs H > 0");
    if (t == t0) throw DegenerateInterval("dirac_fundsol_action_1d: t = t0");
    if ((branch == Propagator::Retarded && t < t0) ||
        (branch == Propagator::Advanced && t > t0))
        return SpinorValue{}; // outside the branch's cone: identically zero

    static const GammaBasis g = standard_basis();
    const auto [Mp, Mm] = split_masses(H, m);
    const cx block_mass[4] = {Mp, Mp, Mm, Mm};

    SpinorValue T{}, Tp{}, D{};
    for (std::size_t j = 0; j < 4; ++j) {
        const KernelParams kp{H, block_mass[j], {}};
        T[j] = kg_fundsol_action_1d(kp, t, t0, testfn.comp[j].f, x0, q);
        Tp[j] = kg_fundsol_action_1d(kp, t, t0, testfn.comp[j].df, x0, q);
        D[j] = kg_fundsol_action_dt_1d(kp, t, t0, testfn.comp[j].f, x0, q);
    }

    // -e^{H t0} e^{-Ht} ( i g0 D + i e^{-Ht} g1 <d_x kernel, .> - i (H/2) g0 T + m T )
    // with <d_x kernel, f> = -<kernel, f'> = -Tp by transposition.
    const double damp = std::exp(-H * t);
    const double weight = std::exp(H * t0);
    const SpinorValue g0D = g.g0 * D;
    const SpinorValue g1Tp = g.g1 * Tp;
    const SpinorValue g0T = g.g0 * T;
    SpinorValue out;
    for (std::size_t j = 0; j < 4; ++j)
        out[j] = -weight * damp *
                 (kI * g0D[j] - kI * damp * g1Tp[j] - kI * (H / 2.0) * g0T[j] + m * T[j]);
    return out;
}

} // namespace dsprop
