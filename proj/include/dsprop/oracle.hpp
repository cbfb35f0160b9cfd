#ifndef DSPROP_ORACLE_HPP
#define DSPROP_ORACLE_HPP

// Independent verification path: the mode equations integrated directly as
// ODEs with an embedded Dormand-Prince 5(4) pair, plus a finite-difference
// residual check on sampled trajectories. Deliberately shares nothing with
// the kernel-transform solvers except the gamma matrices, so agreement
// between the two routes is meaningful evidence.

#include <functional>
#include <vector>

#include "dsprop/clifford.hpp"
#include "dsprop/wave.hpp" // Point3

namespace dsprop {

struct ODESpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double initial_step = 1e-3;
    long max_steps = 2000000;
};

// Generic adaptive integrator y' = f(t,y) from t0 to t1 (doubled-real state;
// complex systems pack re/im). Returns the final state.
std::vector<double> dopri5(
    const std::function<void(double, const std::vector<double>&, std::vector<double>&)>& rhs,
    std::vector<double> y0, double t0, double t1, const ODESpec& spec);

// u'' + e^{-2Hs} |xi|^2 u - M^2 u = source(s), u(0) = phi0, u'(0) = phi1.
// H = 0 gives the flat-space mode equation.
cx kg_mode_oracle(double H, cx M, double xi_abs, cx phi0, cx phi1,
                  const std::function<cx(double)>& source, double t, const ODESpec& spec = {});

// First-order 4x4 mode system
//   i g0 Psi' - e^{-Hs} (xi . gamma) Psi + i (3H/2) g0 Psi - m Psi = F(s)
// solved for Psi' and integrated; Psi(0) = phi. H = 0 drops the expansion
// terms and gives the flat-space Dirac mode system.
SpinorValue dirac_mode_oracle(double H, cx m, const Point3& xi, const SpinorValue& phi,
                              const std::function<SpinorValue(double)>& source, double t,
                              const ODESpec& spec = {});

// Max-norm residual of the mode system over a uniformly sampled trajectory,
// with Psi' from the 4th-order centered 5-point stencil. Throws GridTooCoarse
// below 5 samples or on non-uniform spacing.
double residual_dirac_mode(double H, cx m, const Point3& xi, const std::vector<double>& ts,
                           const std::vector<SpinorValue>& psis,
                           const std::function<SpinorValue(double)>& source);

} // namespace dsprop

#endif
