#ifndef DSPROP_KG_HPP
#define DSPROP_KG_HPP

// Klein-Gordon Cauchy solvers for a single Fourier mode,
//
//   u'' + e^{-2Ht} |xi|^2 u - M^2 u = source(t),  u(0) = phi0, u'(0) = phi1,
//
// on the expanding background (H > 0, hypergeometric kernels) and in flat
// space (H = 0, Bessel kernels), plus the 4-component diagonal wrapper the
// squared Dirac system reduces to, and the 1d fundamental-solution action.

#include <array>
#include <functional>

#include "dsprop/kernels.hpp"
#include "dsprop/quadrature.hpp"
#include "dsprop/wave.hpp"

namespace dsprop {

struct KGProblem {
    double H = 1.0;
    cx M = cx(0.5, 0.0);
    FourierMode mode{};
    cx phi0{};                      // initial value amplitude
    cx phi1{};                      // initial velocity amplitude
    std::function<cx(double)> source; // amplitude b -> f(b); absent: homogeneous
    double T = 16.0;                // time horizon; solves require 0 <= t <= T
};

// Integral-transform solution on the expanding background,
//   u(t) = 2 int_0^t db int_0^{phi(t)-phi(b)} E(r,t;0,b;M) source(b) cos(r|xi|) dr
//        + e^{Ht/2} phi0 cos(phi(t)|xi|)
//        + 2 int_0^{phi(t)} K0(s,t;M) phi0 cos(s|xi|) ds
//        + 2 int_0^{phi(t)} K1(s,t;M) phi1 cos(s|xi|) ds.
// Requires H > 0. t = 0 returns phi0 exactly.
cx kg_solve_mode(const KGProblem& p, double t, const QuadratureSpec& q);

// Flat-space variant (requires H = 0):
//   u(t) = int_0^t db int_0^{t-b} I0(M sqrt((t-b)^2-r^2)) source(b) cos(r|xi|) dr
//        + phi0 cos(t|xi|)
//        - int_0^t [i M t / sqrt(t^2-r^2)] J1(i M sqrt(t^2-r^2)) phi0 cos(r|xi|) dr
//        + int_0^t I0(M sqrt(t^2-r^2)) phi1 cos(r|xi|) dr.
cx kg_solve_mode_minkowski(const KGProblem& p, double t, const QuadratureSpec& q);

// Componentwise solve of the diagonal 4-system with block masses
// (M+, M+, M-, M-). All four problems must share H and xi and the masses must
// pair up as split_masses demands (M[0] = M[1], M[2] = M[3], M+ + M- = H).
std::array<cx, 4> kg_solve_diagonal(const std::array<KGProblem, 4>& problems, double t,
                                    const QuadratureSpec& q);

// Action of the retarded (t > t0) or advanced (t < t0) scalar fundamental
// solution on a test function of the space variable, for one space dimension:
//   sgn(phi(t)-phi(t0)) * int_0^{|phi(t)-phi(t0)|} E(r,t;0,t0;M)
//                         (testfn(x0+r) + testfn(x0-r)) dr.
// t = t0 is the empty cone slice and returns 0.
cx kg_fundsol_action_1d(const KernelParams& p, double t, double t0,
                        const std::function<cx(double)>& testfn, double x0,
                        const QuadratureSpec& q);

// d/dt of kg_fundsol_action_1d (analytic: moving cone boundary plus the
// kernel's t-derivative under the integral). The Dirac fundamental-solution
// assembly consumes this for its first-order time part. Throws
// DegenerateInterval at t = t0 where the one-sided derivatives disagree.
cx kg_fundsol_action_dt_1d(const KernelParams& p, double t, double t0,
                           const std::function<cx(double)>& testfn, double x0,
                           const QuadratureSpec& q);

} // namespace dsprop

#endif
