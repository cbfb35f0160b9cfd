#ifndef DSPROP_DIRAC_HPP
#define DSPROP_DIRAC_HPP

// Dirac Cauchy solvers for a single Fourier mode of
//
//   i g0 psi' - e^{-Ht} (xi.gamma) psi + i (3H/2) g0 psi - m psi = F,
//
// i.e. the spatial derivative already replaced by i xi_k. The solver squares
// the operator into a diagonal Klein-Gordon system with block masses
// M+- = H/2 +- i m, propagates the blocks through the kernel transforms, and
// applies the conjugate first-order operator. Also: the massless closed-form
// path, the flat-space (H = 0) variant, and the action of the retarded /
// advanced fundamental solution on 1d test functions.

#include <array>
#include <functional>

#include "dsprop/clifford.hpp"
#include "dsprop/kernels.hpp"
#include "dsprop/kg.hpp"
#include "dsprop/quadrature.hpp"
#include "dsprop/wave.hpp"

namespace dsprop {

struct DiracModeProblem {
    double H = 1.0;
    cx m{};                                 // mass; complex allowed
    Point3 xi{{0.0, 0.0, 0.0}};
    SpinorValue Phi{};                      // initial datum amplitude
    std::function<SpinorValue(double)> F;   // source amplitude; absent: none
    double T = 16.0;
};

// Counts of scalar kernel evaluations per diagonal block mass. Components 0,1
// ride on M+ and 2,3 on M-, so data confined to one block must leave the
// other counter at zero.
struct DiracSolveStats {
    long kernel_evals_mplus = 0;
    long kernel_evals_mminus = 0;
};

// Transform solution on the expanding background (requires H > 0):
//   X_j  = G_{M_j}[e^{Hb} F_j] + i eta_j K1op_{M_j}[Phi_j],  eta = diag g0,
//   psi  = -e^{-Ht} ( i g0 X' - e^{-Ht} (xi.gamma) X - i (H/2) g0 X + m X ),
// with X' computed analytically (kernel t-derivatives plus moving-boundary
// terms). t = 0 reproduces Phi exactly.
SpinorValue dirac_solve_mode(const DiracModeProblem& p, double t, const QuadratureSpec& q,
                             DiracSolveStats* stats = nullptr);

// Massless closed-form path (requires m = 0, H > 0): the kernel transforms
// collapse to sin/cos in phi(t) - phi(b), no quadrature in r.
SpinorValue dirac_solve_mode_massless(const DiracModeProblem& p, double t,
                                      const QuadratureSpec& q);

// Flat-space variant (requires H = 0): block masses (i m, -i m), Bessel
// kernels, no factor 2 and no e^{Hb} weight, outer operator
// -(i g0 d/dt - (xi.gamma) + m I).
SpinorValue dirac_solve_mode_minkowski(const DiracModeProblem& p, double t,
                                       const QuadratureSpec& q);

// A scalar test function of the space variable together with its derivative;
// the fundamental-solution action moves the spatial derivative of the
// distribution kernel onto the test function by transposition.
struct TestFn1D {
    std::function<cx(double)> f;
    std::function<cx(double)> df;
};

// Spinor-valued test function on the line, component functions with
// derivatives.
struct SpinorTestFn1D {
    std::array<TestFn1D, 4> comp;
};

enum class Propagator { Retarded, Advanced };

// Action of the retarded or advanced Dirac fundamental solution anchored at
// (x0, t0) on a spinor test function of x (one space dimension):
//   -e^{H t0} e^{-Ht} ( i g0 D - i e^{-Ht} g1 T' - i (H/2) g0 T + m T )
// where T, T', D are the per-block scalar fundamental-solution actions of the
// test components, their derivatives (with the transposition sign), and the
// analytic t-derivative. Outside the branch's support (retarded with t < t0,
// advanced with t > t0) the result is exactly zero; t = t0 throws
// DegenerateInterval.
SpinorValue dirac_fundsol_action_1d(double H, cx m, double t, double t0, double x0,
                                    const SpinorTestFn1D& testfn, Propagator branch,
                                    const QuadratureSpec& q);

} // namespace dsprop

#endif
