#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "dsprop/clifford.hpp"

namespace dsprop {

// Pointwise verification of operator factorization identities for the
// expanding-spacetime Dirac operator with generalized spatial derivations.
//
// Everything here works with exact 2-jets: a test function is carried as its
// value together with all first and second partial derivatives at a point, so
// composing two first-order operators and comparing against the closed-form
// second-order right-hand side costs no finite differencing and the residuals
// are pure roundoff when an identity holds.
//
// Coordinates are q = (t, q1, q2, q3) where t is cosmological time and
// (q1, q2, q3) are the spatial chart coordinates (Cartesian, cylindrical,
// spherical, ...).

using Coord = std::array<double, 4>;

// Value plus first partials of a scalar function at a point.
struct Jet1 {
    cx v{};
    std::array<cx, 4> d{};
};

// Value, first partials, and (symmetric) second partials.
struct Jet2 {
    cx v{};
    std::array<cx, 4> d{};
    std::array<std::array<cx, 4>, 4> dd{};
};

// Scalar coefficient function together with its first partials, evaluated on
// demand. A default-constructed (empty) CoefFn means the coefficient is
// identically zero.
using CoefFn = std::function<Jet1(const Coord&)>;

// First-order scalar operator  sum_mu c[mu](q) d/dq_mu + c0(q).  Coefficients
// carry their own first partials so that applying the operator to a 2-jet
// yields an exact 1-jet of the result.
struct Derivation {
    std::array<CoefFn, 4> c{};
    CoefFn c0{};

    // Exact 1-jet of (D f) at q, given the 2-jet of f.
    Jet1 apply(const Jet2& f, const Coord& q) const;

    // Value of (D f)(q) only; needs just the 1-jet of f.
    cx value(const Jet1& f, const Coord& q) const;
};

// Separable scalar test profile
//     f(q) = e^{lambda t} * prod_i q_i^{power_i} e^{alpha_i q_i + beta_i q_i^2}
// with closed-form jets everywhere (monomial factors are handled without
// dividing by q_i, so q_i = 0 is fine).
struct ScalarProfile {
    cx lambda{};
    std::array<cx, 3> alpha{};
    std::array<cx, 3> beta{};
    std::array<int, 3> power{};

    Jet2 jet(const Coord& q) const;
};

// Spinor-valued test function: scalar profile times a constant amplitude.
struct TestFunction {
    ScalarProfile profile;
    SpinorValue amplitude{cx(1, 0), cx(0, 0), cx(0, 0), cx(0, 0)};
};

// Spinor-valued function carried as value plus first partials.
struct SpinorJet1 {
    SpinorValue v{};
    std::array<SpinorValue, 4> d{};
};

// First-order matrix operator  sum_k M_k D_k  (constant matrix times scalar
// derivation). Dirac-type factors and their compositions are built from this.
struct FirstOrderOperator {
    std::vector<std::pair<Matrix4, Derivation>> terms;

    // Exact 1-jet of (L tf) at q for tf = profile * amplitude.
    SpinorJet1 apply(const Jet2& profile, const SpinorValue& amplitude, const Coord& q) const;

    // Value of (L h)(q) for an already-computed spinor 1-jet h.
    SpinorValue apply_value(const SpinorJet1& h, const Coord& q) const;
};

// Named spatial-coefficient families.
enum class ChartId {
    Cartesian,    // A_k = d/dx_k
    Variable,     // A_1 = a(x)d/dx, A_2 = b(y)d/dy, A_3 = d/dz
    Cylindrical,  // Cartesian derivatives rewritten in (rho, phi, z)
    Spherical,    // Cartesian derivatives rewritten in (r, theta, phi)
    EmPotential,  // A_mu = d/dq_mu + potential, with an integrable potential
};

// Spatial derivations A_1..A_3 plus the scalar second-order operator they
// square to. When the Clifford square has a gamma1 gamma2 defect (variable
// coefficients with cross dependence, magnetic potentials) it is carried in
// `cross`; when the chart also involves a time derivation (potential charts)
// that lives in A0.
struct Chart {
    std::array<Derivation, 3> A{};
    Derivation A0{};
    bool has_time_part = false;

    // Scalar action A(q, d/dq) on a 2-jet. The Clifford square identity reads
    //   (sum gamma^mu A_mu)^2 f = -(lap f) I + (cross f) gamma1 gamma2.
    std::function<cx(const Jet2&, const Coord&)> lap;

    Derivation cross{};
    bool has_cross = false;

    // Throws SingularCoordinatePoint where the chart degenerates.
    std::function<void(const Coord&)> guard;
};

Chart make_chart(ChartId id);

// Variable chart with caller-supplied a(x, y), b(x, y), c(z); exercises the
// first-order gamma1 gamma2 defect -(a_y b d/dx - a b_x d/dy) when a or b has
// cross dependence.
Chart make_variable_chart(CoefFn a, CoefFn b, CoefFn c);

// Potential chart A_mu = d/dq_mu + (d, a, b, c) built from a scalar generator
// chi (a = chi_x, b = chi_y + field_strength * x, c = chi_z, d = chi_t), which
// satisfies the mixed-partial integrability conditions by construction. The
// linear term adds a constant gamma1 gamma2 defect of size field_strength.
Chart make_em_chart(const ScalarProfile& chi, cx field_strength);

// Dirac-type factor  i gamma0 d/dt + i e^{-Ht} gamma^k A_k + i w (H/2) gamma0 + mu I.
FirstOrderOperator make_dirac_factor(const Chart& chart, double H, cx w, cx mu);

// Residual of the two-parameter-family factorization
//   e^{aHt} (factor with w=b, mu=-m) e^{-aHt} (factor with w=c-b, mu=+m)
//   = -I d_t^2 + e^{-2Ht} lap I - (b-a-1-c/2) H e^{-Ht} gamma0 gamma^k A_k
//     - (m I - i(bH/2) gamma0)^2 - i(a+c/2) H m gamma0 + (a-c/2) H I d_t
//     - (bc + 2ab - 2ac)(H^2/4) I
// applied to tf at `point`, normalized by 1 + the largest second derivative of
// tf there. Requires a chart whose Clifford square is plainly scalar.
double check_general_factorization(cx a, cx b, cx c, double H, cx m, const Chart& chart,
                                   const TestFunction& tf, const Coord& point);

// Residual of the massless square
//   (i gamma0 d/dt + i e^{-Ht} gamma^k A_k + i(3H/2) gamma0)^2 = -box + (R/4) I
// with R = -12 H^2 and
//   box = I d_t^2 + 3H I d_t - e^{-2Ht} lap I + H e^{-Ht} gamma^k gamma0 A_k
//         - (3H^2/4) I.
double check_spinor_box_identity(double H, const Chart& chart, const TestFunction& tf,
                                 const Coord& point);

// Residual of the flat-Laplacian factorization
//   (d_t^2 - e^{-2Ht} Delta) I + (m I - (i/2) H gamma0)^2
//   = -e^{Ht} (factor w=3, mu=-m) e^{-Ht} (factor w=-1, mu=+m).
double check_matrix_mass_factorization(double H, cx m, const TestFunction& tf,
                                       const Coord& point);

// Residual of the Clifford square identity
//   (sum gamma^mu A_mu)^2 tf = -(lap tf) I + (cross tf) gamma1 gamma2
// for the given chart (spatial-only charts sum over k = 1..3; potential
// charts include gamma0 A_0).
double check_clifford_square(const Chart& chart, const TestFunction& tf, const Coord& point);

// Same, with a fixed built-in test function.
double check_clifford_square(ChartId id, const Coord& point);

// Largest deviation of the spherical frame matrices
//   gt = gamma0
//   gr = gamma1 cos(phi) sin(theta) + gamma2 sin(theta) sin(phi) + gamma3 cos(theta)
//   gtheta = gamma1 cos(theta) cos(phi) + gamma2 sin(phi) cos(theta) - gamma3 sin(theta)
//   gphi = -gamma1 sin(phi) + gamma2 cos(phi)
// from {g^mu, g^nu} = 2 diag(1,-1,-1,-1). `point` is (r, theta, phi); throws
// SingularCoordinatePoint when sin(theta) vanishes.
double check_tetrad_anticommutators(const std::array<double, 3>& point);

}  // namespace dsprop
