#ifndef DSPROP_QUADRATURE_HPP
#define DSPROP_QUADRATURE_HPP

// Adaptive Gauss-Kronrod (G7,K15) quadrature for complex-valued integrands on
// a real interval, plus the cone-endpoint variant used by the kernel
// transforms: the hypergeometric kernels are finite on the light cone but
// their z argument is an exact cancellation there, so the last
// boundary_offset-sized sliver is handled by a midpoint tail instead of
// sampling the endpoint itself.

#include <functional>

#include "dsprop/clifford.hpp" // cx

namespace dsprop {

struct QuadratureSpec {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 200;
    // Relative width of the sliver left to the tail rule at a cone endpoint.
    double boundary_offset = 1e-8;
    // Spherical-mean rule exactness (degree of spherical harmonics integrated
    // exactly); <= 7 selects the 26-point Lebedev rule, larger degrees a
    // Gauss-Legendre x uniform product rule.
    int sphere_poly_degree = 31;
    // Step for the centered 5-point d/ds stencil in the spherical-means
    // propagator.
    double fd_step = 1e-3;
};

struct QuadratureResult {
    cx value{};
    double error_estimate = 0.0;
    long evaluations = 0;
    int subdivisions = 0;
};

using Integrand = std::function<cx(double)>;

// Globally adaptive bisection, worst interval first. Throws
// QuadratureBudgetExceeded when max_subdivisions intervals cannot reach
// max(abs_tol, rel_tol * |integral|).
QuadratureResult integrate_gk(const Integrand& f, double a, double b, const QuadratureSpec& q);

// Integral over [0, endpoint] where endpoint lies on a light cone: adaptive
// rule on [0, endpoint - offset] plus a midpoint tail over the final sliver
// (offset = boundary_offset * endpoint, so the tail error is O(offset^3) and
// far below tolerance).
QuadratureResult integrate_to_cone(const Integrand& f, double endpoint, const QuadratureSpec& q);

} // namespace dsprop

#endif
