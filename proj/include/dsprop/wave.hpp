#ifndef DSPROP_WAVE_HPP
#define DSPROP_WAVE_HPP

// Free wave propagators that the curved-space kernels are layered on top of:
// the plane-wave mode factor cos(s|xi|), the 1d d'Alembert half-sum, and the
// 3d Kirchhoff solution d/ds [ s * (spherical mean) ] evaluated by spherical
// quadrature plus a centered difference in the radius.

#include <array>
#include <functional>

#include "dsprop/quadrature.hpp"

namespace dsprop {

using Point3 = std::array<double, 3>;

// A single plane wave amplitude * e^{i xi . x}. The solvers that consume modes
// carry their own amplitudes (initial value / velocity / source profiles), so
// for them only xi matters; amplitude is the datum of a standalone wave mode.
struct FourierMode {
    Point3 xi{{0.0, 0.0, 0.0}};
    cx amplitude = cx(1.0, 0.0);

    double abs_xi() const;
};

// Fourier symbol of the wave Cauchy propagator (unit datum, zero velocity).
double mode_wave(const Point3& xi, double s);

// (phi(x+s) + phi(x-s)) / 2.
cx dalembert_1d(const std::function<cx(double)>& phi, double x, double s);

// Mean of phi over the sphere of radius s about x. Rule selection via
// q.sphere_poly_degree; exposed for tests.
cx spherical_mean(const std::function<cx(const Point3&)>& phi, const Point3& x, double s,
                  const QuadratureSpec& q);

// d/ds [ s * mean_{|y-x|=s} phi(y) ] via a 5-point centered stencil of width
// q.fd_step (shrunk near s = 0). s = 0 returns phi(x).
cx kirchhoff_3d(const std::function<cx(const Point3&)>& phi, const Point3& x, double s,
                const QuadratureSpec& q);

// A solved wave Cauchy problem with zero initial velocity, packaged as an
// evaluator (x, s) -> value together with the construction it came from.
enum class WaveKind { ModeExact, Dalembert1d, Kirchhoff3d };

struct WaveSolution {
    WaveKind kind;
    std::function<cx(const Point3&, double)> evaluate;
};

WaveSolution make_mode_wave_solution(const FourierMode& mode);
WaveSolution make_dalembert_solution(std::function<cx(double)> datum);
WaveSolution make_kirchhoff_solution(std::function<cx(const Point3&)> datum, QuadratureSpec q);

} // namespace dsprop

#endif
