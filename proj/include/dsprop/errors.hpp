#ifndef DSPROP_ERRORS_HPP
#define DSPROP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dsprop {

// Base class for all numerical-contract violations raised by this library.
// Callers that need to distinguish failure modes catch the concrete types;
// the CLI maps any Error to its "numerical failure" exit code.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Power series exceeded its term budget without meeting the stopping rule.
struct DivergentSeries : Error {
    using Error::Error;
};

// Hypergeometric c parameter at a nonpositive integer (all terms beyond the
// pole are undefined).
struct ParameterPole : Error {
    using Error::Error;
};

// Kernel evaluated at a point outside the light cone it is supported on.
// Deliberately an error rather than a silent zero: propagator supports are
// enforced by the integration layer, so an out-of-cone evaluation means the
// caller's geometry is wrong.
struct OutsideCone : Error {
    using Error::Error;
};

// Adaptive quadrature hit max_subdivisions before reaching tolerance.
struct QuadratureBudgetExceeded : Error {
    using Error::Error;
};

// Degenerate time interval where a derivative of the propagator action is
// requested (t == t0); the kernel has a kink there.
struct DegenerateInterval : Error {
    using Error::Error;
};

// Adaptive ODE stepper exceeded its step budget.
struct StepBudgetExceeded : Error {
    using Error::Error;
};

// Sampled trajectory has too few points for the finite-difference stencil.
struct GridTooCoarse : Error {
    using Error::Error;
};

// Test function not smooth at the requested point (e.g. monomial factor
// differentiated at the coordinate origin).
struct NonSmoothPoint : Error {
    using Error::Error;
};

// Curvilinear coefficient evaluated on a coordinate singularity (axis r=0,
// sin(theta)=0, ...).
struct SingularCoordinatePoint : Error {
    using Error::Error;
};

} // namespace dsprop

#endif
