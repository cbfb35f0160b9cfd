#ifndef DSPROP_SPECFUN_HPP
#define DSPROP_SPECFUN_HPP

// Special functions needed by the propagator kernels: the Gauss hypergeometric
// function 2F1 with complex parameters on real z in [0,1], and the entire
// Bessel-type series I0, J1. Nothing here is asymptotic; every evaluation is a
// power series with a hard term budget, which keeps the error model simple and
// honest at the argument sizes the kernels produce.

#include <complex>

#include "dsprop/clifford.hpp" // for the cx alias

namespace dsprop {

// Stopping rule shared by all series in this header: stop once three
// consecutive terms fall below term_tol * |partial sum|; give up (and throw
// DivergentSeries) after max_terms terms.
struct SeriesPolicy {
    double term_tol = 1e-16;
    int max_terms = 20000;
};

// Gauss 2F1(a,b;c;z) for complex a,b,c and real z in [0,1].
//   z <= 0.5           direct power series
//   0.5 < z < 1        linear 1-z transformation (two series at 1-z), unless
//                      c-a-b is within 1e-8 of an integer, in which case the
//                      transformation coefficients hit gamma poles and the
//                      (slower but convergent) direct series is used instead
//   z == 1             Gauss summation, requires Re(c-a-b) > 0
// Throws ParameterPole when c is a nonpositive integer, DivergentSeries when
// a series exceeds its budget, std::domain_error outside [0,1].
cx hyp2f1(cx a, cx b, cx c, double z, const SeriesPolicy& policy = {});

// d/dz 2F1(a,b;c;z) = (a b / c) 2F1(a+1,b+1;c+1;z).
cx hyp2f1_dz(cx a, cx b, cx c, double z, const SeriesPolicy& policy = {});

// Modified Bessel I0 and Bessel J1, entire series, complex argument.
cx bessel_i0(cx w, const SeriesPolicy& policy = {});
cx bessel_j1(cx w, const SeriesPolicy& policy = {});

// Even-series forms used by the flat-space kernels: both I0(w) and J1(w)/w are
// entire functions of w^2, so evaluating them from w^2 avoids the square root
// entirely and stays regular on the light cone where w -> 0.
cx bessel_i0_from_w2(cx w2, const SeriesPolicy& policy = {});
cx bessel_j1_over_w_from_w2(cx w2, const SeriesPolicy& policy = {});
cx bessel_i1_over_w_from_w2(cx w2, const SeriesPolicy& policy = {});

// log Gamma(z), principal branch, Lanczos approximation with reflection for
// Re(z) < 0.5. Accurate to ~1e-13 relative over the parameter sizes used by
// the 1-z transformation.
cx log_gamma(cx z);

// 1/Gamma(z); returns exactly 0 at nonpositive-integer poles so transformation
// coefficients degrade gracefully when a parameter is a negative integer.
cx recip_gamma(cx z);

} // namespace dsprop

#endif
