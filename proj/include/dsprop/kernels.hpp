#ifndef DSPROP_KERNELS_HPP
#define DSPROP_KERNELS_HPP

// Scalar integral-transform kernels for the expanding (de Sitter) background
// with Hubble rate H and their flat-space (H -> 0) counterparts.
//
// The central object is E(r,t;0,t0;M): a hypergeometric kernel supported on
// the light cone emanating from time t0, through which every solved field is
// expressed as an integral of plain wave propagators. K1 is its t0 = 0 slice,
// K0 its derivative in the emission time. For H -> 0 the kernels degenerate to
// the Bessel kernels I0 / J1 of the flat Klein-Gordon propagator.
//
// Conventions: scale factor e^{Ht}, split masses M = H/2 +- i m, distance
// function phi(t) = (1 - e^{-Ht})/H, cone |x - x0| <= |phi(t) - phi(t0)|.

#include <complex>
#include <utility>

#include "dsprop/clifford.hpp" // cx
#include "dsprop/specfun.hpp"

namespace dsprop {

struct KernelParams {
    double H = 1.0;
    cx M = cx(0.5, 0.0);
    SeriesPolicy series{};
};

// (1 - e^{-Ht})/H; continuous limit t at H = 0.
double phi(double H, double t);

// The two block masses H/2 + i m and H/2 - i m of the squared Dirac operator
// (m may be complex; the equation allows it).
std::pair<cx, cx> split_masses(double H, cx m);

// E(r,t;0,t0;M) = 4^{-M/H} e^{M(t0+t)} B^{M/H - 1/2} 2F1(1/2 - M/H, 1/2 - M/H; 1; z)
// with B = (e^{-H t0} + e^{-H t})^2 - (Hr)^2 and
//      z = ((e^{-H t} - e^{-H t0})^2 - (Hr)^2) / B.
// Inside the cone 0 <= z < 1 and B > 0 hold automatically; outside, throws
// OutsideCone. r = |phi(t) - phi(t0)| (z = 0) is the cone boundary, where the
// kernel equals e^{H(t+t0)/2} / 2 independent of M.
cx kernel_E(const KernelParams& p, double r, double t, double t0);

// Analytic d/dt of kernel_E (hypergeometric derivative plus prefactor terms).
cx kernel_E_dt(const KernelParams& p, double r, double t, double t0);

// Closed form of the cone-boundary value e^{H(t+t0)/2}/2; used by moving
// boundary terms so the boundary never goes through the z-series with a
// rounded-off negative z.
cx kernel_E_boundary(const KernelParams& p, double t, double t0);

// K1(r,t;M) = E(r,t;0,0;M).
cx kernel_K1(const KernelParams& p, double r, double t);

// K0(r,t;M) = -[d/db E(r,t;0,b;M)]_{b=0}, in closed form (two hypergeometric
// terms with parameters (1/2-M/H, .; 1; z) and (3/2-M/H, .; 2; z)).
// At M = H/2 it collapses to -(H/4) e^{Ht/2}.
cx kernel_K0(const KernelParams& p, double r, double t);

// Flat-space kernels. kernel_mink_I0(M,t,b,r) = I0(M sqrt((t-b)^2 - r^2)) on
// 0 <= r <= t-b. kernel_mink_K0(M,t,r) = i M t / sqrt(t^2-r^2) *
// J1(i M sqrt(t^2-r^2)) on 0 <= r <= t, evaluated through the even series
// J1(w)/w so the cone boundary r = t is regular (value -M^2 t / 2).
cx kernel_mink_I0(cx M, double t, double b, double r, const SeriesPolicy& policy = {});
cx kernel_mink_K0(cx M, double t, double r, const SeriesPolicy& policy = {});

// |2 E(r,t;0,b;H/2+im) - I0(im sqrt((t-b)^2-r^2))|: the curved kernel enters
// its representation with a factor 2 that the flat one does not carry, so this
// is the quantity that must shrink linearly in H.
double limit_check_E_to_I0(double H, double m, double t, double b, double r);

} // namespace dsprop

#endif
