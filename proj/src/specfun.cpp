#include "dsprop/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "dsprop/errors.hpp"

namespace dsprop {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool is_nonpositive_integer(cx z, double tol = 1e-12) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = z.real();
    if (r > 0.5) return false;
    return std::abs(r - std::round(r)) <= tol;
}

bool is_integer(cx z, double tol) {
    return std::abs(z.imag()) <= tol && std::abs(z.real() - std::round(z.real())) <= tol;
}

// Direct series sum_{k} (a)_k (b)_k / ((c)_k k!) z^k with the shared stopping
// rule. Caller guarantees |z| < 1 (or a terminating parameter).
cx hyp2f1_series(cx a, cx b, cx c, double z, const SeriesPolicy& policy) {
    cx sum(1.0, 0.0);
    cx term(1.0, 0.0);
    int consecutive_small = 0;
    for (int k = 0; k < policy.max_terms; ++k) {
        term *= (a + cx(k)) * (b + cx(k)) / ((c + cx(k)) * cx(k + 1.0)) * z;
        sum += term;
        if (std::abs(term) < policy.term_tol * std::abs(sum)) {
            if (++consecutive_small >= 3) return sum;
        } else {
            consecutive_small = 0;
        }
    }
    throw DivergentSeries("hyp2f1 series exceeded max_terms");
}

} // namespace

cx log_gamma(cx z) {
    // Lanczos, g = 7, 9 coefficients.
    static const double coef[9] = {
        0.99999999999980993,  676.5203681218851,    -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,  12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

    if (z.real() < 0.5) {
        // Reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z).
        const cx s = std::sin(kPi * z);
        if (std::abs(s) == 0.0) throw ParameterPole("log_gamma at a nonpositive integer");
        return std::log(kPi / s) - log_gamma(cx(1.0) - z);
    }
    cx x(coef[0]);
    const cx zm1 = z - cx(1.0);
    for (int i = 1; i < 9; ++i) x += cx(coef[i]) / (zm1 + cx(i));
    const cx t = zm1 + cx(7.5);
    return 0.5 * std::log(2.0 * kPi) + (zm1 + cx(0.5)) * std::log(t) - t + std::log(x);
}

cx recip_gamma(cx z) {
    if (is_nonpositive_integer(z)) return cx(0.0);
    return std::exp(-log_gamma(z));
}

cx hyp2f1(cx a, cx b, cx c, double z, const SeriesPolicy& policy) {
    if (is_nonpositive_integer(c)) throw ParameterPole("hyp2f1: c is a nonpositive integer");
    if (!(z >= 0.0 && z <= 1.0)) {
        if (z > -1.0 && z < 0.0) return hyp2f1_series(a, b, c, z, policy); // still convergent
        throw std::domain_error("hyp2f1: z outside [0,1]");
    }

    // Terminating polynomial cases sum exactly regardless of z.
    if (is_nonpositive_integer(a) || is_nonpositive_integer(b)) return hyp2f1_series(a, b, c, z, policy);

    if (z <= 0.5) return hyp2f1_series(a, b, c, z, policy);

    const cx cab = c - a - b;
    if (z == 1.0) {
        if (cab.real() <= 0.0) throw DivergentSeries("hyp2f1 diverges at z=1 for Re(c-a-b) <= 0");
        return std::exp(log_gamma(c) + log_gamma(cab) - log_gamma(c - a) - log_gamma(c - b));
    }

    if (is_integer(cab, 1e-8)) {
        // Degenerate transformation (gamma poles in both coefficients); the
        // direct series still converges for Re(c-a-b) > 0, just more slowly.
        return hyp2f1_series(a, b, c, z, policy);
    }

    // Linear 1-z transformation: both series run at 1-z <= 0.5.
    const double w = 1.0 - z;
    const cx lg_c = log_gamma(c);
    const cx coef1 = std::exp(lg_c + log_gamma(cab)) * recip_gamma(c - a) * recip_gamma(c - b);
    const cx coef2 = std::exp(lg_c + log_gamma(-cab)) * recip_gamma(a) * recip_gamma(b) *
                     std::pow(cx(w), cab);
    return coef1 * hyp2f1_series(a, b, a + b - c + cx(1.0), w, policy) +
           coef2 * hyp2f1_series(c - a, c - b, cab + cx(1.0), w, policy);
}

cx hyp2f1_dz(cx a, cx b, cx c, double z, const SeriesPolicy& policy) {
    if (is_nonpositive_integer(c)) throw ParameterPole("hyp2f1_dz: c is a nonpositive integer");
    return a * b / c * hyp2f1(a + cx(1.0), b + cx(1.0), c + cx(1.0), z, policy);
}

cx bessel_i0_from_w2(cx w2, const SeriesPolicy& policy) {
    // I0(w) = sum_k (w^2/4)^k / (k!)^2
    const cx q = w2 * 0.25;
    cx sum(1.0, 0.0);
    cx term(1.0, 0.0);
    int consecutive_small = 0;
    for (int k = 1; k < policy.max_terms; ++k) {
        term *= q / cx(double(k) * double(k));
        sum += term;
        if (std::abs(term) < policy.term_tol * std::abs(sum)) {
            if (++consecutive_small >= 3) return sum;
        } else {
            consecutive_small = 0;
        }
    }
    throw DivergentSeries("bessel_i0 series exceeded max_terms");
}

namespace {

// Shared even series sum_k s^k (w^2/4)^k / (k! (k+1)!) / 2 behind J1(w)/w
// (s = -1) and I1(w)/w (s = +1).
cx bessel_ratio_series(cx w2, double s, const SeriesPolicy& policy) {
    const cx q = w2 * 0.25;
    cx sum(0.5, 0.0);
    cx term(0.5, 0.0);
    int consecutive_small = 0;
    for (int k = 1; k < policy.max_terms; ++k) {
        term *= s * q / cx(double(k) * double(k + 1));
        sum += term;
        if (std::abs(term) < policy.term_tol * std::abs(sum)) {
            if (++consecutive_small >= 3) return sum;
        } else {
            consecutive_small = 0;
        }
    }
    throw DivergentSeries("bessel ratio series exceeded max_terms");
}

} // namespace

cx bessel_j1_over_w_from_w2(cx w2, const SeriesPolicy& policy) { return bessel_ratio_series(w2, -1.0, policy); }

cx bessel_i1_over_w_from_w2(cx w2, const SeriesPolicy& policy) { return bessel_ratio_series(w2, 1.0, policy); }

cx bessel_i0(cx w, const SeriesPolicy& policy) { return bessel_i0_from_w2(w * w, policy); }

cx bessel_j1(cx w, const SeriesPolicy& policy) { return w * bessel_j1_over_w_from_w2(w * w, policy); }

} // namespace dsprop
