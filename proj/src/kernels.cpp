#include "dsprop/kernels.hpp"

#include <cmath>

#include "dsprop/errors.hpp"

namespace dsprop {

namespace {

// Roundoff guard at the cone boundary: the z numerator vanishes there exactly,
// but cancellation can leave it at a few ulp below zero.
constexpr double kConeSlack = 1e-12;

struct ConeGeometry {
    double B;  // (e^{-H t0} + e^{-H t})^2 - (Hr)^2
    double z;  // clamped to 0 at the boundary
};

ConeGeometry cone_geometry(double H, double r, double t, double t0) {
    const double u = std::exp(-H * t);
    const double u0 = std::exp(-H * t0);
    const double B = (u0 + u) * (u0 + u) - (H * r) * (H * r);
    if (!(B > 0.0)) throw OutsideCone("kernel_E: prefactor base not positive");
    double z = ((u - u0) * (u - u0) - (H * r) * (H * r)) / B;
    if (z < 0.0) {
        if (z < -kConeSlack) throw OutsideCone("kernel_E: point outside the light cone");
        z = 0.0;
    }
    // z < 1 holds whenever B > 0 since B - numerator = 4 e^{-H(t+t0)} > 0.
    return {B, z};
}

} // namespace

double phi(double H, double t) {
    if (H == 0.0) return t;
    return -std::expm1(-H * t) / H;
}

std::pair<cx, cx> split_masses(double H, cx m) {
    const cx im = cx(0.0, 1.0) * m;
    return {H / 2.0 + im, H / 2.0 - im};
}

cx kernel_E(const KernelParams& p, double r, double t, double t0) {
    const double H = p.H;
    const auto [B, z] = cone_geometry(H, r, t, t0);
    const cx moh = p.M / H;
    const cx a = cx(0.5) - moh;
    const cx pref = std::exp(-moh * std::log(4.0) + p.M * (t0 + t) + (moh - cx(0.5)) * std::log(B));
    return pref * hyp2f1(a, a, cx(1.0), z, p.series);
}

cx kernel_E_dt(const KernelParams& p, double r, double t, double t0) {
    const double H = p.H;
    const auto [B, z] = cone_geometry(H, r, t, t0);
    const double u = std::exp(-H * t);
    const double u0 = std::exp(-H * t0);
    const double dB = -2.0 * H * u * (u0 + u);
    const double N = z * B;
    const double dN = -2.0 * H * u * (u - u0);
    const double dz = (dN * B - N * dB) / (B * B);

    const cx moh = p.M / H;
    const cx a = cx(0.5) - moh;
    const cx pexp = moh - cx(0.5);
    const cx pref = std::exp(-moh * std::log(4.0) + p.M * (t0 + t) + pexp * std::log(B));
    const cx F = hyp2f1(a, a, cx(1.0), z, p.series);
    const cx dF = hyp2f1_dz(a, a, cx(1.0), z, p.series);
    return pref * (F * (p.M + pexp * dB / B) + dF * dz);
}

cx kernel_E_boundary(const KernelParams& p, double t, double t0) {
    return cx(0.5) * std::exp(cx(0.5 * p.H * (t + t0)));
}

cx kernel_K1(const KernelParams& p, double r, double t) { return kernel_E(p, r, t, 0.0); }

cx kernel_K0(const KernelParams& p, double r, double t) {
    const double H = p.H;
    const auto [B, z] = cone_geometry(H, r, t, 0.0);
    const double u = std::exp(-H * t);
    const double dB = -2.0 * H * (1.0 + u); // d/db of the base at emission time b=0

    const cx moh = p.M / H;
    const cx a = cx(0.5) - moh;
    const cx pexp = moh - cx(0.5);
    const cx F1 = hyp2f1(a, a, cx(1.0), z, p.series);
    const cx F2 = hyp2f1(a + cx(1.0), a + cx(1.0), cx(2.0), z, p.series);

    // -d/db E(r,t;0,b;M)|_{b=0}: the F2 coefficient carries the square of the
    // series parameter a = (H-2M)/(2H) from the chain rule on z.
    const cx pref = -std::exp(-moh * std::log(4.0) + p.M * t + (moh - cx(2.5)) * std::log(B));
    const cx term1 = cx(B) * (p.M * B + pexp * dB) * F1;
    const cx term2 = (1.0 / H) * (cx(H) - 2.0 * p.M) * (cx(H) - 2.0 * p.M) * u *
                     (u * u - ((H * r) * (H * r) + 1.0)) * F2;
    return pref * (term1 + term2);
}

cx kernel_mink_I0(cx M, double t, double b, double r, const SeriesPolicy& policy) {
    const double tau = t - b;
    if (r < 0.0 || r > tau * (1.0 + kConeSlack) + kConeSlack)
        throw OutsideCone("kernel_mink_I0: point outside the light cone");
    return bessel_i0_from_w2(M * M * (tau * tau - r * r), policy);
}

cx kernel_mink_K0(cx M, double t, double r, const SeriesPolicy& policy) {
    if (r < 0.0 || r > t * (1.0 + kConeSlack) + kConeSlack)
        throw OutsideCone("kernel_mink_K0: point outside the light cone");
    // i M t / sqrt(t^2-r^2) * J1(i M sqrt(t^2-r^2)) = -M^2 t (J1(w)/w) with
    // w^2 = -M^2 (t^2 - r^2); regular at r = t with value -M^2 t / 2.
    return -M * M * t * bessel_j1_over_w_from_w2(-M * M * (t * t - r * r), policy);
}

double limit_check_E_to_I0(double H, double m, double t, double b, double r) {
    KernelParams p;
    p.H = H;
    p.M = cx(H / 2.0, m);
    const cx im(0.0, m);
    return std::abs(cx(2.0) * kernel_E(p, r, t, b) - kernel_mink_I0(im, t, b, r));
}

} // namespace dsprop
