#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "dsprop/errors.hpp"
#include "dsprop/kernels.hpp"
#include "dsprop/specfun.hpp"

using dsprop::cx;
using dsprop::KernelParams;

namespace {
KernelParams params(double H, cx M) {
    KernelParams p;
    p.H = H;
    p.M = M;
    return p;
}
} // namespace

TEST_CASE("conformal time is monotone and has the right flat limit") {
    CHECK(dsprop::phi(1.0, 0.0) == 0.0);
    CHECK(dsprop::phi(1.0, 1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    // H -> 0 recovers phi = t continuously
    CHECK(dsprop::phi(0.0, 0.7) == 0.7);
    CHECK(std::abs(dsprop::phi(1e-9, 0.7) - 0.7) < 1e-9);
    // horizon: phi stays at or below 1/H for all t (the cap is reached up to
    // rounding once e^{-Ht} underflows the last bit)
    CHECK(dsprop::phi(2.0, 3.0) < 0.5);
    CHECK(dsprop::phi(2.0, 50.0) <= 0.5);
}

TEST_CASE("split masses sum to H and are conjugate for real mass") {
    const auto [mp, mm] = dsprop::split_masses(1.0, cx(2.0, 0.0));
    CHECK(mp == cx(0.5, 2.0));
    CHECK(mm == cx(0.5, -2.0));
    CHECK(mp + mm == cx(1.0, 0.0));
}

TEST_CASE("propagation kernel at a frozen reference point") {
    // value pinned from an independent high-precision evaluation of the
    // hypergeometric closed form
    const KernelParams p = params(1.0, cx(0.5, 1.0));
    const cx got = dsprop::kernel_E(p, 0.3, 0.8, 0.0);
    const cx want(0.6623427159979646531598, 0.07894241613471733102452);
    CHECK(std::abs(got - want) < 1e-13 * std::abs(want));
}

TEST_CASE("kernel is symmetric in its two time arguments") {
    const KernelParams p = params(1.3, cx(0.65, -0.4));
    for (const double r : {0.05, 0.15}) {
        const cx a = dsprop::kernel_E(p, r, 0.9, 0.2);
        const cx b = dsprop::kernel_E(p, r, 0.2, 0.9);
        CHECK(std::abs(a - b) < 1e-14 * (1.0 + std::abs(a)));
    }
}

TEST_CASE("kernel takes the mass-independent value on the light cone") {
    const double H = 1.0, t = 1.1, t0 = 0.2;
    const double len = dsprop::phi(H, t) - dsprop::phi(H, t0);
    const cx want = dsprop::kernel_E_boundary(params(H, cx(0.5)), t, t0);
    CHECK(std::abs(want - 0.5 * std::exp(0.5 * H * (t + t0))) < 1e-15);
    for (const cx M : {cx(0.5, 0.0), cx(0.5, 2.0), cx(1.7, -0.8)}) {
        const cx got = dsprop::kernel_E(params(H, M), len, t, t0);
        CHECK(std::abs(got - want) < 1e-12);
    }
}

TEST_CASE("massless kernel collapses to the boundary value everywhere") {
    for (const double H : {0.7, 1.0}) {
        const KernelParams p = params(H, cx(H / 2.0, 0.0));
        for (const double t : {0.5, 1.2}) {
            for (const double t0 : {0.0, 0.3}) {
                if (t0 >= t) continue;
                const double len = dsprop::phi(H, t) - dsprop::phi(H, t0);
                const cx want = 0.5 * std::exp(0.5 * H * (t + t0));
                for (const double frac : {0.0, 0.3, 0.8, 0.999}) {
                    const cx got = dsprop::kernel_E(p, frac * len, t, t0);
                    CHECK(std::abs(got - want) < 1e-12);
                }
            }
        }
    }
}

TEST_CASE("outside the light cone the kernel refuses to evaluate") {
    const KernelParams p = params(1.0, cx(0.5, 1.0));
    const double len = dsprop::phi(1.0, 0.8);
    CHECK_THROWS_AS(dsprop::kernel_E(p, len * 1.01, 0.8, 0.0), dsprop::OutsideCone);
    CHECK_THROWS_AS(dsprop::kernel_K1(p, 2.0, 0.4), dsprop::OutsideCone);
}

TEST_CASE("single-time kernel is the two-time kernel at emission time zero") {
    const KernelParams p = params(0.9, cx(0.45, 1.3));
    for (const double r : {0.1, 0.4}) {
        const cx a = dsprop::kernel_K1(p, r, 0.9);
        const cx b = dsprop::kernel_E(p, r, 0.9, 0.0);
        CHECK(a == b);
    }
}

TEST_CASE("initial-data kernel at a frozen reference point") {
    const KernelParams p = params(1.0, cx(0.5, 1.0));
    const cx got = dsprop::kernel_K0(p, 0.3, 0.9);
    const cx want(-0.7160634527038121047604, 0.2724366882873734748543);
    CHECK(std::abs(got - want) < 1e-13 * std::abs(want));
}

TEST_CASE("initial-data kernel equals the emission-time derivative of E") {
    const double h = 1e-5;
    for (const cx M : {cx(0.5, 0.0), cx(0.5, 1.0), cx(0.5, -1.0), cx(2.0, 0.0)}) {
        const KernelParams p = params(1.0, M);
        for (const double t : {0.6, 1.1}) {
            const double len = dsprop::phi(p.H, t);
            for (const double frac : {0.3, 0.7}) {
                const double r = frac * len;
                const cx fd =
                    -(dsprop::kernel_E(p, r, t, h) - dsprop::kernel_E(p, r, t, -h)) / (2.0 * h);
                CHECK(std::abs(dsprop::kernel_K0(p, r, t) - fd) < 1e-5);
            }
        }
    }
}

TEST_CASE("initial-data kernel massless special value") {
    for (const double H : {0.8, 1.0}) {
        const KernelParams p = params(H, cx(H / 2.0, 0.0));
        for (const double t : {0.4, 1.0}) {
            const cx want = -(H / 4.0) * std::exp(0.5 * H * t);
            for (const double frac : {0.2, 0.6}) {
                const cx got = dsprop::kernel_K0(p, frac * dsprop::phi(H, t), t);
                CHECK(std::abs(got - want) < 1e-12);
            }
        }
    }
}

TEST_CASE("observation-time derivative of E matches a central difference") {
    const double h = 1e-5;
    for (const cx M : {cx(0.5, 1.0), cx(1.4, -0.6)}) {
        const KernelParams p = params(1.0, M);
        for (const double t : {0.7, 1.2}) {
            const double t0 = 0.15;
            const double len = dsprop::phi(p.H, t) - dsprop::phi(p.H, t0);
            for (const double frac : {0.25, 0.65}) {
                const double r = frac * len;
                const cx fd = (dsprop::kernel_E(p, r, t + h, t0) -
                               dsprop::kernel_E(p, r, t - h, t0)) /
                              (2.0 * h);
                CHECK(std::abs(dsprop::kernel_E_dt(p, r, t, t0) - fd) < 1e-5);
            }
        }
    }
}

TEST_CASE("kernel of the conjugate mass is the conjugate kernel") {
    const KernelParams p = params(1.0, cx(0.5, 1.7));
    const KernelParams pc = params(1.0, std::conj(cx(0.5, 1.7)));
    const cx a = dsprop::kernel_E(p, 0.2, 0.9, 0.1);
    const cx b = dsprop::kernel_E(pc, 0.2, 0.9, 0.1);
    CHECK(std::abs(b - std::conj(a)) < 1e-14 * (1.0 + std::abs(a)));
}

TEST_CASE("flat-space kernels: values, cone support, edge regularity") {
    // I0 form against the Bessel series directly
    const cx M(0.0, 1.3);
    const double t = 1.0, b = 0.2, r = 0.5;
    const double s2 = (t - b) * (t - b) - r * r;
    CHECK(std::abs(dsprop::kernel_mink_I0(M, t, b, r) -
                   dsprop::bessel_i0_from_w2(M * M * s2)) == 0.0);
    CHECK_THROWS_AS(dsprop::kernel_mink_I0(M, 1.0, 0.2, 0.9), dsprop::OutsideCone);

    // initial-data form: light-cone limit -M^2 t / 2, smooth inside
    const cx Mr(0.8, 0.0);
    const cx edge = dsprop::kernel_mink_K0(Mr, 1.0, 1.0 - 1e-12);
    CHECK(std::abs(edge - (-Mr * Mr * 0.5)) < 1e-10);
    CHECK_THROWS_AS(dsprop::kernel_mink_K0(Mr, 1.0, 1.5), dsprop::OutsideCone);
    // even in M
    CHECK(dsprop::kernel_mink_K0(Mr, 1.0, 0.3) == dsprop::kernel_mink_K0(-Mr, 1.0, 0.3));
}

TEST_CASE("difference to the flat kernel shrinks linearly in the expansion rate") {
    const double t = 1.0, b = 0.2, r = 0.4, m = 0.5;
    const double d1 = dsprop::limit_check_E_to_I0(1e-2, m, t, b, r);
    const double d2 = dsprop::limit_check_E_to_I0(5e-3, m, t, b, r);
    CHECK(d1 / d2 > 1.7);
    CHECK(d1 / d2 < 2.3);
}
