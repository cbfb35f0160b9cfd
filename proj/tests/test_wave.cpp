#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "dsprop/wave.hpp"

using dsprop::cx;
using dsprop::Point3;
using dsprop::QuadratureSpec;

TEST_CASE("mode symbol is the cosine of s|xi|") {
    const Point3 xi{0.6, -0.8, 0.0};
    CHECK(dsprop::FourierMode{xi}.abs_xi() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dsprop::mode_wave(xi, 0.7) == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
    CHECK(dsprop::mode_wave(Point3{0.0, 0.0, 0.0}, 3.0) == 1.0);
}

TEST_CASE("half-sum propagator in one dimension") {
    const auto phi = [](double x) { return cx(x * x, std::sin(x)); };
    const cx got = dsprop::dalembert_1d(phi, 0.3, 0.5);
    const cx want = 0.5 * (phi(0.8) + phi(-0.2));
    CHECK(std::abs(got - want) == 0.0);
}

TEST_CASE("spherical mean has the mean value property") {
    QuadratureSpec q;
    const Point3 x{0.2, -0.1, 0.4};
    // affine functions average to the center value at any radius
    const auto affine = [](const Point3& y) { return cx(1.0 + 2.0 * y[0] - y[1] + 0.5 * y[2]); };
    for (const int degree : {7, 31}) {
        q.sphere_poly_degree = degree;
        const cx got = dsprop::spherical_mean(affine, x, 0.8, q);
        CHECK(std::abs(got - affine(x)) < 1e-13);
        // |y - x|^2 averages to s^2 exactly
        const auto r2 = [&x](const Point3& y) {
            const double dx = y[0] - x[0], dy = y[1] - x[1], dz = y[2] - x[2];
            return cx(dx * dx + dy * dy + dz * dz);
        };
        CHECK(std::abs(dsprop::spherical_mean(r2, x, 0.8, q) - cx(0.64)) < 1e-13);
    }
}

TEST_CASE("spherical propagator of a plane wave matches the mode symbol") {
    QuadratureSpec q;
    const Point3 xi{0.9, -0.2, 1.3};
    const double norm = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    const auto datum = [&xi](const Point3& y) {
        return std::exp(cx(0.0, xi[0] * y[0] + xi[1] * y[1] + xi[2] * y[2]));
    };
    const Point3 x{0.3, 0.1, -0.2};
    for (const double s : {0.0, 0.4, 1.1}) {
        const cx got = dsprop::kirchhoff_3d(datum, x, s, q);
        const cx want = datum(x) * std::cos(s * norm);
        CHECK(std::abs(got - want) < 1e-6);
    }
}

TEST_CASE("spherical propagator of a harmonic datum is static") {
    QuadratureSpec q;
    // harmonic polynomial x y + z stays put under the wave flow
    const auto datum = [](const Point3& y) { return cx(y[0] * y[1] + y[2]); };
    const Point3 x{0.5, -0.3, 0.2};
    for (const double s : {0.3, 0.9}) {
        CHECK(std::abs(dsprop::kirchhoff_3d(datum, x, s, q) - datum(x)) < 1e-8);
    }
}

TEST_CASE("packaged solutions agree across constructions") {
    QuadratureSpec q;
    const dsprop::FourierMode mode{{0.0, 1.2, 0.0}, cx(0.7, -0.4)};
    const auto exact = dsprop::make_mode_wave_solution(mode);
    CHECK(exact.kind == dsprop::WaveKind::ModeExact);

    // same mode fed through the honest spherical-means machinery
    const auto datum3 = [&mode](const Point3& y) {
        return mode.amplitude *
               std::exp(cx(0.0, mode.xi[0] * y[0] + mode.xi[1] * y[1] + mode.xi[2] * y[2]));
    };
    const auto kirchhoff = dsprop::make_kirchhoff_solution(datum3, q);
    CHECK(kirchhoff.kind == dsprop::WaveKind::Kirchhoff3d);
    const Point3 x{0.1, 0.2, 0.3};
    for (const double s : {0.2, 0.8})
        CHECK(std::abs(exact.evaluate(x, s) - kirchhoff.evaluate(x, s)) < 1e-6);

    // and through the 1d half-sum for a mode pointing along x
    const dsprop::FourierMode mode1{{1.5, 0.0, 0.0}, cx(1.0, 0.0)};
    const auto exact1 = dsprop::make_mode_wave_solution(mode1);
    const auto dal = dsprop::make_dalembert_solution(
        [&mode1](double x1) { return std::exp(cx(0.0, mode1.xi[0] * x1)); });
    CHECK(dal.kind == dsprop::WaveKind::Dalembert1d);
    for (const double s : {0.2, 0.8})
        CHECK(std::abs(exact1.evaluate(x, s) - dal.evaluate(x, s)) < 1e-14);
}
