#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dsprop/clifford.hpp"

using dsprop::cx;
using dsprop::GammaBasis;
using dsprop::Matrix4;
using dsprop::SpinorValue;
// SpinorValue is a std::array alias, so its operators do not travel with it
// through argument-dependent lookup; pull them in explicitly.
using dsprop::operator+;
using dsprop::operator-;
using dsprop::operator*;
using dsprop::operator+=;

TEST_CASE("anticommutators reproduce the metric exactly") {
    const GammaBasis g = dsprop::standard_basis();
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            const Matrix4 got = dsprop::anticommutator(g.gamma(mu), g.gamma(nu));
            const Matrix4 want =
                Matrix4::identity() * cx(2.0 * dsprop::minkowski_eta(mu, nu), 0.0);
            // entries are 0 and +-1 times small integers; equality is exact
            CHECK(got == want);
        }
    }
}

TEST_CASE("hermiticity pattern of the standard basis") {
    const GammaBasis g = dsprop::standard_basis();
    CHECK((g.g0.adjoint() - g.g0).max_abs() == 0.0);
    for (int k = 1; k < 4; ++k) CHECK((g.gamma(k).adjoint() + g.gamma(k)).max_abs() == 0.0);
}

TEST_CASE("time gamma squares to the identity, spatial ones to minus it") {
    const GammaBasis g = dsprop::standard_basis();
    CHECK((g.g0 * g.g0 - Matrix4::identity()).max_abs() == 0.0);
    for (int k = 1; k < 4; ++k)
        CHECK((g.gamma(k) * g.gamma(k) + Matrix4::identity()).max_abs() == 0.0);
}

TEST_CASE("gamma index out of range throws") {
    const GammaBasis g = dsprop::standard_basis();
    CHECK_THROWS_AS(g.gamma(4), std::out_of_range);
    CHECK_THROWS_AS(g.gamma(-1), std::out_of_range);
}

TEST_CASE("the four diagonal products are actually diagonal") {
    const GammaBasis g = dsprop::standard_basis();
    const auto prods = dsprop::diagonal_products(g);
    for (const Matrix4& p : prods) CHECK(p.is_diagonal());
    CHECK(prods[0] == Matrix4::identity());
    CHECK(prods[1] == g.g0);
    // g1 g2 is the rotation generator in the 12 plane; it squares to -1
    CHECK((prods[2] * prods[2] + Matrix4::identity()).max_abs() == 0.0);
    // the last one squares to +1 and commutes with the other three
    CHECK((prods[3] * prods[3] - Matrix4::identity()).max_abs() == 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK((prods[static_cast<std::size_t>(i)] * prods[static_cast<std::size_t>(j)] -
                   prods[static_cast<std::size_t>(j)] * prods[static_cast<std::size_t>(i)])
                      .max_abs() == 0.0);
}

TEST_CASE("spatial symbol is linear and squares to -|xi|^2") {
    const GammaBasis g = dsprop::standard_basis();
    const std::array<double, 3> xi{0.7, -1.2, 0.4};
    const Matrix4 s = dsprop::spatial_gamma(g, xi);
    const Matrix4 expect = cx(0.7, 0.0) * g.g1 + cx(-1.2, 0.0) * g.g2 + cx(0.4, 0.0) * g.g3;
    CHECK((s - expect).max_abs() == 0.0);
    const double n2 = 0.7 * 0.7 + 1.2 * 1.2 + 0.4 * 0.4;
    const Matrix4 sq = s * s + Matrix4::identity() * cx(n2, 0.0);
    CHECK(sq.max_abs() < 1e-14);
}

TEST_CASE("matrix-spinor product and spinor arithmetic") {
    const GammaBasis g = dsprop::standard_basis();
    const SpinorValue v{cx(1, 0), cx(0, 1), cx(-2, 0), cx(0.5, -0.5)};
    // g0 flips the sign of the lower two components
    const SpinorValue w = g.g0 * v;
    CHECK(w[0] == v[0]);
    CHECK(w[1] == v[1]);
    CHECK(w[2] == -v[2]);
    CHECK(w[3] == -v[3]);

    SpinorValue a = v;
    a += v;
    const SpinorValue twice = cx(2.0, 0.0) * v;
    CHECK(dsprop::max_abs(a - twice) == 0.0);
    CHECK(dsprop::max_abs(v - v) == 0.0);
    CHECK(dsprop::max_abs(v) == 2.0);
}

TEST_CASE("matrix helpers: diag, adjoint, scalar multiples") {
    const Matrix4 d = Matrix4::diag(cx(1, 1), cx(2, 0), cx(0, -3), cx(-1, 0));
    CHECK(d.is_diagonal());
    CHECK(d(2, 2) == cx(0, -3));
    const Matrix4 da = d.adjoint();
    CHECK(da(0, 0) == cx(1, -1));
    const Matrix4 z = Matrix4::zero();
    CHECK(z.max_abs() == 0.0);
    CHECK((d - d) == z);
    CHECK(((-d) + d) == z);
}
