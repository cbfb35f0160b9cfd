#include "dsprop/clifford.hpp"

#include <cmath>
#include <stdexcept>

namespace dsprop {

Matrix4 Matrix4::identity() {
    Matrix4 m;
    for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
}

Matrix4 Matrix4::diag(cx a, cx b, cx c, cx d) {
    Matrix4 m;
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    return m;
}

Matrix4 Matrix4::operator+(const Matrix4& o) const {
    Matrix4 r;
    for (std::size_t k = 0; k < 16; ++k) r.a_[k] = a_[k] + o.a_[k];
    return r;
}

Matrix4 Matrix4::operator-(const Matrix4& o) const {
    Matrix4 r;
    for (std::size_t k = 0; k < 16; ++k) r.a_[k] = a_[k] - o.a_[k];
    return r;
}

Matrix4 Matrix4::operator*(const Matrix4& o) const {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const cx aik = (*this)(i, k);
            if (aik == cx(0.0)) continue;
            for (int j = 0; j < 4; ++j) r(i, j) += aik * o(k, j);
        }
    return r;
}

Matrix4 Matrix4::operator*(cx s) const {
    Matrix4 r;
    for (std::size_t k = 0; k < 16; ++k) r.a_[k] = a_[k] * s;
    return r;
}

SpinorValue Matrix4::operator*(const SpinorValue& v) const {
    SpinorValue r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return r;
}

Matrix4 Matrix4::adjoint() const {
    Matrix4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

bool Matrix4::is_diagonal(double tol) const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && std::abs((*this)(i, j)) > tol) return false;
    return true;
}

double Matrix4::max_abs() const {
    double m = 0.0;
    for (const cx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

Matrix4 anticommutator(const Matrix4& a, const Matrix4& b) { return a * b + b * a; }

SpinorValue operator+(const SpinorValue& a, const SpinorValue& b) {
    SpinorValue r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] + b[i];
    return r;
}

SpinorValue operator-(const SpinorValue& a, const SpinorValue& b) {
    SpinorValue r;
    for (int i = 0; i < 4; ++i) r[i] = a[i] - b[i];
    return r;
}

SpinorValue operator*(cx s, const SpinorValue& v) {
    SpinorValue r;
    for (int i = 0; i < 4; ++i) r[i] = s * v[i];
    return r;
}

SpinorValue& operator+=(SpinorValue& a, const SpinorValue& b) {
    for (int i = 0; i < 4; ++i) a[i] += b[i];
    return a;
}

double max_abs(const SpinorValue& v) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(v[i]));
    return m;
}

const Matrix4& GammaBasis::gamma(int mu) const {
    switch (mu) {
        case 0: return g0;
        case 1: return g1;
        case 2: return g2;
        case 3: return g3;
        default: throw std::out_of_range("gamma index must be 0..3");
    }
}

GammaBasis standard_basis() {
    const cx i(0.0, 1.0);
    GammaBasis b;
    b.g0 = Matrix4::diag(1.0, 1.0, -1.0, -1.0);

    // gamma^k = [[0, sigma_k], [-sigma_k, 0]]
    b.g1(0, 3) = 1.0;
    b.g1(1, 2) = 1.0;
    b.g1(2, 1) = -1.0;
    b.g1(3, 0) = -1.0;

    b.g2(0, 3) = -i;
    b.g2(1, 2) = i;
    b.g2(2, 1) = i;
    b.g2(3, 0) = -i;

    b.g3(0, 2) = 1.0;
    b.g3(1, 3) = -1.0;
    b.g3(2, 0) = -1.0;
    b.g3(3, 1) = 1.0;
    return b;
}

Matrix4 spatial_gamma(const GammaBasis& basis, const std::array<double, 3>& xi) {
    return basis.g1 * cx(xi[0]) + basis.g2 * cx(xi[1]) + basis.g3 * cx(xi[2]);
}

double minkowski_eta(int mu, int nu) {
    if (mu != nu) return 0.0;
    return mu == 0 ? 1.0 : -1.0;
}

std::array<Matrix4, 4> diagonal_products(const GammaBasis& b) {
    const cx i(0.0, 1.0);
    return {Matrix4::identity(), b.g0, b.g1 * b.g2, (-i) * (b.g3 * b.g0 * b.g1 * b.g2 * b.g3)};
}

} // namespace dsprop
