#ifndef DSPROP_CLIFFORD_HPP
#define DSPROP_CLIFFORD_HPP

// 4x4 complex matrix algebra and the Dirac gamma matrices in the Dirac
// representation. Entries of the generators are Gaussian integers, so all
// products and anticommutators of basis elements evaluate exactly in double
// precision; tests may compare against integer matrices with operator==.

#include <array>
#include <complex>
#include <cstddef>

namespace dsprop {

using cx = std::complex<double>;
using SpinorValue = std::array<cx, 4>;

class Matrix4 {
  public:
    Matrix4() = default;

    static Matrix4 zero() { return Matrix4(); }
    static Matrix4 identity();
    static Matrix4 diag(cx a, cx b, cx c, cx d);

    cx& operator()(int i, int j) { return a_[static_cast<std::size_t>(4 * i + j)]; }
    const cx& operator()(int i, int j) const { return a_[static_cast<std::size_t>(4 * i + j)]; }

    Matrix4 operator+(const Matrix4& o) const;
    Matrix4 operator-(const Matrix4& o) const;
    Matrix4 operator*(const Matrix4& o) const;
    Matrix4 operator*(cx s) const;
    Matrix4 operator-() const { return *this * cx(-1.0, 0.0); }
    friend Matrix4 operator*(cx s, const Matrix4& m) { return m * s; }

    SpinorValue operator*(const SpinorValue& v) const;

    bool operator==(const Matrix4& o) const { return a_ == o.a_; }
    bool operator!=(const Matrix4& o) const { return !(*this == o); }

    // Conjugate transpose.
    Matrix4 adjoint() const;

    bool is_diagonal(double tol = 0.0) const;
    double max_abs() const;

  private:
    std::array<cx, 16> a_{}; // row-major
};

Matrix4 anticommutator(const Matrix4& a, const Matrix4& b);

SpinorValue operator+(const SpinorValue& a, const SpinorValue& b);
SpinorValue operator-(const SpinorValue& a, const SpinorValue& b);
SpinorValue operator*(cx s, const SpinorValue& v);
SpinorValue& operator+=(SpinorValue& a, const SpinorValue& b);
double max_abs(const SpinorValue& v);

// Dirac representation: gamma^0 = diag(I2, -I2), gamma^k off-diagonal from the
// Pauli matrices. Satisfies {gamma^mu, gamma^nu} = 2 eta^{mu nu} I4 with
// eta = diag(1,-1,-1,-1).
struct GammaBasis {
    Matrix4 g0, g1, g2, g3;

    const Matrix4& gamma(int mu) const;
};

GammaBasis standard_basis();

// xi_1 gamma^1 + xi_2 gamma^2 + xi_3 gamma^3: the spatial symbol a Fourier
// mode turns the derivative part of the Dirac operator into.
Matrix4 spatial_gamma(const GammaBasis& basis, const std::array<double, 3>& xi);

// Minkowski metric signature used throughout: eta^{mu mu} = (1,-1,-1,-1).
double minkowski_eta(int mu, int nu);

// The four mutually commuting diagonal products
//   I4, gamma^0, gamma^1 gamma^2, -i gamma^3 gamma^0 gamma^1 gamma^2 gamma^3.
// They are linearly independent, so simultaneous diagonalization arguments can
// expand any diagonal matrix in this basis.
std::array<Matrix4, 4> diagonal_products(const GammaBasis& basis);

} // namespace dsprop

#endif
