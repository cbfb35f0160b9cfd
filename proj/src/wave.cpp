#include "dsprop/wave.hpp"

#include <cmath>
#include <vector>

namespace dsprop {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<std::size_t>(n), 0.0);
    w.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (t * p1 - p0) / (t * t - 1.0);
            const double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[static_cast<std::size_t>(i)] = -t;
        x[static_cast<std::size_t>(n - 1 - i)] = t;
        const double wi = 2.0 / ((1.0 - t * t) * dp * dp);
        w[static_cast<std::size_t>(i)] = wi;
        w[static_cast<std::size_t>(n - 1 - i)] = wi;
    }
}

struct SphereNode {
    double x, y, z, w; // weights sum to 1
};

// 26-point Lebedev rule (octahedron vertices, edge midpoints, cube vertices);
// exact for spherical harmonics through degree 7.
std::vector<SphereNode> lebedev26() {
    std::vector<SphereNode> nodes;
    const double a1 = 1.0 / 21.0;
    const double a2 = 4.0 / 105.0;
    const double a3 = 9.0 / 280.0;
    for (int s = -1; s <= 1; s += 2) {
        nodes.push_back({double(s), 0, 0, a1});
        nodes.push_back({0, double(s), 0, a1});
        nodes.push_back({0, 0, double(s), a1});
    }
    const double r = 1.0 / std::sqrt(2.0);
    for (int s = -1; s <= 1; s += 2)
        for (int u = -1; u <= 1; u += 2) {
            nodes.push_back({s * r, u * r, 0, a2});
            nodes.push_back({s * r, 0, u * r, a2});
            nodes.push_back({0, s * r, u * r, a2});
        }
    const double c = 1.0 / std::sqrt(3.0);
    for (int s = -1; s <= 1; s += 2)
        for (int u = -1; u <= 1; u += 2)
            for (int v = -1; v <= 1; v += 2) nodes.push_back({s * c, u * c, v * c, a3});
    return nodes;
}

// Gauss-Legendre in cos(theta) x uniform in phi; exact through degree
// 2*ntheta-1 (>= requested degree).
std::vector<SphereNode> product_rule(int degree) {
    const int ntheta = degree / 2 + 1;
    const int nphi = degree + 1;
    std::vector<double> ct, wt;
    gauss_legendre(ntheta, ct, wt);
    std::vector<SphereNode> nodes;
    nodes.reserve(static_cast<std::size_t>(ntheta * nphi));
    for (int i = 0; i < ntheta; ++i) {
        const double c = ct[static_cast<std::size_t>(i)];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int j = 0; j < nphi; ++j) {
            const double ph = 2.0 * kPi * j / nphi;
            nodes.push_back({s * std::cos(ph), s * std::sin(ph), c,
                             wt[static_cast<std::size_t>(i)] / (2.0 * nphi)});
        }
    }
    return nodes;
}

const std::vector<SphereNode>& sphere_rule(int degree) {
    static const std::vector<SphereNode> leb = lebedev26();
    if (degree <= 7) return leb;
    // Cache per degree; checks reuse a handful of degrees.
    static std::vector<std::pair<int, std::vector<SphereNode>>> cache;
    for (const auto& e : cache)
        if (e.first == degree) return e.second;
    cache.emplace_back(degree, product_rule(degree));
    return cache.back().second;
}

} // namespace

double FourierMode::abs_xi() const {
    return std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
}

double mode_wave(const Point3& xi, double s) {
    const double axi = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    return std::cos(s * axi);
}

cx dalembert_1d(const std::function<cx(double)>& phi, double x, double s) {
    return 0.5 * (phi(x + s) + phi(x - s));
}

cx spherical_mean(const std::function<cx(const Point3&)>& phi, const Point3& x, double s,
                  const QuadratureSpec& q) {
    if (s == 0.0) return phi(x);
    cx sum(0.0);
    for (const SphereNode& n : sphere_rule(q.sphere_poly_degree))
        sum += n.w * phi({x[0] + s * n.x, x[1] + s * n.y, x[2] + s * n.z});
    return sum;
}

cx kirchhoff_3d(const std::function<cx(const Point3&)>& phi, const Point3& x, double s,
                const QuadratureSpec& q) {
    if (s == 0.0) return phi(x);
    // g(sigma) = sigma * mean(sigma) extends to an odd function of sigma, so
    // the centered stencil stays symmetric even for s < 2h.
    const auto g = [&](double sigma) -> cx {
        const double m = std::abs(sigma);
        const cx v = cx(m) * spherical_mean(phi, x, m, q);
        return sigma < 0.0 ? -v : v;
    };
    const double h = q.fd_step;
    return (g(s - 2.0 * h) - 8.0 * g(s - h) + 8.0 * g(s + h) - g(s + 2.0 * h)) / (12.0 * h);
}

WaveSolution make_mode_wave_solution(const FourierMode& mode) {
    return {WaveKind::ModeExact, [mode](const Point3& x, double s) {
                const double ph = mode.xi[0] * x[0] + mode.xi[1] * x[1] + mode.xi[2] * x[2];
                return mode.amplitude * std::exp(cx(0.0, ph)) * mode_wave(mode.xi, s);
            }};
}

WaveSolution make_dalembert_solution(std::function<cx(double)> datum) {
    return {WaveKind::Dalembert1d, [datum = std::move(datum)](const Point3& x, double s) {
                return dalembert_1d(datum, x[0], s);
            }};
}

WaveSolution make_kirchhoff_solution(std::function<cx(const Point3&)> datum, QuadratureSpec q) {
    return {WaveKind::Kirchhoff3d, [datum = std::move(datum), q](const Point3& x, double s) {
                return kirchhoff_3d(datum, x, s, q);
            }};
}

} // namespace dsprop
