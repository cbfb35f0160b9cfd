#include "dsprop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dsprop/errors.hpp"

namespace dsprop {

namespace {

// 15-point Kronrod extension of 7-point Gauss (positive half; symmetric).
const double kXgk[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897, 0.8648644233597690727897128,
    0.7415311855993944398638648, 0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
const double kWgk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007, 0.1047900103222501838398763,
    0.1406532597155259187451896, 0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
// Gauss weights pair with the odd Kronrod abscissae (indices 1,3,5,7).
const double kWg[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678, 0.3818300505051189449503698,
    0.4179591836734693877551020};

struct Segment {
    double a, b;
    cx value;
    double err;
};

void gk15(const Integrand& f, double a, double b, cx& value, double& err, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cx kronrod(0.0), gauss(0.0);
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kXgk[i];
        cx fsum;
        if (i == 7) {
            fsum = f(c);
            evals += 1;
        } else {
            fsum = f(c - dx) + f(c + dx);
            evals += 2;
        }
        kronrod += kWgk[i] * fsum;
        // The embedded G7 nodes sit at the odd Kronrod indices (incl. center).
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    value = h * kronrod;
    err = std::abs(h) * std::abs(kronrod - gauss);
}

} // namespace

QuadratureResult integrate_gk(const Integrand& f, double a, double b, const QuadratureSpec& q) {
    QuadratureResult res;
    if (a == b) return res;

    std::vector<Segment> segs;
    Segment s0{a, b, cx(0.0), 0.0};
    gk15(f, a, b, s0.value, s0.err, res.evaluations);
    segs.push_back(s0);

    for (;;) {
        cx total(0.0);
        double toterr = 0.0;
        for (const Segment& s : segs) {
            total += s.value;
            toterr += s.err;
        }
        const double tol = std::max(q.abs_tol, q.rel_tol * std::abs(total));
        if (toterr <= tol) {
            res.value = total;
            res.error_estimate = toterr;
            res.subdivisions = static_cast<int>(segs.size()) - 1;
            return res;
        }
        if (static_cast<int>(segs.size()) >= q.max_subdivisions)
            throw QuadratureBudgetExceeded("integrate_gk: max_subdivisions reached");

        auto worst = std::max_element(segs.begin(), segs.end(),
                                      [](const Segment& x, const Segment& y) { return x.err < y.err; });
        const Segment old = *worst;
        const double mid = 0.5 * (old.a + old.b);
        Segment left{old.a, mid, cx(0.0), 0.0};
        Segment right{mid, old.b, cx(0.0), 0.0};
        gk15(f, left.a, left.b, left.value, left.err, res.evaluations);
        gk15(f, right.a, right.b, right.value, right.err, res.evaluations);
        *worst = left;
        segs.push_back(right);
    }
}

QuadratureResult integrate_to_cone(const Integrand& f, double endpoint, const QuadratureSpec& q) {
    QuadratureResult res;
    if (endpoint <= 0.0) return res;
    const double offset = q.boundary_offset * endpoint;
    res = integrate_gk(f, 0.0, endpoint - offset, q);
    res.value += offset * f(endpoint - 0.5 * offset);
    res.evaluations += 1;
    return res;
}

} // namespace dsprop
