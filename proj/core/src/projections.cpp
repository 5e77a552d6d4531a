#include "crs/projections.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace crs {

namespace {

// Double-double value (hi + lo, non-overlapping). The cubic residual near
// the root is the difference of two nearly equal products, so a plain
// double evaluation cannot resolve its sign between adjacent doubles; the
// compensated form can.
struct Dd {
    double hi = 0.0;
    double lo = 0.0;
};

Dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

Dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

Dd dd_add(Dd a, Dd b) {
    Dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    Dd t = two_sum(s.hi, s.lo);
    return t;
}

Dd dd_add(Dd a, double b) { return dd_add(a, Dd{b, 0.0}); }

Dd dd_mul(Dd a, Dd b) {
    Dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return two_sum(p.hi, p.lo);
}

// h(mu) = (y0 + mu/2) (1 + mu)^2 - x0sq, the factored form of the cubic.
Dd h_dd(double mu, double y0, double x0sq) {
    const Dd y = dd_add(Dd{y0, 0.0}, Dd{0.5 * mu, 0.0});
    const Dd one_mu = two_sum(1.0, mu);
    const Dd sq = dd_mul(one_mu, one_mu);
    return dd_add(dd_mul(y, sq), -x0sq);
}

double h_value(double mu, double y0, double x0sq) {
    return h_dd(mu, y0, x0sq).hi;
}

double h_derivative(double mu, double y0) {
    return (1.0 + mu) * (1.5 * mu + 2.0 * y0 + 0.5);
}

}  // namespace

double cubic_mu_root(double x0_norm_sq, double y0) {
    if (!(x0_norm_sq > y0))
        throw std::invalid_argument("cubic_mu_root: requires ||x0||^2 > y0");

    const double tol = 1e-13 * std::max(1.0, x0_norm_sq);
    double lo = std::max(0.0, -2.0 * y0);
    double h_lo = h_value(lo, y0, x0_norm_sq);
    if (h_lo == 0.0) return lo;  // x0 = 0 with y0 < 0 lands exactly here

    // h(lo) < 0 by construction; double the width until the sign flips.
    double width = 1.0;
    double hi = lo + width;
    double h_hi = h_value(hi, y0, x0_norm_sq);
    while (h_hi <= 0.0) {
        if (h_hi == 0.0) return hi;
        lo = hi;
        h_lo = h_hi;
        width *= 2.0;
        hi = lo + width;
        h_hi = h_value(hi, y0, x0_norm_sq);
    }

    // Safeguarded Newton: fall back to bisection whenever the Newton step
    // leaves the bracket or fails to shrink |h|.
    double mu = 0.5 * (lo + hi);
    double h_mu = h_value(mu, y0, x0_norm_sq);
    for (int it = 0; it < 200; ++it) {
        if (std::abs(h_mu) <= tol) return mu;
        if (h_mu > 0.0) {
            hi = mu;
            h_hi = h_mu;
        } else {
            lo = mu;
            h_lo = h_mu;
        }
        if (std::nextafter(lo, hi) >= hi) break;  // bracket is adjacent doubles

        const double dh = h_derivative(mu, y0);
        double next = mu - h_mu / dh;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        double h_next = h_value(next, y0, x0_norm_sq);
        if (std::abs(h_next) >= std::abs(h_mu)) {
            next = 0.5 * (lo + hi);
            h_next = h_value(next, y0, x0_norm_sq);
        }
        mu = next;
        h_mu = h_next;
    }
    // Out of resolution: return the endpoint with the smaller residual.
    return std::abs(h_lo) <= std::abs(h_hi) ? lo : hi;
}

LiftedPoint project_S(const LiftedPoint& p) {
    const double x0sq = vec::norm_sq(p.x);
    if (x0sq <= p.y) return p;  // boundary inputs count as feasible

    const double mu = cubic_mu_root(x0sq, p.y);
    LiftedPoint out;
    out.x = vec::scaled(1.0 / (1.0 + mu), p.x);
    out.y = p.y + 0.5 * mu;
    return out;
}

LiftedPoint project_Bhat(const LiftedPoint& p, double l) {
    if (l < 0.0) throw std::invalid_argument("project_Bhat: lower bound must be >= 0");
    LiftedPoint s = project_S(p);
    if (s.y >= l) return s;
    const double x0_norm = vec::norm(p.x);
    const double sqrt_l = std::sqrt(l);
    if (x0_norm < sqrt_l) return {p.x, l};
    return {vec::scaled(sqrt_l / x0_norm, p.x), l};
}

}  // namespace crs
