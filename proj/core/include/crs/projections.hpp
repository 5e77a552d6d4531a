#pragma once

#include "crs/vec.hpp"

namespace crs {

/// A point (x, y) of the lifted space, where y stands in for ||x||^2.
struct LiftedPoint {
    Vector x;
    double y = 0.0;

    std::size_t dim() const { return x.size(); }
};

namespace lifted {

inline double dot(const LiftedPoint& a, const LiftedPoint& b) {
    return vec::dot(a.x, b.x) + a.y * b.y;
}

inline double norm(const LiftedPoint& a) { return std::sqrt(dot(a, a)); }

inline LiftedPoint axpy(double alpha, const LiftedPoint& p, const LiftedPoint& q) {
    LiftedPoint r = q;
    vec::axpy(alpha, p.x, r.x);
    r.y += alpha * p.y;
    return r;
}

inline LiftedPoint sub(const LiftedPoint& a, const LiftedPoint& b) {
    return axpy(-1.0, b, a);
}

}  // namespace lifted

/**
 * Unique root mu* in [max{0, -2 y0}, infinity) of
 *
 *   h(mu) = mu^3/2 + (y0+1) mu^2 + (2 y0 + 1/2) mu - x0_norm_sq + y0,
 *
 * the stationarity equation of the projection onto {(x,y): ||x||^2 <= y}.
 * h is strictly increasing on that interval (h' >= 1/2), so a safeguarded
 * Newton/bisection hybrid on a sign-change bracket cannot miss it. Requires
 * x0_norm_sq > y0; the residual at the returned root satisfies
 * |h(mu*)| <= 1e-13 * max(1, x0_norm_sq) whenever a double can represent
 * the root that accurately.
 */
double cubic_mu_root(double x0_norm_sq, double y0);

/// Euclidean projection onto S = {(x, y): ||x||^2 <= y}. Exact, O(n).
LiftedPoint project_S(const LiftedPoint& p);

/// Euclidean projection onto {(x, y): ||x||^2 <= y, y >= l}, l >= 0.
LiftedPoint project_Bhat(const LiftedPoint& p, double l);

}  // namespace crs
