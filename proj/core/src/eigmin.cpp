#include "crs/eigmin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "crs/rng.hpp"

namespace crs {

namespace {

// Number of eigenvalues of the tridiagonal (alpha, beta) strictly below x,
// by the Sturm sequence sign count.
int sturm_count_below(const Vector& alpha, const Vector& beta, double x) {
    int count = 0;
    double d = alpha[0] - x;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < alpha.size(); ++i) {
        if (d == 0.0) d = -std::numeric_limits<double>::min();
        d = (alpha[i] - x) - beta[i - 1] * beta[i - 1] / d;
        if (d < 0.0) ++count;
    }
    return count;
}

double tridiag_largest_eigenvalue(const Vector& alpha, const Vector& beta) {
    const std::size_t k = alpha.size();
    double lo = alpha[0], hi = alpha[0];
    for (std::size_t i = 0; i < k; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(beta[i - 1]);
        if (i + 1 < k) radius += std::abs(beta[i]);
        lo = std::min(lo, alpha[i] - radius);
        hi = std::max(hi, alpha[i] + radius);
    }
    if (lo >= hi) return lo;
    hi += 1e-12 * (hi - lo) + std::numeric_limits<double>::min();
    for (int it = 0;
         it < 200 && hi - lo > 4e-16 * std::max({std::abs(lo), std::abs(hi), 1.0}); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count_below(alpha, beta, mid) >= static_cast<int>(k))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Solves (T - lambda I) z = rhs in place, T tridiagonal, by banded Gaussian
// elimination with partial pivoting (one fill-in superdiagonal). Near-zero
// pivots are floored: the system is intentionally near-singular during
// inverse iteration.
void shifted_tridiag_solve(const Vector& alpha, const Vector& beta, double lambda,
                           Vector& rhs) {
    const std::size_t k = alpha.size();
    Vector d(k), e(k, 0.0), f(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) d[i] = alpha[i] - lambda;
    for (std::size_t i = 0; i + 1 < k; ++i) e[i] = beta[i];

    double scale = std::abs(lambda);
    for (std::size_t i = 0; i < k; ++i) scale = std::max(scale, std::abs(alpha[i]));
    const double floor = 1e-290 + 1e-20 * scale;

    for (std::size_t i = 0; i + 1 < k; ++i) {
        const double sub = beta[i];
        if (std::abs(sub) > std::abs(d[i])) {
            // Row i+1 currently reads (sub, d[i+1], e[i+1]); swap it up.
            std::swap(rhs[i], rhs[i + 1]);
            const double ri0 = d[i], ri1 = e[i], ri2 = f[i];
            d[i] = sub;
            e[i] = d[i + 1];
            f[i] = e[i + 1];
            const double m = ri0 / d[i];
            d[i + 1] = ri1 - m * e[i];
            e[i + 1] = ri2 - m * f[i];
            rhs[i + 1] -= m * rhs[i];
        } else {
            if (std::abs(d[i]) < floor) d[i] = (d[i] < 0.0 ? -floor : floor);
            const double m = sub / d[i];
            d[i + 1] -= m * e[i];
            e[i + 1] -= m * f[i];
            rhs[i + 1] -= m * rhs[i];
        }
    }
    if (std::abs(d[k - 1]) < floor) d[k - 1] = (d[k - 1] < 0.0 ? -floor : floor);

    for (std::size_t ii = k; ii-- > 0;) {
        double s = rhs[ii];
        if (ii + 1 < k) s -= e[ii] * rhs[ii + 1];
        if (ii + 2 < k) s -= f[ii] * rhs[ii + 2];
        rhs[ii] = s / d[ii];
        // Keep inverse iteration from overflowing on the near-null system.
        if (!std::isfinite(rhs[ii])) rhs[ii] = (s < 0.0 ? -1.0 : 1.0) * 1e290;
    }
}

Vector tridiag_eigenvector(const Vector& alpha, const Vector& beta, double lambda) {
    const std::size_t k = alpha.size();
    if (k == 1) return {1.0};
    Vector u(k);
    for (std::size_t i = 0; i < k; ++i)
        u[i] = 1.0 + 1e-3 * static_cast<double>(i % 7);  // deterministic non-degenerate start
    for (int pass = 0; pass < 2; ++pass) {
        shifted_tridiag_solve(alpha, beta, lambda, u);
        const double nn = vec::norm(u);
        if (nn == 0.0 || !std::isfinite(nn)) {
            u.assign(k, 0.0);
            u[k - 1] = 1.0;
            break;
        }
        vec::scale(1.0 / nn, u);
    }
    return u;
}

}  // namespace

int lanczos_iteration_cap(std::size_t n, double norm_bound, double epsilon, double delta) {
    const double cap =
        std::log(static_cast<double>(n) / (delta * delta)) / (2.0 * std::sqrt(2.0)) *
        std::sqrt(std::max(norm_bound, 0.0) / epsilon);
    int iters = static_cast<int>(std::ceil(cap));
    iters = std::max(iters, 1);
    return std::min<std::size_t>(n, static_cast<std::size_t>(iters));
}

EigEstimate lanczos_min_eig(const SymmetricOperator& op, double epsilon, double delta,
                            std::uint64_t seed, double exit_tol) {
    if (op.dim() == 0) throw std::invalid_argument("lanczos_min_eig: empty operator");
    if (!(epsilon > 0.0)) throw std::invalid_argument("lanczos_min_eig: epsilon must be > 0");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("lanczos_min_eig: delta must lie in (0,1)");
    if (exit_tol <= 0.0) exit_tol = epsilon;

    const std::size_t n = op.dim();
    const double upper = op.norm_upper_bound();
    const int cap = lanczos_iteration_cap(n, upper, epsilon, delta);
    const double breakdown = 1e-14 * std::max(1.0, 2.0 * upper);

    Rng rng(seed);
    std::vector<Vector> basis;
    basis.push_back(rng.unit_vector(n));

    Vector alpha, beta;
    Vector ritz_vec;  // eigenvector of the current tridiagonal
    double theta_m = 0.0;
    int iters = 0;

    for (int k = 0; k < cap; ++k) {
        const Vector& q = basis.back();
        Vector w = op.apply(q);
        ++iters;
        // Lanczos step on U*I - A.
        for (std::size_t i = 0; i < n; ++i) w[i] = upper * q[i] - w[i];

        const double a_k = vec::dot(q, w);
        alpha.push_back(a_k);
        vec::axpy(-a_k, q, w);
        if (k > 0) vec::axpy(-beta[k - 1], basis[k - 1], w);
        // Full reorthogonalization, two sweeps.
        for (int sweep = 0; sweep < 2; ++sweep)
            for (const Vector& b : basis) vec::axpy(-vec::dot(b, w), b, w);
        const double b_k = vec::norm(w);

        theta_m = tridiag_largest_eigenvalue(alpha, beta);
        ritz_vec = tridiag_eigenvector(alpha, beta, theta_m);
        const double residual = b_k * std::abs(ritz_vec.back());
        const double theta_a = upper - theta_m;
        if (residual <= exit_tol * std::max(1.0, std::abs(theta_a))) break;
        if (b_k <= breakdown) break;  // invariant subspace found
        if (k + 1 >= cap) break;

        vec::scale(1.0 / b_k, w);
        beta.push_back(b_k);
        basis.push_back(std::move(w));
    }

    Vector v(n, 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j) vec::axpy(ritz_vec[j], basis[j], v);
    vec::scale(1.0 / vec::norm(v), v);

    EigEstimate est;
    est.v = std::move(v);
    est.theta = vec::dot(est.v, op.apply(est.v));  // exact Rayleigh quotient
    est.iterations = iters;
    est.epsilon = epsilon;
    return est;
}

}  // namespace crs
