#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "crs/solvers.hpp"

namespace crs {

void dense_eig_sym(const std::vector<double>& a, std::size_t n, Vector& eigenvalues,
                   std::vector<double>& eigenvectors_colmajor) {
    if (a.size() != n * n) throw std::invalid_argument("dense_eig_sym: size mismatch");
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a[i * n + j];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("dense_eig_sym: eigendecomposition failed");
    eigenvalues.assign(n, 0.0);
    eigenvectors_colmajor.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = es.eigenvalues()(i);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            eigenvectors_colmajor[j * n + i] = es.eigenvectors()(i, j);
}

namespace {

// psi(lambda) = ||(A + lambda I)^+ b|| - lambda / rho in the eigenbasis,
// decreasing on (max(0, -lambda_1), infinity).
double secular(const Vector& evals, const Vector& b_hat, double lambda, double rho,
               double null_tol) {
    double s = 0.0;
    for (std::size_t i = 0; i < evals.size(); ++i) {
        const double d = evals[i] + lambda;
        if (std::abs(d) <= null_tol) continue;  // pseudo-inverse drops the null space
        const double r = b_hat[i] / d;
        s += r * r;
    }
    return std::sqrt(s) - lambda / rho;
}

}  // namespace

OracleSolution dense_oracle_solve(const CrsProblem& prob) {
    const std::size_t n = prob.dim();
    if (n > 500)
        throw std::invalid_argument("dense_oracle_solve: n exceeds the dense-oracle limit");

    Vector evals;
    std::vector<double> vecs;
    dense_eig_sym(prob.A.to_dense(), n, evals, vecs);

    Vector b_hat(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) b_hat[j] += vecs[j * n + i] * prob.b[i];

    const double lambda_min = evals[0];
    const double scale = std::max({std::abs(evals[0]), std::abs(evals[n - 1]), 1.0});
    const double null_tol = 1e-10 * scale;
    const double lambda_lo = std::max(0.0, -lambda_min);

    // Mass of b on the eigenspace pinned at the left endpoint.
    double b_null_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(evals[i] + lambda_lo) <= null_tol) b_null_sq += b_hat[i] * b_hat[i];

    OracleSolution sol;
    sol.lambda_min = lambda_min;
    sol.v_min.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) sol.v_min[i] = vecs[0 * n + i];

    double lambda_star = lambda_lo;
    double correction = 0.0;  // coefficient on v_min in the hard case

    const bool b_touches_null = std::sqrt(b_null_sq) > 1e-12 * std::max(1.0, vec::norm(prob.b));
    const double psi_lo = secular(evals, b_hat, lambda_lo, prob.rho, null_tol);

    if (!b_touches_null && psi_lo <= 0.0) {
        // Hard case: boundary multiplier, eigenvector step fills the norm gap.
        sol.hard_case = true;
        double pinv_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = evals[i] + lambda_lo;
            if (std::abs(d) <= null_tol) continue;
            pinv_sq += (b_hat[i] / d) * (b_hat[i] / d);
        }
        const double target_sq = (lambda_lo / prob.rho) * (lambda_lo / prob.rho);
        correction = std::sqrt(std::max(0.0, target_sq - pinv_sq));
    } else {
        // Easy case: unique interior root of the decreasing secular function.
        double lo = lambda_lo, hi = std::max(1.0, lambda_lo * 2.0 + 1.0);
        while (secular(evals, b_hat, hi, prob.rho, null_tol) > 0.0) hi *= 2.0;
        for (int it = 0; it < 300 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            if (secular(evals, b_hat, mid, prob.rho, null_tol) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        lambda_star = 0.5 * (lo + hi);
    }

    Vector x_hat(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = evals[i] + lambda_star;
        if (std::abs(d) <= null_tol) continue;
        x_hat[i] = -b_hat[i] / d;
    }
    if (sol.hard_case && n > 0) x_hat[0] += correction;

    sol.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) sol.x[i] += vecs[j * n + i] * x_hat[j];
    sol.lambda = lambda_star;

    double quad = 0.0, lin = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        quad += evals[i] * x_hat[i] * x_hat[i];
        lin += b_hat[i] * x_hat[i];
    }
    const double nx = vec::norm(x_hat);
    sol.fval = 0.5 * quad + lin + prob.rho / 3.0 * nx * nx * nx;
    return sol;
}

}  // namespace crs
