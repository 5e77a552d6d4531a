#pragma once

#include <cstdint>

#include "crs/operators.hpp"
#include "crs/vec.hpp"

namespace crs {

/// Approximate minimum eigenpair. theta is the Rayleigh quotient of v, so
/// theta >= lambda_min always holds.
struct EigEstimate {
    double theta = 0.0;
    Vector v;
    int iterations = 0;
    double epsilon = 0.0;
};

/**
 * Lanczos estimate of the minimum eigenvalue of a symmetric operator.
 *
 * Runs the Lanczos iteration on U*I - A (U = op.norm_upper_bound()) for its
 * largest eigenvalue, starting from a seed-derived vector uniform on the
 * unit sphere. The Krylov basis is kept fully reorthogonalized; the
 * tridiagonal eigenproblem is solved by bisection on the Sturm sequence.
 *
 * With probability at least 1 - delta over the starting vector,
 * theta <= lambda_min + epsilon within
 *
 *   min{ n, ceil( log(n/delta^2) / (2 sqrt 2) * sqrt(U / epsilon) ) }
 *
 * iterations. The iteration also exits early once the Ritz residual
 * ||A v - theta v|| drops below exit_tol * max(1, |theta|); exit_tol
 * defaults to epsilon. Matvecs consumed: one per iteration plus one to
 * evaluate the returned Rayleigh quotient.
 *
 * Throws std::invalid_argument for epsilon <= 0, delta outside (0,1), or an
 * empty operator.
 */
EigEstimate lanczos_min_eig(const SymmetricOperator& op, double epsilon, double delta,
                            std::uint64_t seed, double exit_tol = 0.0);

/// The Lemma-style iteration cap used by lanczos_min_eig, exposed for tests.
int lanczos_iteration_cap(std::size_t n, double norm_bound, double epsilon, double delta);

}  // namespace crs
