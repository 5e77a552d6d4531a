#pragma once

#include <string>

#include "crs/operators.hpp"
#include "crs/projections.hpp"
#include "crs/vec.hpp"

namespace crs {

/// min_x  1/2 x'Ax + b'x + (rho/3) ||x||^3
struct CrsProblem {
    SymmetricOperator A;
    Vector b;
    double rho = 1.0;

    CrsProblem() = default;
    CrsProblem(SymmetricOperator a, Vector rhs, double rho_);

    std::size_t dim() const { return b.size(); }
};

enum class Variant { SP, AP, EXACT };

const char* variant_name(Variant v);
Variant variant_from_name(const std::string& name);

/**
 * Parameters of the lifted objective
 *
 *   1/2 x'(A + s I)x + b'x + (rho/3) y^{3/2} - (s/2) y   on  ||x||^2 <= y, y >= l.
 *
 * The variant only selects the shift s and the lower bound l from an
 * eigenvalue estimate theta of A:
 *   SP     s = -theta + epsilon
 *   AP     s = -theta
 *   EXACT  s = -lambda_min (theta passed exactly)
 * with l = s^2 / rho^2 throughout. When theta >= 0 the problem is already
 * convex in x and the spec degenerates to s = 0, l = 0 (the unshifted
 * lifted problem over the paraboloid region).
 */
struct SurrogateSpec {
    Variant variant = Variant::SP;
    double theta = 0.0;
    double epsilon = 0.0;
    double shift = 0.0;
    double lower_bound = 0.0;

    bool convex_branch() const { return shift == 0.0; }
};

SurrogateSpec make_surrogate(Variant variant, double theta, double epsilon, double rho);

double f1_value(const CrsProblem& prob, const Vector& x);
Vector f1_grad(const CrsProblem& prob, const Vector& x);

/// Value and gradient in one matvec.
struct ValueGrad {
    double value = 0.0;
    Vector grad;
};
ValueGrad f1_value_grad(const CrsProblem& prob, const Vector& x);

/// Lifted objective value and gradient, sharing a single matvec.
/// Requires p.y >= 0 (throws std::domain_error otherwise).
struct LiftedValueGrad {
    double value = 0.0;
    LiftedPoint grad;
};
LiftedValueGrad lifted_value_grad(const CrsProblem& prob, const SurrogateSpec& spec,
                                  const LiftedPoint& p);

/**
 * Upper bound on the Lipschitz constant of the lifted gradient restricted to
 * y >= lower_bound: max{ ||A + s I||_inf, rho / (4 sqrt(l)) }. Valid seed for
 * backtracking. Requires spec.lower_bound > 0 (the gradient is not Lipschitz
 * at y = 0).
 */
double lipschitz_gamma(const CrsProblem& prob, const SurrogateSpec& spec);

/// Problem manifest: key=value lines naming the Matrix Market file for A,
/// the plain-text vector for b, and the scalar rho.
CrsProblem load_problem(const std::string& manifest_path);
void save_problem(const CrsProblem& prob, const std::string& manifest_path,
                  const std::string& matrix_path, const std::string& rhs_path);

}  // namespace crs
