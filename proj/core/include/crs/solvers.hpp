#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "crs/eigmin.hpp"
#include "crs/model.hpp"
#include "crs/projections.hpp"

namespace crs {

enum class Method { APG, BBM };
const char* method_name(Method m);
Method method_from_name(const std::string& name);

enum class SolveStatus { Converged, MaxIter, Degenerate };
const char* status_name(SolveStatus s);

struct SolverConfig {
    int max_iter = 5000;
    double tol = 1e-8;   // projected-gradient residual, relative to max(1, ||grad||)
    double xi = 2.0;     // backtracking growth factor, > 1
    double L0 = 0.0;     // initial Lipschitz guess; 0 = seed from lipschitz_gamma
    bool restart = true; // function-value restart for APG
    std::uint64_t seed = 0;

    void validate() const;
};

/// Per-iterate view handed to the optional stop predicate. The gradient is
/// the lifted gradient at the accepted iterate; no extra matvec is spent.
struct IterateView {
    int iteration = 0;
    const LiftedPoint& point;
    double value = 0.0;
    const LiftedPoint& grad;
};
using StopPredicate = std::function<bool(const IterateView&)>;

/// One logged APG reset event (Algorithm lines that shrink the y part after
/// the main loop): the objective may only go down.
struct ResetEvent {
    double f_before = 0.0;
    double f_after = 0.0;
};

struct InnerSolveResult {
    LiftedPoint point;
    double value = 0.0;   // lifted objective at point (post-reset)
    int iterations = 0;
    SolveStatus status = SolveStatus::MaxIter;
    std::optional<ResetEvent> reset;
};

/// Accelerated projected gradient with backtracking line search, momentum
/// restart, and the final y-reset. Infeasible starts are projected.
InnerSolveResult apg_solve(const CrsProblem& prob, const SurrogateSpec& spec,
                           const LiftedPoint& start, const SolverConfig& cfg,
                           const StopPredicate& stop = {});

/// Projected Barzilai-Borwein method: alternating BB1/BB2 steps clamped to
/// [1e-10, 1e10], Armijo backtracking on the projection arc, same
/// termination and reset as apg_solve.
InnerSolveResult bbm_solve(const CrsProblem& prob, const SurrogateSpec& spec,
                           const LiftedPoint& start, const SolverConfig& cfg,
                           const StopPredicate& stop = {});

/**
 * Maps a feasible lifted point back to a CRS iterate. On the boundary
 * ||x||^2 = y the x part is returned as is; otherwise x + t v with t solving
 * ||x + t v||^2 = y and t * (v'Ax + b'v + s x'v) <= 0 (ties broken toward
 * t >= 0). v is the unit eigenvector estimate matching spec.theta.
 */
Vector recover_solution(const CrsProblem& prob, const SurrogateSpec& spec,
                        const LiftedPoint& p, const Vector& v);

struct SolveReport {
    Vector x;
    double fval = 0.0;
    int iterations = 0;
    std::uint64_t matvecs = 0;
    double eig_time = 0.0;
    double loop_time = 0.0;
    SolveStatus status = SolveStatus::MaxIter;
    Method method = Method::APG;
    Variant variant = Variant::SP;
    double theta = 0.0;       // eigenvalue estimate used
    int eig_iterations = 0;

    /// CSV row: method,variant,n,fval,iter,matvecs,time,time_eig
    std::string csv_row(std::size_t n) const;
    static std::string csv_header();
};

/**
 * End-to-end CRS solve: Lanczos eigenvalue estimate, surrogate construction
 * (convex branch when theta >= 0), first-order solve from the lifted start,
 * recovery, and a recomputed objective. epsilon drives both the surrogate
 * shift and the Lanczos exit accuracy; eig_epsilon, when positive, widens
 * only the Lanczos iteration budget (the Lemma-style cap).
 */
SolveReport solve_crs(const CrsProblem& prob, Method method, Variant variant, double epsilon,
                      double delta, const SolverConfig& cfg,
                      const Vector* start_hint = nullptr, double eig_epsilon = 0.0,
                      const StopPredicate& stop = {});

/// Minimizer of the cubic model along -g: s = -alpha* g with alpha* the
/// nonnegative root of sigma ||g||^3 a^2 + (g'Bg) a - ||g||^2 = 0.
Vector cauchy_point(const SymmetricOperator& B, const Vector& g, double sigma);

/// 1/2 s'Bs + g's + (sigma/3)||s||^3 and its gradient, one matvec.
ValueGrad cubic_model_value_grad(const SymmetricOperator& B, const Vector& g, double sigma,
                                 const Vector& s);

/// Unconstrained Barzilai-Borwein descent on the cubic model itself (the
/// direct subproblem route of the outer ARC loop). Stops when
/// ||grad m(s)|| <= stop_norm(s) or after max_iter iterations.
struct DirectBbResult {
    Vector s;
    double model_value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool stop_rule_met = false;
};
DirectBbResult bb_minimize_cubic(const SymmetricOperator& B, const Vector& g, double sigma,
                                 const Vector& start, int max_iter,
                                 const std::function<double(const Vector&)>& stop_norm);

/// Ground-truth CRS solution for n <= 500 by dense eigendecomposition and a
/// safeguarded bisection on the secular equation; handles the hard case with
/// an explicit eigenvector correction.
struct OracleSolution {
    Vector x;
    double fval = 0.0;
    double lambda = 0.0;    // multiplier rho ||x||
    double lambda_min = 0.0;
    Vector v_min;           // unit eigenvector for lambda_min
    bool hard_case = false;
};
OracleSolution dense_oracle_solve(const CrsProblem& prob);

/// Dense symmetric eigendecomposition helper backing the oracle (ascending
/// eigenvalues, orthonormal columns). n <= 500.
void dense_eig_sym(const std::vector<double>& a, std::size_t n, Vector& eigenvalues,
                   std::vector<double>& eigenvectors_colmajor);

}  // namespace crs
