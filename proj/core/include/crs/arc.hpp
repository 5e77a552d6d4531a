#pragma once

#include <functional>
#include <string>
#include <vector>

#include "crs/operators.hpp"
#include "crs/solvers.hpp"

namespace crs {

/// Value / gradient / Hessian-operator oracles of a twice differentiable
/// function. The Hessian is consumed matrix-free.
struct SmoothObjective {
    std::function<double(const Vector&)> eval_f;
    std::function<Vector(const Vector&)> eval_g;
    std::function<SymmetricOperator(const Vector&)> eval_hess;
};

struct ArcConfig {
    double gamma1 = 2.0;   // unsuccessful growth, > 1
    double gamma2 = 4.0;   // growth ceiling, >= gamma1
    double eta1 = 0.1;     // acceptance threshold, in (0, eta2]
    double eta2 = 0.9;     // very-successful threshold, in [eta1, 1)
    double sigma0 = 1.0;
    double eps1 = 1e-2;    // gradient factor of the subproblem-switch condition
    double eps2 = 1e-4;    // curvature threshold of the switch condition
    double grad_tol = 1e-5;
    double eig_tol_outer = 1e-3;
    int max_outer = 5000;
    int inner_max_iter = 150;
    double sigma_min = 1e-12;
    std::uint64_t seed = 0;

    void validate() const;
};

enum class ArcBranch { Direct, Reformulated };
enum class ArcStatus { Converged, MaxOuter, Degenerate };

struct ArcIterRecord {
    int k = 0;
    double f = 0.0;
    double grad_norm = 0.0;
    double sigma = 0.0;
    double rho = 0.0;
    ArcBranch branch = ArcBranch::Direct;
    bool accepted = false;
    bool used_cauchy = false;  // trial fell back to the Cauchy point
    int inner_iterations = 0;
    bool inner_rule_met = false;  // inner exit rule held at the returned step
};

struct ArcCounters {
    int n_outer = 0;       // n_i
    std::uint64_t n_prod = 0;
    int n_f = 0;
    int n_g = 0;
    int n_eig = 0;
};

struct ArcResult {
    Vector x;
    double fval = 0.0;
    ArcStatus status = ArcStatus::MaxOuter;
    std::vector<ArcIterRecord> history;
    ArcCounters counters;
    double time_total = 0.0;
    double time_eig = 0.0;

    /// Summary CSV row: n_i,n_prod,n_f,n_g,n_eig,f_star,time,time_eig,time_loop
    std::string csv_row() const;
    static std::string csv_header();
};

/**
 * Adaptive cubic regularization with the reformulation-based subproblem
 * switch. Each outer iteration starts from the Cauchy point; when the
 * gradient is small relative to max(F, 1) and the Hessian has a noticeably
 * negative eigenvalue, the cubic model is solved through the lifted
 * reformulation (AP shift) by the chosen subsolver, otherwise by direct
 * Barzilai-Borwein descent on the model. A trial step is only taken if it
 * beats the Cauchy point; sigma follows the very-successful / successful /
 * unsuccessful update.
 */
ArcResult arc_minimize(const SmoothObjective& obj, const Vector& x0, const ArcConfig& cfg,
                       Method subsolver);

}  // namespace crs
