#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crs/model.hpp"
#include "crs/solvers.hpp"

namespace crs {
namespace bench {

enum class Case { Easy, Hard };
const char* case_name(Case c);
Case case_from_name(const std::string& name);

/**
 * Synthetic instance recipe with a known optimum of -1.
 *
 * Block-diagonal A = Q' Lambda Q with n/K random orthogonal K x K blocks
 * (sparsity K/n). The spectrum is pinned to [-1, 1] before scaling; the easy
 * case dials the condition number kappa = (lambda_n + lambda*) / (lambda_1 +
 * lambda*), the hard case dials the spectral gap lambda_2 - lambda_1 and
 * puts the right-hand side orthogonal to the bottom eigenvector.
 */
struct InstanceSpec {
    std::size_t n = 100;
    std::size_t block = 10;  // K; must divide n
    Case kind = Case::Easy;
    double kappa = 10.0;     // easy-case knob, > 1
    double gap = 1e-2;       // hard-case knob, in (0, 2]
    double rho = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct GeneratedInstance {
    CrsProblem problem;
    Vector x_star;
    double lambda_star = 0.0;  // rho ||x*||, post scaling
    double f_star = -1.0;
};

/// Deterministic in (spec, seed): same inputs give bit-identical data.
/// Generated instances are self-validated against the optimality system
/// before being returned.
GeneratedInstance generate(const InstanceSpec& spec);

/// Eigensolver tolerance recipe for experiment runs: 5/kappa in the easy
/// case, 1e-6 in the hard case. Governs the Lanczos iteration budget.
double eig_budget_for(const InstanceSpec& spec);

struct MethodChoice {
    Method method = Method::APG;
    Variant variant = Variant::SP;
};

struct ExperimentOptions {
    int trials = 1;
    int max_iter = 5000;
    double target_gap = 1e-6;  // stop once the objective is below f* + this
    double accuracy_epsilon = 1e-6;
    double delta = 0.01;
};

/**
 * Runs every (spec, method, trial) cell through solve_crs, stopping each run
 * once the lifted objective crosses f* + target_gap (the optimum is known by
 * construction) or at the iteration cap. Emits one CSV row per run with
 * columns
 *
 *   method,case,n,K,param,fval_opt,iter,matvecs,time,time_eig
 *
 * (param is kappa or gap), followed by one ":mean" aggregate row per
 * (spec, method) cell. Trial t of a spec reuses the spec with seed + t.
 */
void run_experiment(const std::vector<InstanceSpec>& grid,
                    const std::vector<MethodChoice>& methods, const ExperimentOptions& opts,
                    std::ostream& out);

std::string experiment_csv_header();

}  // namespace bench
}  // namespace crs
