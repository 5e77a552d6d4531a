#include "crs/bench.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "crs/rng.hpp"

namespace crs {
namespace bench {

namespace {

/// Modified Gram-Schmidt QR of a column-major k x k block, one
/// reorthogonalization sweep, with the R diagonal forced positive (column
/// sign flips). 1 x 1 blocks are pinned to +1 so K = 1 keeps A diagonal.
void orthonormalize_block(std::vector<double>& q, std::size_t k) {
    if (k == 1) {
        q[0] = 1.0;
        return;
    }
    for (std::size_t j = 0; j < k; ++j) {
        double* col = q.data() + j * k;
        for (int sweep = 0; sweep < 2; ++sweep)
            for (std::size_t p = 0; p < j; ++p) {
                const double* prev = q.data() + p * k;
                double d = 0.0;
                for (std::size_t i = 0; i < k; ++i) d += prev[i] * col[i];
                for (std::size_t i = 0; i < k; ++i) col[i] -= d * prev[i];
            }
        double nn = 0.0;
        for (std::size_t i = 0; i < k; ++i) nn += col[i] * col[i];
        nn = std::sqrt(nn);
        if (nn == 0.0) {  // measure-zero; keep the factor well defined
            col[j] = 1.0;
            nn = 1.0;
        }
        for (std::size_t i = 0; i < k; ++i) col[i] /= nn;
        // r_jj = ||residual|| > 0, so the positive-diagonal convention holds
        // by construction.
    }
}

}  // namespace

const char* case_name(Case c) { return c == Case::Easy ? "easy" : "hard"; }

Case case_from_name(const std::string& name) {
    if (name == "easy") return Case::Easy;
    if (name == "hard") return Case::Hard;
    throw std::invalid_argument("unknown case: " + name);
}

void InstanceSpec::validate() const {
    if (n < 2) throw std::invalid_argument("InstanceSpec: n must be >= 2");
    if (block == 0 || n % block != 0)
        throw std::invalid_argument("InstanceSpec: block size must divide n");
    if (!(rho > 0.0)) throw std::invalid_argument("InstanceSpec: rho must be > 0");
    if (kind == Case::Easy && !(kappa > 1.0))
        throw std::invalid_argument("InstanceSpec: easy case needs kappa > 1");
    if (kind == Case::Hard && !(gap > 0.0 && gap <= 2.0))
        throw std::invalid_argument("InstanceSpec: hard case needs gap in (0, 2]");
}

double eig_budget_for(const InstanceSpec& spec) {
    return spec.kind == Case::Easy ? 5.0 / spec.kappa : 1e-6;
}

GeneratedInstance generate(const InstanceSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n;
    const std::size_t K = spec.block;
    Rng rng(spec.seed);

    // (a) spectrum on [-1, 1]; draw order is part of the reproducibility
    // contract: interior eigenvalues, then the optimum direction, then the
    // rotation blocks row by row.
    Vector lambda(n);
    lambda[0] = -1.0;
    if (spec.kind == Case::Easy) {
        lambda[n - 1] = 1.0;
        for (std::size_t i = 1; i + 1 < n; ++i) lambda[i] = rng.uniform(-1.0, 1.0);
    } else {
        lambda[1] = -1.0 + spec.gap;
        for (std::size_t i = 2; i < n; ++i) lambda[i] = rng.uniform(-1.0 + spec.gap, 1.0);
    }

    // (b)/(c) a certified optimum in the diagonal frame.
    double lambda_star;
    Vector x_bar(n, 0.0);
    if (spec.kind == Case::Easy) {
        lambda_star = (1.0 + spec.kappa) / (spec.kappa - 1.0);  // solves the kappa identity
        if (!(lambda_star > 1.0))
            throw std::invalid_argument("InstanceSpec: kappa admits no interior multiplier");
        const Vector u = rng.unit_vector(n);
        x_bar = vec::scaled(lambda_star / spec.rho, u);
    } else {
        lambda_star = 1.0;  // = -lambda_1: boundary multiplier
        constexpr double c = 0.5;
        Vector w = rng.normal_vector(n);
        w[0] = 0.0;
        const double wn = vec::norm(w);
        if (wn == 0.0) throw std::runtime_error("generate: degenerate direction draw");
        vec::scale(c * lambda_star / (spec.rho * wn), w);
        x_bar = w;
        x_bar[0] = lambda_star / spec.rho * std::sqrt(1.0 - c * c);
    }
    Vector b_bar(n);
    for (std::size_t i = 0; i < n; ++i) b_bar[i] = -(lambda[i] + lambda_star) * x_bar[i];

    // (d) block-orthogonal rotation: A = Q' Lambda Q blockwise.
    const std::size_t nblocks = n / K;
    Vector b(n, 0.0), x_star(n, 0.0);
    CsrMatrix m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    m.col_idx.resize(n * K);
    m.values.assign(n * K, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        m.row_ptr[i + 1] = (i + 1) * K;
        const std::size_t base = (i / K) * K;
        for (std::size_t j = 0; j < K; ++j) m.col_idx[i * K + j] = base + j;
    }

    std::vector<double> q(K * K);
    for (std::size_t blk = 0; blk < nblocks; ++blk) {
        for (double& v : q) v = rng.normal();
        orthonormalize_block(q, K);
        const std::size_t off = blk * K;
        // Block of A: (Q' Lambda Q)_{ij} = sum_r lambda_r q(r,i) q(r,j),
        // with q stored column-major.
        for (std::size_t i = 0; i < K; ++i)
            for (std::size_t j = 0; j < K; ++j) {
                double s = 0.0;
                for (std::size_t r = 0; r < K; ++r)
                    s += lambda[off + r] * q[i * K + r] * q[j * K + r];
                m.values[(off + i) * K + j] = s;
            }
        for (std::size_t i = 0; i < K; ++i) {
            double sb = 0.0, sx = 0.0;
            for (std::size_t r = 0; r < K; ++r) {
                sb += q[i * K + r] * b_bar[off + r];
                sx += q[i * K + r] * x_bar[off + r];
            }
            b[off + i] = sb;
            x_star[off + i] = sx;
        }
    }

    // (e) the objective is 1-homogeneous in (A, b, rho): scale to f* = -1.
    // f(x*) is rotation invariant, so the raw value comes from the diagonal
    // frame directly.
    double f_raw = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        f_raw += 0.5 * lambda[i] * x_bar[i] * x_bar[i] + b_bar[i] * x_bar[i];
    const double xnorm = vec::norm(x_bar);
    f_raw += spec.rho / 3.0 * xnorm * xnorm * xnorm;
    if (!(f_raw < 0.0)) throw std::runtime_error("generate: construction yielded f(x*) >= 0");
    const double scale = -1.0 / f_raw;

    vec::scale(scale, m.values);
    vec::scale(scale, b);

    GeneratedInstance inst;
    inst.problem = CrsProblem(SymmetricOperator::sparse(std::move(m)), std::move(b),
                              scale * spec.rho);
    inst.x_star = std::move(x_star);
    inst.lambda_star = scale * lambda_star;
    inst.f_star = -1.0;

    // Self-check before anything downstream sees the instance.
    Vector res = inst.problem.A.apply(inst.x_star);
    for (std::size_t i = 0; i < n; ++i)
        res[i] += inst.problem.b[i] + inst.lambda_star * inst.x_star[i];
    if (vec::norm(res) > 1e-8 * vec::norm(inst.problem.b))
        throw std::runtime_error("generate: optimality residual check failed");
    if (std::abs(f1_value(inst.problem, inst.x_star) + 1.0) > 1e-10)
        throw std::runtime_error("generate: optimal value check failed");
    if (std::abs(inst.lambda_star - inst.problem.rho * vec::norm(inst.x_star)) >
        1e-10 * std::max(1.0, inst.lambda_star))
        throw std::runtime_error("generate: multiplier check failed");
    return inst;
}

std::string experiment_csv_header() {
    return "method,case,n,K,param,fval_opt,iter,matvecs,time,time_eig";
}

namespace {

struct CellStats {
    double fval_opt = 0.0;
    double iter = 0.0;
    double matvecs = 0.0;
    double time = 0.0;
    double time_eig = 0.0;
};

std::string format_row(const std::string& method_label, const InstanceSpec& spec,
                       const CellStats& s) {
    char buf[320];
    const double param = spec.kind == Case::Easy ? spec.kappa : spec.gap;
    std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%zu,%.6g,%.12e,%.6g,%.6g,%.6e,%.6e",
                  method_label.c_str(), case_name(spec.kind), spec.n, spec.block, param,
                  s.fval_opt, s.iter, s.matvecs, s.time, s.time_eig);
    return buf;
}

}  // namespace

void run_experiment(const std::vector<InstanceSpec>& grid,
                    const std::vector<MethodChoice>& methods, const ExperimentOptions& opts,
                    std::ostream& out) {
    out << experiment_csv_header() << "\n";
    for (const InstanceSpec& spec : grid) {
        for (const MethodChoice& mc : methods) {
            const std::string label =
                std::string(method_name(mc.method)) + "(" + variant_name(mc.variant) + ")";
            CellStats mean;
            for (int trial = 0; trial < opts.trials; ++trial) {
                InstanceSpec cell = spec;
                cell.seed = spec.seed + static_cast<std::uint64_t>(trial);
                const GeneratedInstance inst = generate(cell);

                SolverConfig cfg;
                cfg.max_iter = opts.max_iter;
                cfg.tol = 1e-12;  // the known-optimum rule below does the stopping
                cfg.seed = cell.seed + 0x9e3779b97f4a7c15ull;

                const double target = inst.f_star + opts.target_gap;
                const StopPredicate stop = [&](const IterateView& it) {
                    return it.value <= target;
                };

                const SolveReport rep =
                    solve_crs(inst.problem, mc.method, mc.variant, opts.accuracy_epsilon,
                              opts.delta, cfg, nullptr, eig_budget_for(cell), stop);

                CellStats row;
                row.fval_opt = rep.fval - inst.f_star;
                row.iter = rep.iterations;
                row.matvecs = static_cast<double>(rep.matvecs);
                row.time = rep.eig_time + rep.loop_time;
                row.time_eig = rep.eig_time;
                out << format_row(label, cell, row) << "\n";

                mean.fval_opt += row.fval_opt;
                mean.iter += row.iter;
                mean.matvecs += row.matvecs;
                mean.time += row.time;
                mean.time_eig += row.time_eig;
            }
            const double inv = 1.0 / static_cast<double>(opts.trials);
            mean.fval_opt *= inv;
            mean.iter *= inv;
            mean.matvecs *= inv;
            mean.time *= inv;
            mean.time_eig *= inv;
            out << format_row(label + ":mean", spec, mean) << "\n";
        }
    }
}

}  // namespace bench
}  // namespace crs
