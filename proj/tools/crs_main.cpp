// crs: command line front end for the cubic regularization solver kit.
//
//   crs solve  --matrix A.mtx --rhs b.txt --rho 1.0 --method apg --variant sp
//   crs bench  --case easy --n 100 --block 10 --kappa 10 --method apg
//              --variant sp --trials 5 --seed 1 --out results.csv
//   crs arc    --objective rosenbrock --dim 100 --subsolver apg --out history.csv

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "crs/bench.hpp"
#include "crs/model.hpp"
#include "crs/objectives.hpp"
#include "crs/solvers.hpp"

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> split_doubles(const std::string& s) {
    std::vector<double> out;
    for (const std::string& item : split_list(s)) out.push_back(std::stod(item));
    return out;
}

int run_solve(const std::string& matrix, const std::string& rhs,
              const std::string& manifest, double rho, const std::string& method,
              const std::string& variant, double tol, double epsilon, double delta,
              int max_iter, std::uint64_t seed) {
    crs::CrsProblem prob;
    if (!manifest.empty()) {
        prob = crs::load_problem(manifest);
    } else {
        crs::SymmetricOperator A =
            matrix.size() >= 4 && matrix.substr(matrix.size() - 4) == ".mtx"
                ? crs::load_matrix_market(matrix)
                : crs::load_dense_text(matrix);
        prob = crs::CrsProblem(std::move(A), crs::load_vector_text(rhs), rho);
    }

    crs::SolverConfig cfg;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.seed = seed;
    const crs::SolveReport rep = crs::solve_crs(prob, crs::method_from_name(method),
                                                crs::variant_from_name(variant), epsilon,
                                                delta, cfg);

    std::cout << "status:   " << crs::status_name(rep.status) << "\n";
    std::cout << "fval:     " << rep.fval << "\n";
    std::cout << "iter:     " << rep.iterations << "\n";
    std::cout << "matvecs:  " << rep.matvecs << "\n";
    std::cout << "theta:    " << rep.theta << " (" << rep.eig_iterations
              << " Lanczos iterations)\n";
    std::cout << "time:     " << rep.eig_time + rep.loop_time << " s (eig " << rep.eig_time
              << " s)\n";
    std::cout << crs::SolveReport::csv_header() << "\n" << rep.csv_row(prob.dim()) << "\n";
    return rep.status == crs::SolveStatus::Degenerate ? 1 : 0;
}

int run_bench(const std::string& kase, const std::string& ns, const std::string& blocks,
              const std::string& kappas, const std::string& gaps, const std::string& methods,
              const std::string& variants, int trials, std::uint64_t seed, double rho,
              int max_iter, const std::string& out_path) {
    const crs::bench::Case kind = crs::bench::case_from_name(kase);
    const std::vector<double> n_list = split_doubles(ns);
    const std::vector<double> block_list = split_doubles(blocks);
    const std::vector<double> params =
        kind == crs::bench::Case::Easy ? split_doubles(kappas) : split_doubles(gaps);
    if (n_list.size() != block_list.size() && block_list.size() != 1)
        throw CLI::ValidationError("--block must be a single value or match --n");

    std::vector<crs::bench::InstanceSpec> grid;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        for (double p : params) {
            crs::bench::InstanceSpec spec;
            spec.n = static_cast<std::size_t>(n_list[i]);
            spec.block = static_cast<std::size_t>(
                block_list.size() == 1 ? block_list[0] : block_list[i]);
            spec.kind = kind;
            spec.rho = rho;
            spec.seed = seed;
            if (kind == crs::bench::Case::Easy)
                spec.kappa = p;
            else
                spec.gap = p;
            grid.push_back(spec);
        }
    }

    std::vector<crs::bench::MethodChoice> mlist;
    for (const std::string& m : split_list(methods))
        for (const std::string& v : split_list(variants))
            mlist.push_back({crs::method_from_name(m), crs::variant_from_name(v)});

    crs::bench::ExperimentOptions opts;
    opts.trials = trials;
    opts.max_iter = max_iter;

    std::ofstream out(out_path);
    if (!out) throw CLI::ValidationError("cannot write " + out_path);
    crs::bench::run_experiment(grid, mlist, opts, out);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int run_arc(const std::string& objective, std::size_t dim, const std::string& subsolver,
            const std::string& out_path, const std::string& trace_path, int max_outer,
            std::uint64_t seed) {
    const crs::SmoothObjective obj = crs::objective_by_name(objective);
    const crs::Vector x0 = crs::objective_start(objective, dim);

    crs::ArcConfig cfg;
    cfg.max_outer = max_outer;
    cfg.seed = seed;
    const crs::ArcResult res =
        crs::arc_minimize(obj, x0, cfg, crs::method_from_name(subsolver));

    std::ofstream out(out_path);
    if (!out) throw CLI::ValidationError("cannot write " + out_path);
    out << crs::ArcResult::csv_header() << "\n" << res.csv_row() << "\n";

    if (!trace_path.empty()) {
        std::ofstream trace(trace_path);
        if (!trace) throw CLI::ValidationError("cannot write " + trace_path);
        trace << "k,f,grad_norm,sigma,rho,branch,accepted,inner_iter,inner_rule_met\n";
        trace.precision(12);
        for (const crs::ArcIterRecord& r : res.history) {
            trace << r.k << "," << std::scientific << r.f << "," << r.grad_norm << ","
                  << r.sigma << "," << r.rho << ","
                  << (r.branch == crs::ArcBranch::Reformulated ? "reform" : "direct") << ","
                  << (r.accepted ? 1 : 0) << "," << r.inner_iterations << ","
                  << (r.inner_rule_met ? 1 : 0) << "\n";
        }
    }

    std::cout << "f* = " << res.fval << " after " << res.counters.n_outer
              << " iterations, status "
              << (res.status == crs::ArcStatus::Converged   ? "converged"
                  : res.status == crs::ArcStatus::MaxOuter ? "max_outer"
                                                           : "degenerate")
              << "\n";
    std::cout << "wrote " << out_path << "\n";
    return res.status == crs::ArcStatus::Degenerate ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cubic regularization subproblem solver kit"};
    app.require_subcommand(1);

    // solve
    std::string matrix, rhs, manifest, method = "apg", variant = "sp";
    double rho = 1.0, tol = 1e-8, epsilon = 1e-6, delta = 0.01;
    int max_iter = 5000;
    std::uint64_t seed = 0;
    CLI::App* solve = app.add_subcommand("solve", "Solve one CRS instance from files");
    solve->add_option("--matrix", matrix, "matrix file (.mtx or dense text)");
    solve->add_option("--rhs", rhs, "plain-text vector b");
    solve->add_option("--problem", manifest, "key=value manifest naming matrix/rhs/rho");
    solve->add_option("--rho", rho, "regularization parameter");
    solve->add_option("--method", method, "apg | bbm");
    solve->add_option("--variant", variant, "sp | ap");
    solve->add_option("--tol", tol, "projected-gradient residual tolerance");
    solve->add_option("--epsilon", epsilon, "eigenvalue accuracy target");
    solve->add_option("--delta", delta, "Lanczos failure probability");
    solve->add_option("--max-iter", max_iter, "iteration cap");
    solve->add_option("--seed", seed, "random seed");

    // bench
    std::string kase = "easy", ns = "100", blocks = "10", kappas = "10", gaps = "1e-2";
    std::string bmethods = "apg", bvariants = "sp", out_path = "results.csv";
    int trials = 1, bench_max_iter = 5000;
    double bench_rho = 1.0;
    std::uint64_t bench_seed = 0;
    CLI::App* bench = app.add_subcommand("bench", "Run the synthetic experiment harness");
    bench->add_option("--case", kase, "easy | hard");
    bench->add_option("--n", ns, "dimension(s), comma separated");
    bench->add_option("--block", blocks, "block size(s) K, comma separated");
    bench->add_option("--kappa", kappas, "condition number(s), easy case");
    bench->add_option("--gap", gaps, "eigen-gap(s), hard case");
    bench->add_option("--method", bmethods, "apg | bbm, comma separated");
    bench->add_option("--variant", bvariants, "sp | ap, comma separated");
    bench->add_option("--trials", trials, "trials per cell");
    bench->add_option("--seed", bench_seed, "base seed");
    bench->add_option("--rho", bench_rho, "regularization parameter");
    bench->add_option("--max-iter", bench_max_iter, "solver iteration cap");
    bench->add_option("--out", out_path, "output CSV path");

    // arc
    std::string objective = "rosenbrock", subsolver = "apg", arc_out = "history.csv",
                trace_path;
    std::size_t dim = 100;
    int max_outer = 5000;
    std::uint64_t arc_seed = 0;
    CLI::App* arc = app.add_subcommand("arc", "Minimize a smooth test function with ARC");
    arc->add_option("--objective", objective, "rosenbrock | humps");
    arc->add_option("--dim", dim, "dimension");
    arc->add_option("--subsolver", subsolver, "apg | bbm");
    arc->add_option("--out", arc_out, "summary CSV path");
    arc->add_option("--trace", trace_path, "per-iteration trace CSV path");
    arc->add_option("--max-outer", max_outer, "outer iteration cap");
    arc->add_option("--seed", arc_seed, "random seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed())
            return run_solve(matrix, rhs, manifest, rho, method, variant, tol, epsilon, delta,
                             max_iter, seed);
        if (bench->parsed())
            return run_bench(kase, ns, blocks, kappas, gaps, bmethods, bvariants, trials,
                             bench_seed, bench_rho, bench_max_iter, out_path);
        if (arc->parsed())
            return run_arc(objective, dim, subsolver, arc_out, trace_path, max_outer,
                           arc_seed);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
