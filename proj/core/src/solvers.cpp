#include "crs/solvers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace crs {

namespace {

constexpr double kArmijoC = 1e-4;
constexpr double kBbStepMin = 1e-10;
constexpr double kBbStepMax = 1e10;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

LiftedPoint gradient_step(const LiftedPoint& p, const LiftedPoint& g, double step, double l) {
    LiftedPoint moved = p;
    vec::axpy(-step, g.x, moved.x);
    moved.y -= step * g.y;
    return project_Bhat(moved, l);
}

double pg_residual(const LiftedPoint& p, const LiftedPoint& g, double l) {
    return lifted::norm(lifted::sub(p, gradient_step(p, g, 1.0, l)));
}

bool finite(const LiftedPoint& p, double value) {
    if (!std::isfinite(value) || !std::isfinite(p.y)) return false;
    for (double x : p.x)
        if (!std::isfinite(x)) return false;
    return true;
}

// Lines 8-12 of the accelerated scheme: if the y part sits strictly above
// both ||x||^2 and the lower bound, pull it down to their max. The y part of
// the objective is increasing there, so the value cannot go up.
void apply_reset(const CrsProblem& prob, const SurrogateSpec& spec, InnerSolveResult& res) {
    const double xsq = vec::norm_sq(res.point.x);
    if (res.point.y > xsq && res.point.y > spec.lower_bound) {
        const double f_before = res.value;
        res.point.y = std::max(xsq, spec.lower_bound);
        res.value = lifted_value_grad(prob, spec, res.point).value;
        res.reset = ResetEvent{f_before, res.value};
    }
}

}  // namespace

const char* method_name(Method m) { return m == Method::APG ? "apg" : "bbm"; }

Method method_from_name(const std::string& name) {
    if (name == "apg" || name == "APG") return Method::APG;
    if (name == "bbm" || name == "BBM") return Method::BBM;
    throw std::invalid_argument("unknown method: " + name);
}

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIter: return "max_iter";
        case SolveStatus::Degenerate: return "degenerate";
    }
    return "?";
}

void SolverConfig::validate() const {
    if (max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be > 0");
    if (!(xi > 1.0)) throw std::invalid_argument("SolverConfig: xi must be > 1");
    if (L0 < 0.0) throw std::invalid_argument("SolverConfig: L0 must be >= 0");
}

InnerSolveResult apg_solve(const CrsProblem& prob, const SurrogateSpec& spec,
                           const LiftedPoint& start, const SolverConfig& cfg,
                           const StopPredicate& stop) {
    cfg.validate();
    const double l = spec.lower_bound;

    InnerSolveResult res;
    LiftedPoint alpha = project_Bhat(start, l);
    LiftedPoint alpha_prev = alpha;
    LiftedPoint beta = alpha;
    double t = 1.0;
    double L = cfg.L0 > 0.0 ? cfg.L0 : 1.0;

    LiftedValueGrad at_beta = lifted_value_grad(prob, spec, beta);
    double f_alpha = at_beta.value;  // beta == alpha at entry

    for (int k = 1; k <= cfg.max_iter; ++k) {
        // Backtracking: grow L until the quadratic model at beta majorizes
        // the candidate.
        LiftedPoint cand;
        LiftedValueGrad at_cand;
        double L_bar = L;
        for (int i = 0;; ++i) {
            cand = gradient_step(beta, at_beta.grad, 1.0 / L_bar, l);
            at_cand = lifted_value_grad(prob, spec, cand);
            const LiftedPoint d = lifted::sub(cand, beta);
            const double quad = at_beta.value + lifted::dot(at_beta.grad, d) +
                                0.5 * L_bar * lifted::dot(d, d);
            const double slack = 8e-16 * (std::abs(at_beta.value) + std::abs(at_cand.value));
            if (at_cand.value <= quad + slack) break;
            if (i >= 100) {
                res.point = alpha;
                res.value = f_alpha;
                res.iterations = k;
                res.status = SolveStatus::Degenerate;
                apply_reset(prob, spec, res);
                return res;
            }
            L_bar *= cfg.xi;
        }
        L = L_bar;

        const double f_alpha_prev = f_alpha;
        alpha_prev = alpha;
        alpha = cand;
        f_alpha = at_cand.value;
        res.iterations = k;

        if (!finite(alpha, f_alpha)) {
            res.point = alpha_prev;
            res.value = f_alpha_prev;
            res.status = SolveStatus::Degenerate;
            apply_reset(prob, spec, res);
            return res;
        }

        const double residual = pg_residual(alpha, at_cand.grad, l);
        if (residual <= cfg.tol * std::max(1.0, lifted::norm(at_cand.grad))) {
            res.point = alpha;
            res.value = f_alpha;
            res.status = SolveStatus::Converged;
            apply_reset(prob, spec, res);
            return res;
        }
        if (stop && stop(IterateView{k, alpha, f_alpha, at_cand.grad})) {
            res.point = alpha;
            res.value = f_alpha;
            res.status = SolveStatus::Converged;
            apply_reset(prob, spec, res);
            return res;
        }

        if (cfg.restart && f_alpha > f_alpha_prev) {
            // Function-value restart: drop momentum and re-anchor at alpha.
            t = 1.0;
            beta = alpha;
            at_beta = at_cand;
        } else {
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            const double m = (t - 1.0) / t_next;
            beta = alpha;
            vec::axpy(m, vec::sub(alpha.x, alpha_prev.x), beta.x);
            beta.y += m * (alpha.y - alpha_prev.y);
            if (beta.y < 0.0) beta.y = 0.0;  // keep the extrapolation in dom f
            t = t_next;
            at_beta = lifted_value_grad(prob, spec, beta);
        }
    }

    res.point = alpha;
    res.value = f_alpha;
    res.status = SolveStatus::MaxIter;
    apply_reset(prob, spec, res);
    return res;
}

InnerSolveResult bbm_solve(const CrsProblem& prob, const SurrogateSpec& spec,
                           const LiftedPoint& start, const SolverConfig& cfg,
                           const StopPredicate& stop) {
    cfg.validate();
    const double l = spec.lower_bound;

    InnerSolveResult res;
    LiftedPoint p = project_Bhat(start, l);
    LiftedValueGrad cur = lifted_value_grad(prob, spec, p);
    double step = 1.0 / (cfg.L0 > 0.0 ? cfg.L0 : 1.0);

    for (int k = 1; k <= cfg.max_iter; ++k) {
        double alpha = std::min(std::max(step, kBbStepMin), kBbStepMax);
        LiftedPoint trial;
        LiftedValueGrad at_trial;
        for (int i = 0;; ++i) {
            trial = gradient_step(p, cur.grad, alpha, l);
            at_trial = lifted_value_grad(prob, spec, trial);
            const double directional = lifted::dot(cur.grad, lifted::sub(trial, p));
            const double slack = 8e-16 * (std::abs(cur.value) + std::abs(at_trial.value));
            if (at_trial.value <= cur.value + kArmijoC * directional + slack) break;
            if (i >= 80) break;  // step floor reached; accept and let the residual rule decide
            alpha *= 0.5;
        }

        const LiftedPoint dp = lifted::sub(trial, p);
        const LiftedPoint dg = lifted::sub(at_trial.grad, cur.grad);
        const double dp_dg = lifted::dot(dp, dg);
        const double bb = (k % 2 == 1) ? dp_dg / lifted::dot(dg, dg)
                                       : lifted::dot(dp, dp) / dp_dg;
        step = (std::isfinite(bb) && bb > 0.0) ? bb : 1.0;

        p = trial;
        cur = at_trial;
        res.iterations = k;

        if (!finite(p, cur.value)) {
            res.point = p;
            res.value = cur.value;
            res.status = SolveStatus::Degenerate;
            return res;
        }
        const double residual = pg_residual(p, cur.grad, l);
        if (residual <= cfg.tol * std::max(1.0, lifted::norm(cur.grad))) {
            res.point = p;
            res.value = cur.value;
            res.status = SolveStatus::Converged;
            apply_reset(prob, spec, res);
            return res;
        }
        if (stop && stop(IterateView{k, p, cur.value, cur.grad})) {
            res.point = p;
            res.value = cur.value;
            res.status = SolveStatus::Converged;
            apply_reset(prob, spec, res);
            return res;
        }
    }

    res.point = p;
    res.value = cur.value;
    res.status = SolveStatus::MaxIter;
    apply_reset(prob, spec, res);
    return res;
}

Vector recover_solution(const CrsProblem& prob, const SurrogateSpec& spec,
                        const LiftedPoint& p, const Vector& v) {
    vec::check_dim(prob.dim(), p.x.size(), "recover_solution");
    vec::check_dim(prob.dim(), v.size(), "recover_solution");
    const double xsq = vec::norm_sq(p.x);
    if (xsq > p.y + 1e-10 * std::max(1.0, p.y))
        throw std::invalid_argument("recover_solution: point is infeasible");
    if (xsq >= p.y - 1e-10 * std::max(1.0, p.y)) return p.x;  // on the boundary

    const double xv = vec::dot(p.x, v);
    const double disc = xv * xv + (p.y - xsq);
    if (disc < 0.0)
        throw std::runtime_error("recover_solution: negative discriminant (infeasible point)");
    const double root = std::sqrt(disc);
    const double t_pos = -xv + root;
    const double t_neg = -xv - root;

    const Vector av = prob.A.apply(v);
    const double w = vec::dot(av, p.x) + vec::dot(prob.b, v) + spec.shift * xv;
    const double t = (w > 0.0) ? t_neg : t_pos;  // ties go to t >= 0

    Vector out = p.x;
    vec::axpy(t, v, out);
    return out;
}

Vector cauchy_point(const SymmetricOperator& B, const Vector& g, double sigma) {
    vec::check_dim(B.dim(), g.size(), "cauchy_point");
    if (!(sigma > 0.0)) throw std::invalid_argument("cauchy_point: sigma must be > 0");
    const double gn_sq = vec::norm_sq(g);
    if (gn_sq == 0.0) throw std::invalid_argument("cauchy_point: gradient must be nonzero");

    const double gn = std::sqrt(gn_sq);
    const double gBg = vec::dot(g, B.apply(g));
    const double a = sigma * gn_sq * gn;
    const double disc = std::sqrt(gBg * gBg + 4.0 * a * gn_sq);
    const double alpha = gBg >= 0.0 ? 2.0 * gn_sq / (gBg + disc) : (-gBg + disc) / (2.0 * a);
    return vec::scaled(-alpha, g);
}

ValueGrad cubic_model_value_grad(const SymmetricOperator& B, const Vector& g, double sigma,
                                 const Vector& s) {
    vec::check_dim(B.dim(), s.size(), "cubic_model_value_grad");
    const Vector bs = B.apply(s);
    const double ns = vec::norm(s);
    ValueGrad out;
    out.value = 0.5 * vec::dot(s, bs) + vec::dot(g, s) + sigma / 3.0 * ns * ns * ns;
    out.grad = bs;
    for (std::size_t i = 0; i < s.size(); ++i) out.grad[i] += g[i] + sigma * ns * s[i];
    return out;
}

DirectBbResult bb_minimize_cubic(const SymmetricOperator& B, const Vector& g, double sigma,
                                 const Vector& start, int max_iter,
                                 const std::function<double(const Vector&)>& stop_norm) {
    DirectBbResult res;
    res.s = start;
    ValueGrad cur = cubic_model_value_grad(B, g, sigma, res.s);
    res.model_value = cur.value;
    res.grad_norm = vec::norm(cur.grad);
    if (res.grad_norm <= stop_norm(res.s)) {
        res.stop_rule_met = true;
        return res;
    }

    double step = 1.0;
    for (int k = 1; k <= max_iter; ++k) {
        double alpha = std::min(std::max(step, kBbStepMin), kBbStepMax);
        Vector trial;
        ValueGrad at_trial;
        const double gn_sq = vec::norm_sq(cur.grad);
        for (int i = 0;; ++i) {
            trial = res.s;
            vec::axpy(-alpha, cur.grad, trial);
            at_trial = cubic_model_value_grad(B, g, sigma, trial);
            const double slack = 8e-16 * (std::abs(cur.value) + std::abs(at_trial.value));
            if (at_trial.value <= cur.value - kArmijoC * alpha * gn_sq + slack) break;
            if (i >= 80) break;
            alpha *= 0.5;
        }

        Vector dp = vec::sub(trial, res.s);
        Vector dg = vec::sub(at_trial.grad, cur.grad);
        const double dp_dg = vec::dot(dp, dg);
        const double bb =
            (k % 2 == 1) ? dp_dg / vec::norm_sq(dg) : vec::norm_sq(dp) / dp_dg;
        step = (std::isfinite(bb) && bb > 0.0) ? bb : 1.0;

        res.s = trial;
        cur = at_trial;
        res.model_value = cur.value;
        res.grad_norm = vec::norm(cur.grad);
        res.iterations = k;
        if (res.grad_norm <= stop_norm(res.s)) {
            res.stop_rule_met = true;
            break;
        }
    }
    return res;
}

std::string SolveReport::csv_header() {
    return "method,variant,n,fval,iter,matvecs,time,time_eig";
}

std::string SolveReport::csv_row(std::size_t n) const {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%.12e,%d,%llu,%.6e,%.6e", method_name(method),
                  variant_name(variant), n, fval, iterations,
                  static_cast<unsigned long long>(matvecs), eig_time + loop_time, eig_time);
    return buf;
}

SolveReport solve_crs(const CrsProblem& prob, Method method, Variant variant, double epsilon,
                      double delta, const SolverConfig& cfg, const Vector* start_hint,
                      double eig_epsilon, const StopPredicate& stop) {
    cfg.validate();
    if (!(epsilon > 0.0)) throw std::invalid_argument("solve_crs: epsilon must be > 0");
    const std::uint64_t matvecs0 = prob.A.matvec_count();

    const double t0 = now_seconds();
    const double budget_eps = eig_epsilon > 0.0 ? eig_epsilon : epsilon;
    const EigEstimate est = lanczos_min_eig(prob.A, budget_eps, delta, cfg.seed, epsilon);
    const double t1 = now_seconds();

    const SurrogateSpec spec = make_surrogate(variant, est.theta, epsilon, prob.rho);

    LiftedPoint start;
    start.x = start_hint ? *start_hint : Vector(prob.dim(), 0.0);
    start.y = std::max(vec::norm_sq(start.x), spec.lower_bound);

    SolverConfig inner = cfg;
    if (inner.L0 <= 0.0)
        inner.L0 = spec.lower_bound > 0.0 ? lipschitz_gamma(prob, spec)
                                          : std::max(1.0, prob.A.norm_upper_bound());

    const InnerSolveResult inner_res =
        method == Method::APG ? apg_solve(prob, spec, start, inner, stop)
                              : bbm_solve(prob, spec, start, inner, stop);

    SolveReport rep;
    rep.x = recover_solution(prob, spec, inner_res.point, est.v);
    rep.fval = f1_value(prob, rep.x);
    rep.iterations = inner_res.iterations;
    rep.status = inner_res.status;
    rep.method = method;
    rep.variant = variant;
    rep.theta = est.theta;
    rep.eig_iterations = est.iterations;
    rep.eig_time = t1 - t0;
    rep.loop_time = now_seconds() - t1;
    rep.matvecs = prob.A.matvec_count() - matvecs0;
    return rep;
}

}  // namespace crs
