#include "crs/arc.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace crs {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

bool all_finite(const Vector& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

void ArcConfig::validate() const {
    if (!(gamma2 >= gamma1 && gamma1 > 1.0))
        throw std::invalid_argument("ArcConfig: need gamma2 >= gamma1 > 1");
    if (!(1.0 > eta2 && eta2 >= eta1 && eta1 > 0.0))
        throw std::invalid_argument("ArcConfig: need 1 > eta2 >= eta1 > 0");
    if (!(sigma0 > 0.0)) throw std::invalid_argument("ArcConfig: sigma0 must be > 0");
    if (!(eps1 > 0.0 && eps2 > 0.0 && grad_tol > 0.0 && eig_tol_outer > 0.0))
        throw std::invalid_argument("ArcConfig: tolerances must be > 0");
    if (max_outer < 1 || inner_max_iter < 1)
        throw std::invalid_argument("ArcConfig: iteration caps must be >= 1");
}

std::string ArcResult::csv_header() {
    return "n_i,n_prod,n_f,n_g,n_eig,f_star,time,time_eig,time_loop";
}

std::string ArcResult::csv_row() const {
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%d,%llu,%d,%d,%d,%.12e,%.6e,%.6e,%.6e", counters.n_outer,
                  static_cast<unsigned long long>(counters.n_prod), counters.n_f, counters.n_g,
                  counters.n_eig, fval, time_total, time_eig, time_total - time_eig);
    return buf;
}

ArcResult arc_minimize(const SmoothObjective& obj, const Vector& x0, const ArcConfig& cfg,
                       Method subsolver) {
    cfg.validate();
    const double t_start = now_seconds();
    const std::size_t n = x0.size();

    ArcResult res;
    res.x = x0;

    double f = obj.eval_f(res.x);
    res.counters.n_f++;
    Vector g = obj.eval_g(res.x);
    res.counters.n_g++;
    double sigma = cfg.sigma0;

    const double lanczos_tol = std::min(cfg.eps2 / 10.0, 1e-5);

    for (int k = 0; k < cfg.max_outer; ++k) {
        if (!std::isfinite(f) || !all_finite(g)) {
            res.status = ArcStatus::Degenerate;
            break;
        }
        const double gnorm = vec::norm(g);
        SymmetricOperator B = obj.eval_hess(res.x);
        const std::uint64_t prod0 = B.matvec_count();

        // The eigenvalue estimate is needed both for the subproblem switch
        // and for the second-order stopping test; compute it lazily, once.
        bool have_theta = false;
        double theta = 0.0;
        EigEstimate eig;
        auto ensure_theta = [&]() {
            if (have_theta) return;
            const double te = now_seconds();
            eig = lanczos_min_eig(B, lanczos_tol, 0.01, cfg.seed + static_cast<std::uint64_t>(k));
            res.time_eig += now_seconds() - te;
            res.counters.n_eig++;
            theta = eig.theta;
            have_theta = true;
        };

        if (gnorm <= cfg.grad_tol) {
            ensure_theta();
            if (theta >= -(cfg.eig_tol_outer - lanczos_tol)) {
                res.status = ArcStatus::Converged;
                res.counters.n_prod += B.matvec_count() - prod0;
                break;
            }
        }

        // Cauchy point (model minimizer along -g).
        Vector s_c(n, 0.0);
        double m_c = 0.0;
        if (gnorm > 0.0) {
            s_c = cauchy_point(B, g, sigma);
            m_c = cubic_model_value_grad(B, g, sigma, s_c).value;
        }

        ArcIterRecord rec;
        rec.k = k;
        rec.f = f;
        rec.grad_norm = gnorm;
        rec.sigma = sigma;

        // Subproblem switch: small gradient and noticeably negative curvature
        // send the model to the lifted reformulation.
        bool reformulate = false;
        if (gnorm <= std::max(f, 1.0) * cfg.eps1) {
            ensure_theta();
            reformulate = theta < -cfg.eps2;
        }

        const auto inner_stop_norm = [&](const Vector& s) {
            return std::min(1.0, vec::norm(s)) * gnorm;
        };

        Vector s_trial = s_c;
        double m_trial = m_c;
        if (reformulate) {
            rec.branch = ArcBranch::Reformulated;
            CrsProblem sub(B, g, sigma);
            const SurrogateSpec spec = make_surrogate(Variant::AP, theta, lanczos_tol, sigma);

            LiftedPoint lifted_start{s_c, vec::norm_sq(s_c)};
            SolverConfig inner_cfg;
            inner_cfg.max_iter = cfg.inner_max_iter;
            inner_cfg.tol = 1e-14;  // exits come from the model-gradient rule or the cap
            inner_cfg.L0 = spec.lower_bound > 0.0 ? lipschitz_gamma(sub, spec)
                                                  : std::max(1.0, B.norm_upper_bound());

            bool rule_met = false;
            const StopPredicate stop = [&](const IterateView& it) {
                // The lifted x-gradient already contains B x + g; the model
                // gradient follows without another product.
                Vector gm = it.grad.x;
                const double nx = vec::norm(it.point.x);
                for (std::size_t i = 0; i < n; ++i)
                    gm[i] += (sigma * nx - spec.shift) * it.point.x[i];
                if (vec::norm(gm) <= inner_stop_norm(it.point.x)) {
                    rule_met = true;
                    return true;
                }
                return false;
            };

            const InnerSolveResult inner = subsolver == Method::APG
                                               ? apg_solve(sub, spec, lifted_start, inner_cfg, stop)
                                               : bbm_solve(sub, spec, lifted_start, inner_cfg, stop);
            rec.inner_iterations = inner.iterations;

            if (rule_met) {
                s_trial = inner.point.x;
                m_trial = cubic_model_value_grad(B, g, sigma, s_trial).value;
                rec.inner_rule_met = true;
            } else {
                // Cap was hit; keep the better of the plain x part and the
                // eigenvector-corrected recovery.
                const Vector recovered = recover_solution(sub, spec, inner.point, eig.v);
                const ValueGrad at_plain = cubic_model_value_grad(B, g, sigma, inner.point.x);
                const ValueGrad at_rec = cubic_model_value_grad(B, g, sigma, recovered);
                const bool take_rec = at_rec.value < at_plain.value;
                s_trial = take_rec ? recovered : inner.point.x;
                const ValueGrad& at_trial = take_rec ? at_rec : at_plain;
                m_trial = at_trial.value;
                rec.inner_rule_met = vec::norm(at_trial.grad) <= inner_stop_norm(s_trial);
            }
        } else {
            rec.branch = ArcBranch::Direct;
            if (gnorm > 0.0) {
                const DirectBbResult direct =
                    bb_minimize_cubic(B, g, sigma, s_c, cfg.inner_max_iter, inner_stop_norm);
                s_trial = direct.s;
                m_trial = direct.model_value;
                rec.inner_iterations = direct.iterations;
                rec.inner_rule_met = direct.stop_rule_met;
            }
        }

        // Keep the Cauchy point unless the solver's step beats it.
        Vector s_k;
        double m_k;
        if (m_trial <= m_c) {
            s_k = s_trial;
            m_k = m_trial;
        } else {
            s_k = s_c;
            m_k = m_c;
            rec.used_cauchy = true;
        }

        Vector x_trial = res.x;
        vec::axpy(1.0, s_k, x_trial);
        const double f_trial = obj.eval_f(x_trial);
        res.counters.n_f++;
        if (!std::isfinite(f_trial)) {
            res.status = ArcStatus::Degenerate;
            res.counters.n_prod += B.matvec_count() - prod0;
            res.history.push_back(rec);
            break;
        }

        const double predicted = -m_k;
        const double actual = f - f_trial;
        double rho;
        if (predicted > 0.0) {
            rho = actual / predicted;
        } else {
            rho = actual >= 0.0 ? std::numeric_limits<double>::infinity()
                                : -std::numeric_limits<double>::infinity();
        }
        rec.rho = rho;

        if (rho >= cfg.eta1) {
            rec.accepted = true;
            res.x = x_trial;
            f = f_trial;
            g = obj.eval_g(res.x);
            res.counters.n_g++;
        }
        if (rho > cfg.eta2) {
            sigma = std::max(0.5 * sigma, cfg.sigma_min);
        } else if (rho < cfg.eta1) {
            sigma = cfg.gamma1 * sigma;
        }

        res.counters.n_prod += B.matvec_count() - prod0;
        res.counters.n_outer = k + 1;
        res.history.push_back(rec);
    }

    res.fval = f;
    res.time_total = now_seconds() - t_start;
    return res;
}

}  // namespace crs
