#include "crs/objectives.hpp"

#include <cmath>
#include <stdexcept>

namespace crs {

namespace {

SymmetricOperator tridiagonal_operator(const Vector& diag, const Vector& off) {
    const std::size_t n = diag.size();
    CsrMatrix m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t nnz = 1;
        if (i > 0) ++nnz;
        if (i + 1 < n) ++nnz;
        m.row_ptr[i + 1] = m.row_ptr[i] + nnz;
    }
    m.col_idx.resize(m.row_ptr[n]);
    m.values.resize(m.row_ptr[n]);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = m.row_ptr[i];
        if (i > 0) {
            m.col_idx[k] = i - 1;
            m.values[k] = off[i - 1];
            ++k;
        }
        m.col_idx[k] = i;
        m.values[k] = diag[i];
        ++k;
        if (i + 1 < n) {
            m.col_idx[k] = i + 1;
            m.values[k] = off[i];
        }
    }
    return SymmetricOperator::sparse(std::move(m));
}

}  // namespace

SmoothObjective rosenbrock_objective() {
    SmoothObjective obj;
    obj.eval_f = [](const Vector& x) {
        double f = 0.0;
        for (std::size_t i = 1; i < x.size(); ++i) {
            const double a = x[i] - x[i - 1] * x[i - 1];
            const double b = 1.0 - x[i - 1];
            f += 100.0 * a * a + b * b;
        }
        return f;
    };
    obj.eval_g = [](const Vector& x) {
        const std::size_t n = x.size();
        Vector g(n, 0.0);
        for (std::size_t i = 1; i < n; ++i) {
            const double a = x[i] - x[i - 1] * x[i - 1];
            g[i] += 200.0 * a;
            g[i - 1] += -400.0 * x[i - 1] * a - 2.0 * (1.0 - x[i - 1]);
        }
        return g;
    };
    obj.eval_hess = [](const Vector& x) {
        const std::size_t n = x.size();
        Vector d(n, 0.0), off(n > 0 ? n - 1 : 0, 0.0);
        for (std::size_t i = 1; i < n; ++i) {
            const double a = x[i] - x[i - 1] * x[i - 1];
            d[i] += 200.0;
            d[i - 1] += -400.0 * a + 800.0 * x[i - 1] * x[i - 1] + 2.0;
            off[i - 1] += -400.0 * x[i - 1];
        }
        return tridiagonal_operator(d, off);
    };
    return obj;
}

Vector rosenbrock_start(std::size_t n) {
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = (i % 2 == 0) ? -1.2 : 1.0;
    return x;
}

SmoothObjective oscillatory_objective() {
    SmoothObjective obj;
    obj.eval_f = [](const Vector& x) {
        double f = 0.0;
        for (double xi : x) f += 0.5 * xi * xi + 3.0 * (1.0 - std::cos(2.0 * xi));
        return f;
    };
    obj.eval_g = [](const Vector& x) {
        Vector g(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] + 6.0 * std::sin(2.0 * x[i]);
        return g;
    };
    obj.eval_hess = [](const Vector& x) {
        Vector d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) d[i] = 1.0 + 12.0 * std::cos(2.0 * x[i]);
        return SymmetricOperator::diagonal(std::move(d));
    };
    return obj;
}

Vector oscillatory_start(std::size_t n) {
    // Close to a stationary band where the curvature is strongly negative,
    // so the reformulated subproblem branch has to fire.
    return Vector(n, 1.72);
}

SmoothObjective objective_by_name(const std::string& name) {
    if (name == "rosenbrock") return rosenbrock_objective();
    if (name == "humps" || name == "oscillatory") return oscillatory_objective();
    throw std::invalid_argument("unknown objective: " + name);
}

Vector objective_start(const std::string& name, std::size_t n) {
    if (name == "rosenbrock") return rosenbrock_start(n);
    if (name == "humps" || name == "oscillatory") return oscillatory_start(n);
    throw std::invalid_argument("unknown objective: " + name);
}

}  // namespace crs
