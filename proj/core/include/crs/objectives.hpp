#pragma once

#include <string>

#include "crs/arc.hpp"

namespace crs {

/// Chained Rosenbrock: sum_{i=2}^{n} [ 100 (x_i - x_{i-1}^2)^2 + (1 - x_{i-1})^2 ],
/// global minimum 0 at the all-ones point. The Hessian is tridiagonal.
SmoothObjective rosenbrock_objective();
Vector rosenbrock_start(std::size_t n);  // (-1.2, 1, -1.2, 1, ...)

/// Separable oscillatory well: sum_i [ x_i^2 / 2 + 3 (1 - cos 2 x_i) ].
/// Nonconvex with broad concave bands, diagonal Hessian, minimum 0 at 0.
SmoothObjective oscillatory_objective();
Vector oscillatory_start(std::size_t n);  // near a concave stationary band

SmoothObjective objective_by_name(const std::string& name);
Vector objective_start(const std::string& name, std::size_t n);

}  // namespace crs
