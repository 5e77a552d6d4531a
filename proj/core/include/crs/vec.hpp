#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace crs {

using Vector = std::vector<double>;

namespace vec {

inline double dot(const Vector& a, const Vector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Vector& a) { return dot(a, a); }

inline double norm(const Vector& a) { return std::sqrt(norm_sq(a)); }

// y += alpha * x
inline void axpy(double alpha, const Vector& x, Vector& y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(double alpha, Vector& x) {
    for (double& v : x) v *= alpha;
}

inline Vector scaled(double alpha, const Vector& x) {
    Vector r(x);
    scale(alpha, r);
    return r;
}

inline Vector add(const Vector& a, const Vector& b) {
    Vector r(a);
    axpy(1.0, b, r);
    return r;
}

inline Vector sub(const Vector& a, const Vector& b) {
    Vector r(a);
    axpy(-1.0, b, r);
    return r;
}

inline void check_dim(std::size_t expected, std::size_t got, const char* what) {
    if (expected != got)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace vec
}  // namespace crs
