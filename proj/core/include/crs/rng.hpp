#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "crs/vec.hpp"

namespace crs {

/**
 * Portable random stream used everywhere a seed appears in the public API.
 *
 * Generator: std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Uniform doubles take the top 53 bits; normals come from
 * Box-Muller on those uniforms. Distribution classes from <random> are
 * deliberately avoided: their algorithms are implementation-defined and
 * would break seed reproducibility across standard libraries.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vector normal_vector(std::size_t n) {
        Vector v(n);
        for (double& x : v) x = normal();
        return v;
    }

    // i.i.d. normal entries normalized to unit length: uniform on the sphere
    Vector unit_vector(std::size_t n) {
        Vector v = normal_vector(n);
        double nn = vec::norm(v);
        while (nn == 0.0) {
            v = normal_vector(n);
            nn = vec::norm(v);
        }
        vec::scale(1.0 / nn, v);
        return v;
    }

    std::uint64_t next_u64() { return gen_(); }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace crs
