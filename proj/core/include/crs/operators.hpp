#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "crs/vec.hpp"

namespace crs {

/// Compressed sparse row storage of a full symmetric pattern (both triangles).
struct CsrMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> row_ptr;  // size n+1
    std::vector<std::size_t> col_idx;
    std::vector<double> values;
};

/**
 * Matrix-free symmetric linear map with matvec accounting.
 *
 * Backed by dense row-major, CSR, or a lazy diagonal shift of another
 * operator (A + cI shares the base storage, no copy). Copies are shallow
 * views: they share storage and the matvec counter, so the counter observed
 * on any view is the total number of applications of the underlying matrix.
 * The counter is atomic; everything else is immutable after construction.
 */
class SymmetricOperator {
public:
    SymmetricOperator() = default;

    /// Dense row-major n*n array. Rejects asymmetry beyond 1e-12 relative.
    static SymmetricOperator dense(std::size_t n, std::vector<double> a);

    /// CSR with both triangles stored. Rejects asymmetric patterns/values.
    static SymmetricOperator sparse(CsrMatrix m);

    static SymmetricOperator diagonal(Vector d);
    static SymmetricOperator identity(std::size_t n);

    /// Lazy A + cI. Shares storage and counter with *this.
    SymmetricOperator shifted(double c) const;

    std::size_t dim() const { return dim_; }
    double shift() const { return shift_; }

    /// op * v; increments the shared matvec counter by exactly one.
    Vector apply(const Vector& v) const;
    void apply(const double* in, double* out) const;

    /// Upper bound on the spectral norm: the matrix infinity norm
    /// (max absolute row sum), one pass over cached row data.
    double norm_upper_bound() const;

    std::uint64_t matvec_count() const { return counter_->load(std::memory_order_relaxed); }

    /// Materializes the matrix (diagnostics and the small-scale dense
    /// oracle only). Does not touch the matvec counter.
    std::vector<double> to_dense() const;

private:
    struct Storage;
    std::shared_ptr<const Storage> storage_;
    std::shared_ptr<std::atomic<std::uint64_t>> counter_;
    std::size_t dim_ = 0;
    double shift_ = 0.0;
};

/// Matrix Market coordinate file (real, symmetric or verified-symmetric
/// general). Throws std::runtime_error on malformed or asymmetric input.
SymmetricOperator load_matrix_market(const std::string& path);

/// Square array in plain text / CSV, one row per line. Rejects asymmetry
/// beyond 1e-12 relative to the largest entry magnitude.
SymmetricOperator load_dense_text(const std::string& path);

void save_matrix_market(const SymmetricOperator& op, const std::string& path);

/// Plain-text vector, one or more whitespace-separated values per line.
Vector load_vector_text(const std::string& path);
void save_vector_text(const Vector& v, const std::string& path);

}  // namespace crs
