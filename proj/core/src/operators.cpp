#include "crs/operators.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace crs {

namespace {

constexpr double kAsymmetryTol = 1e-12;

std::string bad(const std::string& what) { return "operator: " + what; }

}  // namespace

struct SymmetricOperator::Storage {
    enum class Kind { Dense, Csr } kind = Kind::Dense;
    std::size_t n = 0;
    std::vector<double> dense;  // row-major, Kind::Dense
    CsrMatrix csr;              // Kind::Csr
    // Cached per-row data for the infinity-norm bound under lazy shifts.
    Vector diag;
    Vector offdiag_abs_row_sum;
};

SymmetricOperator SymmetricOperator::dense(std::size_t n, std::vector<double> a) {
    if (n == 0) throw std::invalid_argument(bad("dimension must be positive"));
    if (a.size() != n * n) throw std::invalid_argument(bad("dense array size mismatch"));

    double max_abs = 0.0, max_asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            max_abs = std::max({max_abs, std::abs(a[i * n + j]), std::abs(a[j * n + i])});
            max_asym = std::max(max_asym, std::abs(a[i * n + j] - a[j * n + i]));
        }
    for (std::size_t i = 0; i < n; ++i) max_abs = std::max(max_abs, std::abs(a[i * n + i]));
    if (max_asym > kAsymmetryTol * std::max(1.0, max_abs))
        throw std::invalid_argument(bad("input matrix is not symmetric"));
    // Average the triangles so <Au,v> == <u,Av> holds to the last bit.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const double s = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = s;
            a[j * n + i] = s;
        }

    auto st = std::make_shared<Storage>();
    st->kind = Storage::Kind::Dense;
    st->n = n;
    st->dense = std::move(a);
    st->diag.assign(n, 0.0);
    st->offdiag_abs_row_sum.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        st->diag[i] = st->dense[i * n + i];
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) s += std::abs(st->dense[i * n + j]);
        st->offdiag_abs_row_sum[i] = s;
    }

    SymmetricOperator op;
    op.storage_ = std::move(st);
    op.counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
    op.dim_ = n;
    return op;
}

SymmetricOperator SymmetricOperator::sparse(CsrMatrix m) {
    const std::size_t n = m.n;
    if (n == 0) throw std::invalid_argument(bad("dimension must be positive"));
    if (m.row_ptr.size() != n + 1 || m.col_idx.size() != m.values.size() ||
        m.row_ptr.back() != m.values.size())
        throw std::invalid_argument(bad("malformed CSR arrays"));

    // Symmetry check through a coordinate map of the strictly off-diagonal part.
    std::map<std::pair<std::size_t, std::size_t>, double> entries;
    double max_abs = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
            const std::size_t j = m.col_idx[k];
            if (j >= n) throw std::invalid_argument(bad("CSR column index out of range"));
            max_abs = std::max(max_abs, std::abs(m.values[k]));
            if (j != i) entries[{i, j}] += m.values[k];
        }
    for (const auto& [ij, v] : entries) {
        auto it = entries.find({ij.second, ij.first});
        const double mirror = (it == entries.end()) ? 0.0 : it->second;
        if (std::abs(v - mirror) > kAsymmetryTol * std::max(1.0, max_abs))
            throw std::invalid_argument(bad("input matrix is not symmetric"));
    }

    auto st = std::make_shared<Storage>();
    st->kind = Storage::Kind::Csr;
    st->n = n;
    st->csr = std::move(m);
    st->diag.assign(n, 0.0);
    st->offdiag_abs_row_sum.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = st->csr.row_ptr[i]; k < st->csr.row_ptr[i + 1]; ++k) {
            if (st->csr.col_idx[k] == i)
                st->diag[i] += st->csr.values[k];
            else
                st->offdiag_abs_row_sum[i] += std::abs(st->csr.values[k]);
        }

    SymmetricOperator op;
    op.storage_ = std::move(st);
    op.counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
    op.dim_ = n;
    return op;
}

SymmetricOperator SymmetricOperator::diagonal(Vector d) {
    const std::size_t n = d.size();
    CsrMatrix m;
    m.n = n;
    m.row_ptr.resize(n + 1);
    m.col_idx.resize(n);
    m.values = std::move(d);
    for (std::size_t i = 0; i <= n; ++i) m.row_ptr[i] = i;
    for (std::size_t i = 0; i < n; ++i) m.col_idx[i] = i;
    return sparse(std::move(m));
}

SymmetricOperator SymmetricOperator::identity(std::size_t n) {
    return diagonal(Vector(n, 1.0));
}

SymmetricOperator SymmetricOperator::shifted(double c) const {
    SymmetricOperator op(*this);
    op.shift_ += c;
    return op;
}

void SymmetricOperator::apply(const double* in, double* out) const {
    const Storage& st = *storage_;
    const std::size_t n = dim_;
    if (st.kind == Storage::Kind::Dense) {
        const double* a = st.dense.data();
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            const double* row = a + i * n;
            for (std::size_t j = 0; j < n; ++j) s += row[j] * in[j];
            out[i] = s;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = st.csr.row_ptr[i]; k < st.csr.row_ptr[i + 1]; ++k)
                s += st.csr.values[k] * in[st.csr.col_idx[k]];
            out[i] = s;
        }
    }
    if (shift_ != 0.0)
        for (std::size_t i = 0; i < n; ++i) out[i] += shift_ * in[i];
    counter_->fetch_add(1, std::memory_order_relaxed);
}

Vector SymmetricOperator::apply(const Vector& v) const {
    if (!storage_) throw std::logic_error(bad("empty operator"));
    vec::check_dim(dim_, v.size(), "apply");
    Vector out(dim_);
    apply(v.data(), out.data());
    return out;
}

double SymmetricOperator::norm_upper_bound() const {
    if (!storage_) throw std::logic_error(bad("empty operator"));
    const Storage& st = *storage_;
    double bound = 0.0;
    for (std::size_t i = 0; i < dim_; ++i)
        bound = std::max(bound, std::abs(st.diag[i] + shift_) + st.offdiag_abs_row_sum[i]);
    return bound;
}

std::vector<double> SymmetricOperator::to_dense() const {
    if (!storage_) throw std::logic_error(bad("empty operator"));
    const Storage& st = *storage_;
    const std::size_t n = dim_;
    std::vector<double> a(n * n, 0.0);
    if (st.kind == Storage::Kind::Dense) {
        a = st.dense;
    } else {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = st.csr.row_ptr[i]; k < st.csr.row_ptr[i + 1]; ++k)
                a[i * n + st.csr.col_idx[k]] += st.csr.values[k];
    }
    if (shift_ != 0.0)
        for (std::size_t i = 0; i < n; ++i) a[i * n + i] += shift_;
    return a;
}

// ---------------------------------------------------------------------------
// File ingestion
// ---------------------------------------------------------------------------

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return in;
}

}  // namespace

SymmetricOperator load_matrix_market(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");

    std::istringstream hdr(line);
    std::string banner, object, format, field, symmetry;
    hdr >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix")
        throw std::runtime_error(path + ": not a Matrix Market file");
    if (format != "coordinate")
        throw std::runtime_error(path + ": only coordinate format is supported");
    if (field != "real")
        throw std::runtime_error(path + ": only real matrices are supported");
    const bool symmetric_banner = (symmetry == "symmetric");
    if (!symmetric_banner && symmetry != "general")
        throw std::runtime_error(path + ": unsupported symmetry '" + symmetry + "'");

    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '%') break;
    }
    std::istringstream sz(line);
    std::size_t rows = 0, cols = 0, nnz = 0;
    if (!(sz >> rows >> cols >> nnz)) throw std::runtime_error(path + ": bad size line");
    if (rows != cols) throw std::runtime_error(path + ": matrix is not square");

    std::map<std::pair<std::size_t, std::size_t>, double> coo;
    for (std::size_t k = 0; k < nnz; ++k) {
        std::size_t i = 0, j = 0;
        double v = 0.0;
        if (!(in >> i >> j >> v)) throw std::runtime_error(path + ": truncated entry list");
        if (i < 1 || i > rows || j < 1 || j > cols)
            throw std::runtime_error(path + ": entry index out of range");
        --i;
        --j;
        coo[{i, j}] += v;
        if (symmetric_banner && i != j) coo[{j, i}] += v;
    }

    CsrMatrix m;
    m.n = rows;
    m.row_ptr.assign(rows + 1, 0);
    for (const auto& [ij, v] : coo) m.row_ptr[ij.first + 1]++;
    for (std::size_t i = 0; i < rows; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
    m.col_idx.reserve(coo.size());
    m.values.reserve(coo.size());
    for (const auto& [ij, v] : coo) {  // std::map iterates in (row, col) order
        m.col_idx.push_back(ij.second);
        m.values.push_back(v);
    }
    return SymmetricOperator::sparse(std::move(m));
}

void save_matrix_market(const SymmetricOperator& op, const std::string& path) {
    const std::size_t n = op.dim();
    const std::vector<double> a = op.to_dense();
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, double>> lower;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            if (a[i * n + j] != 0.0) lower.push_back({{i, j}, a[i * n + j]});

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    out << n << " " << n << " " << lower.size() << "\n";
    out.precision(17);
    for (const auto& [ij, v] : lower)
        out << (ij.first + 1) << " " << (ij.second + 1) << " " << v << "\n";
}

SymmetricOperator load_dense_text(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        for (char& c : line)
            if (c == ',' || c == ';' || c == '\t') c = ' ';
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": no data");
    const std::size_t n = rows.size();
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n)
            throw std::runtime_error(path + ": array is not square");
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = rows[i][j];
    }
    return SymmetricOperator::dense(n, std::move(a));
}

Vector load_vector_text(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    Vector v;
    double x;
    while (in >> x) v.push_back(x);
    if (v.empty()) throw std::runtime_error(path + ": no data");
    return v;
}

void save_vector_text(const Vector& v, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out.precision(17);
    for (double x : v) out << x << "\n";
}

}  // namespace crs
