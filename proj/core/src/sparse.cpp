#include "bgas/sparse.hpp"

#include <algorithm>
#include <cmath>

#include "bgas/parallel.hpp"

namespace bgas {

SparseMatrix SparseMatrix::from_triplets(std::size_t dim, std::vector<Triplet> triplets) {
    // stable sort keeps the generation order within a coordinate, so the
    // coalescing sum is deterministic
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseMatrix m;
    m.dim_ = dim;
    m.row_ptr_.assign(dim + 1, 0);
    m.cols_.reserve(triplets.size());
    m.values_.reserve(triplets.size());
    std::size_t i = 0;
    while (i < triplets.size()) {
        const auto r = triplets[i].row, c = triplets[i].col;
        if (r >= dim || c >= dim) throw Error(ErrorKind::internal, "triplet out of range");
        double v = triplets[i].value;
        ++i;
        while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
            v += triplets[i].value;
            ++i;
        }
        if (v != 0.0) {
            m.cols_.push_back(c);
            m.values_.push_back(v);
            ++m.row_ptr_[r + 1];
        }
    }
    for (std::size_t r = 0; r < dim; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

SparseMatrix SparseMatrix::diagonal(const std::vector<double>& d) {
    SparseMatrix m;
    m.dim_ = d.size();
    m.row_ptr_.assign(d.size() + 1, 0);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] != 0.0) {
            m.cols_.push_back(static_cast<std::uint32_t>(i));
            m.values_.push_back(d[i]);
            ++m.row_ptr_[i + 1];
        }
    }
    for (std::size_t r = 0; r < d.size(); ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

SparseMatrix SparseMatrix::zero(std::size_t dim) {
    SparseMatrix m;
    m.dim_ = dim;
    m.row_ptr_.assign(dim + 1, 0);
    return m;
}

void SparseMatrix::matvec(const double* x, double* y, unsigned workers) const {
    parallel_for_chunks(dim_, workers, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t r = lo; r < hi; ++r) {
            double acc = 0.0;
            for (auto p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) acc += values_[p] * x[cols_[p]];
            y[r] = acc;
        }
    });
}

SparseMatrix SparseMatrix::transposed() const {
    SparseMatrix t;
    t.dim_ = dim_;
    t.row_ptr_.assign(dim_ + 1, 0);
    t.cols_.resize(nnz());
    t.values_.resize(nnz());
    for (auto c : cols_) ++t.row_ptr_[c + 1];
    for (std::size_t r = 0; r < dim_; ++r) t.row_ptr_[r + 1] += t.row_ptr_[r];
    std::vector<std::uint32_t> fill(t.row_ptr_.begin(), t.row_ptr_.end() - 1);
    for (std::size_t r = 0; r < dim_; ++r)
        for (auto p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
            const auto c = cols_[p];
            const auto q = fill[c]++;
            t.cols_[q] = static_cast<std::uint32_t>(r);
            t.values_[q] = values_[p];
        }
    return t;
}

SparseMatrix SparseMatrix::scaled(double a) const {
    SparseMatrix m = *this;
    for (auto& v : m.values_) v *= a;
    return m;
}

SparseMatrix SparseMatrix::col_scaled(const std::vector<double>& d) const {
    SparseMatrix m = *this;
    for (std::size_t p = 0; p < m.values_.size(); ++p) m.values_[p] *= d[m.cols_[p]];
    return m;
}

SparseMatrix SparseMatrix::row_scaled(const std::vector<double>& d) const {
    SparseMatrix m = *this;
    for (std::size_t r = 0; r < dim_; ++r)
        for (auto p = m.row_ptr_[r]; p < m.row_ptr_[r + 1]; ++p) m.values_[p] *= d[r];
    return m;
}

SparseMatrix SparseMatrix::sum(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.dim_ != b.dim_) throw Error(ErrorKind::internal, "sparse sum dimension mismatch");
    SparseMatrix m;
    m.dim_ = a.dim_;
    m.row_ptr_.assign(a.dim_ + 1, 0);
    m.cols_.reserve(a.nnz() + b.nnz());
    m.values_.reserve(a.nnz() + b.nnz());
    for (std::size_t r = 0; r < a.dim_; ++r) {
        auto pa = a.row_ptr_[r], ea = a.row_ptr_[r + 1];
        auto pb = b.row_ptr_[r], eb = b.row_ptr_[r + 1];
        while (pa < ea || pb < eb) {
            std::uint32_t c;
            double v;
            if (pb >= eb || (pa < ea && a.cols_[pa] < b.cols_[pb])) {
                c = a.cols_[pa];
                v = a.values_[pa++];
            } else if (pa >= ea || b.cols_[pb] < a.cols_[pa]) {
                c = b.cols_[pb];
                v = b.values_[pb++];
            } else {
                c = a.cols_[pa];
                v = a.values_[pa++] + b.values_[pb++];
            }
            if (v != 0.0) {
                m.cols_.push_back(c);
                m.values_.push_back(v);
                ++m.row_ptr_[r + 1];
            }
        }
    }
    for (std::size_t r = 0; r < a.dim_; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
    return m;
}

double SparseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

double SparseMatrix::asymmetry() const {
    const SparseMatrix t = transposed();
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        auto pa = row_ptr_[r], ea = row_ptr_[r + 1];
        auto pb = t.row_ptr_[r], eb = t.row_ptr_[r + 1];
        while (pa < ea || pb < eb) {
            if (pb >= eb || (pa < ea && cols_[pa] < t.cols_[pb])) {
                worst = std::max(worst, std::abs(values_[pa++]));
            } else if (pa >= ea || t.cols_[pb] < cols_[pa]) {
                worst = std::max(worst, std::abs(t.values_[pb++]));
            } else {
                worst = std::max(worst, std::abs(values_[pa++] - t.values_[pb++]));
            }
        }
    }
    return worst;
}

double SparseMatrix::norm_inf() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        double s = 0.0;
        for (auto p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) s += std::abs(values_[p]);
        worst = std::max(worst, s);
    }
    return worst;
}

LinearOperator SparseMatrix::as_operator(unsigned workers) const {
    return {dim_, [this, workers](const double* x, double* y) { matvec(x, y, workers); }};
}

SparseHermitian SparseHermitian::from_parts(SparseMatrix a) {
    SparseHermitian h;
    h.residual_ = a.asymmetry();
    const double scale = a.max_abs();
    if (h.residual_ > hermiticity_tol * std::max(1.0, scale))
        throw Error(ErrorKind::internal,
                    "operator assembly is not Hermitian: residual " + std::to_string(h.residual_) +
                        " at scale " + std::to_string(scale));
    // remove the rounding-level asymmetry exactly
    h.mat_ = SparseMatrix::sum(a.scaled(0.5), a.transposed().scaled(0.5));
    h.norm_ = h.mat_.norm_inf();
    return h;
}

}  // namespace bgas
