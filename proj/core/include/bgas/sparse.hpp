#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bgas/errors.hpp"

namespace bgas {

struct Triplet {
    std::uint32_t row = 0;
    std::uint32_t col = 0;
    double value = 0.0;
};

// y = A x for a square operator of dimension dim.
struct LinearOperator {
    std::size_t dim = 0;
    std::function<void(const double*, double*)> apply;
};

// Real square CSR matrix. Assembly coalesces duplicate coordinates in a
// deterministic order and drops exact zeros.
class SparseMatrix {
public:
    SparseMatrix() = default;
    static SparseMatrix from_triplets(std::size_t dim, std::vector<Triplet> triplets);
    static SparseMatrix diagonal(const std::vector<double>& d);
    static SparseMatrix zero(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t nnz() const { return values_.size(); }

    void matvec(const double* x, double* y, unsigned workers = 1) const;

    SparseMatrix transposed() const;
    SparseMatrix scaled(double a) const;
    // this * diag(d)  (scales columns; the diagonal factor acts first)
    SparseMatrix col_scaled(const std::vector<double>& d) const;
    // diag(d) * this
    SparseMatrix row_scaled(const std::vector<double>& d) const;
    static SparseMatrix sum(const SparseMatrix& a, const SparseMatrix& b);

    double max_abs() const;
    // max |A - A^T| over all coordinates
    double asymmetry() const;
    // max row sum of |entries|: inf-norm, used as the scale estimate
    double norm_inf() const;

    const std::vector<std::uint32_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::uint32_t>& cols() const { return cols_; }
    const std::vector<double>& values() const { return values_; }

    // Borrows this matrix; the matrix must outlive the returned operator.
    LinearOperator as_operator(unsigned workers = 1) const;

private:
    std::size_t dim_ = 0;
    std::vector<std::uint32_t> row_ptr_;  // dim + 1
    std::vector<std::uint32_t> cols_;
    std::vector<double> values_;
};

// Hermitian (real symmetric) operator: a SparseMatrix whose assembly residual
// max|A - A^T| was verified against hermiticity_tol * max|A| and then removed
// exactly by (A + A^T) / 2.
class SparseHermitian {
public:
    static constexpr double hermiticity_tol = 1e-13;

    SparseHermitian() = default;
    static SparseHermitian from_parts(SparseMatrix a);

    std::size_t dim() const { return mat_.dim(); }
    std::size_t nnz() const { return mat_.nnz(); }
    const SparseMatrix& matrix() const { return mat_; }
    double norm_estimate() const { return norm_; }
    double assembly_residual() const { return residual_; }

    void matvec(const double* x, double* y, unsigned workers = 1) const {
        mat_.matvec(x, y, workers);
    }
    LinearOperator as_operator(unsigned workers = 1) const { return mat_.as_operator(workers); }

private:
    SparseMatrix mat_;
    double norm_ = 0.0;
    double residual_ = 0.0;
};

}  // namespace bgas
