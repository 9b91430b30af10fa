#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace anncat {

using Int = mpz_class;

// Dense matrix over arbitrary-precision integers.  Row-major storage.
// Dimensions of zero are legal everywhere; empty products are identities.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }
    const Int& operator()(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Matrix operator*(const Matrix& o) const {
        assert(cols_ == o.rows_);
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& v = (*this)(i, k);
                if (v == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r(i, j) += v * o(k, j);
            }
        return r;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < cols_; ++c)
            std::swap((*this)(i, c), (*this)(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows_; ++r)
            std::swap((*this)(r, i), (*this)(r, j));
    }
    // row i += f * row j
    void add_row(std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t c = 0; c < cols_; ++c)
            (*this)(i, c) += f * (*this)(j, c);
    }
    // col i += f * col j
    void add_col(std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t r = 0; r < rows_; ++r)
            (*this)(r, i) += f * (*this)(r, j);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < cols_; ++c)
            (*this)(i, c) = -(*this)(i, c);
    }
    void negate_col(std::size_t j) {
        for (std::size_t r = 0; r < rows_; ++r)
            (*this)(r, j) = -(*this)(r, j);
    }

private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

// Fraction-free determinant (Bareiss).  Square input.
Int determinant(const Matrix& m);

// Smith normal form: U * A * V = D with U, V unimodular and D diagonal with
// d1 | d2 | ... | dr, all nonnegative.  Pivot selection: smallest nonzero
// absolute value in the remaining submatrix, ties broken by (row, column)
// order, so the factorization is reproducible across runs.
struct SmithForm {
    Matrix u; // rows x rows
    Matrix d; // rows x cols
    Matrix v; // cols x cols
};

SmithForm smith_normal_form(const Matrix& a);

} // namespace anncat
