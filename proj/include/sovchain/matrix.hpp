#pragma once

#include "sovchain/poly.hpp"
#include "sovchain/ring.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sovchain {

/// Dense row-major matrix over a coefficient ring.  Used both for scalar
/// matrices (twists, projectors) and for operators on the chain Hilbert
/// space.
template <class R>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, R(0))
    {
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = R(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix operator+(const Matrix& o) const
    {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const
    {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }

    Matrix operator*(const Matrix& o) const
    {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const R& a = (*this)(i, k);
                if (RingTraits<R>::is_zero(a, 0.0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        }
        return r;
    }

    Matrix operator*(const R& s) const
    {
        Matrix r = *this;
        for (R& x : r.data_) x *= s;
        return r;
    }

    Matrix operator-() const { return *this * R(-1); }

    bool operator==(const Matrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix transpose() const
    {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    R trace() const
    {
        R t(0);
        for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_zero(double tol = 0.0) const
    {
        for (const R& x : data_)
            if (!RingTraits<R>::is_zero(x, tol)) return false;
        return true;
    }

    double max_abs() const
    {
        double m = 0.0;
        for (const R& x : data_) m = std::max(m, RingTraits<R>::abs(x));
        return m;
    }

    static Matrix kron(const Matrix& a, const Matrix& b)
    {
        Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                const R& s = a(i, j);
                if (RingTraits<R>::is_zero(s, 0.0)) continue;
                for (std::size_t k = 0; k < b.rows_; ++k)
                    for (std::size_t l = 0; l < b.cols_; ++l)
                        r(i * b.rows_ + k, j * b.cols_ + l) = s * b(k, l);
            }
        return r;
    }

    Matrix submatrix(const std::vector<std::size_t>& row_idx,
                     const std::vector<std::size_t>& col_idx) const
    {
        Matrix r(row_idx.size(), col_idx.size());
        for (std::size_t i = 0; i < row_idx.size(); ++i)
            for (std::size_t j = 0; j < col_idx.size(); ++j)
                r(i, j) = (*this)(row_idx[i], col_idx[j]);
        return r;
    }

    /// Row-echelon reduction in place; returns pivot column indices.
    /// For the float ring a relative pivot threshold is applied.
    std::vector<std::size_t> row_reduce(double tol = 0.0)
    {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t best = row;
            double best_abs = RingTraits<R>::abs((*this)(row, col));
            for (std::size_t i = row + 1; i < rows_; ++i) {
                double a = RingTraits<R>::abs((*this)(i, col));
                if (a > best_abs) {
                    best = i;
                    best_abs = a;
                }
            }
            bool zero = RingTraits<R>::exact ? RingTraits<R>::is_zero((*this)(best, col), 0.0)
                                             : best_abs <= tol;
            if (zero) continue;
            if (best != row) swap_rows(best, row);
            const R inv = R(1) / (*this)(row, col);
            for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row) continue;
                const R f = (*this)(i, col);
                if (RingTraits<R>::is_zero(f, 0.0)) continue;
                for (std::size_t j = col; j < cols_; ++j)
                    (*this)(i, j) -= f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank(double tol = 0.0) const
    {
        Matrix m = *this;
        return m.row_reduce(tol).size();
    }

    /// Solves A X = B for X (A square, invertible).
    Matrix solve(const Matrix& b) const
    {
        if (rows_ != cols_ || b.rows_ != rows_)
            throw std::invalid_argument("solve: shape mismatch");
        Matrix aug(rows_, cols_ + b.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug(i, j) = (*this)(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) aug(i, cols_ + j) = b(i, j);
        }
        auto pivots = aug.row_reduce();
        if (pivots.size() != rows_) throw std::runtime_error("solve: singular matrix");
        Matrix x(cols_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) x(i, j) = aug(i, cols_ + j);
        return x;
    }

    Matrix inverse() const { return solve(identity(rows_)); }

    /// Solves the overdetermined exact system A X = B when A has full
    /// column rank: picks pivot rows from the echelon form and solves the
    /// square restriction, then verifies the remaining equations.
    Matrix solve_tall(const Matrix& b) const
    {
        Matrix m = *this;
        // Record pivot rows by reducing the transpose-free way: reduce a
        // copy augmented with row indices.
        std::vector<std::size_t> rows_used;
        {
            Matrix work = *this;
            std::size_t row = 0;
            std::vector<std::size_t> perm(rows_);
            for (std::size_t i = 0; i < rows_; ++i) perm[i] = i;
            for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
                std::size_t best = row;
                double best_abs = RingTraits<R>::abs(work(row, col));
                for (std::size_t i = row + 1; i < rows_; ++i) {
                    double a = RingTraits<R>::abs(work(i, col));
                    if (a > best_abs) {
                        best = i;
                        best_abs = a;
                    }
                }
                if (RingTraits<R>::is_zero(work(best, col), 1e-12)) continue;
                work.swap_rows(best, row);
                std::swap(perm[best], perm[row]);
                const R inv = R(1) / work(row, col);
                for (std::size_t j = col; j < cols_; ++j) work(row, j) *= inv;
                for (std::size_t i = 0; i < rows_; ++i) {
                    if (i == row) continue;
                    const R f = work(i, col);
                    if (RingTraits<R>::is_zero(f, 0.0)) continue;
                    for (std::size_t j = col; j < cols_; ++j) work(i, j) -= f * work(row, j);
                }
                rows_used.push_back(perm[row]);
                ++row;
            }
        }
        if (rows_used.size() != cols_) throw std::runtime_error("solve_tall: rank deficient");
        std::vector<std::size_t> all_cols(cols_);
        for (std::size_t j = 0; j < cols_; ++j) all_cols[j] = j;
        Matrix sq = submatrix(rows_used, all_cols);
        std::vector<std::size_t> b_cols(b.cols());
        for (std::size_t j = 0; j < b.cols(); ++j) b_cols[j] = j;
        Matrix rhs = b.submatrix(rows_used, b_cols);
        return sq.solve(rhs);
    }

    R det() const
    {
        if (rows_ != cols_) throw std::invalid_argument("det: non-square");
        Matrix m = *this;
        R d(1);
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t best = row;
            double best_abs = RingTraits<R>::abs(m(row, col));
            for (std::size_t i = row + 1; i < rows_; ++i) {
                double a = RingTraits<R>::abs(m(i, col));
                if (a > best_abs) {
                    best = i;
                    best_abs = a;
                }
            }
            if (RingTraits<R>::is_zero(m(best, col), 0.0)) return R(0);
            if (best != row) {
                m.swap_rows(best, row);
                d = -d;
            }
            d *= m(row, col);
            const R inv = R(1) / m(row, col);
            for (std::size_t i = row + 1; i < rows_; ++i) {
                const R f = m(i, col) * inv;
                if (RingTraits<R>::is_zero(f, 0.0)) continue;
                for (std::size_t j = col; j < cols_; ++j) m(i, j) -= f * m(row, j);
            }
            ++row;
        }
        return d;
    }

    /// Characteristic polynomial det(x I - M) by Faddeev-LeVerrier.
    Poly<R> char_poly() const
    {
        if (rows_ != cols_) throw std::invalid_argument("char_poly: non-square");
        const std::size_t n = rows_;
        std::vector<R> c(n + 1, R(0));
        c[n] = R(1);
        Matrix m(n, n); // M_0 = 0
        for (std::size_t k = 1; k <= n; ++k) {
            m = (*this) * m;
            for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
            c[n - k] = -((*this) * m).trace() / R(static_cast<long>(k));
        }
        return Poly<R>(std::move(c));
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    const std::vector<R>& data() const { return data_; }
    std::vector<R>& data() { return data_; }

private:
    void check_same_shape(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<R> data_;
};

template <class R>
Matrix<R> commutator(const Matrix<R>& a, const Matrix<R>& b)
{
    return a * b - b * a;
}

template <class R>
Matrix<Complex> matrix_to_complex(const Matrix<R>& m)
{
    Matrix<Complex> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_complex(m(i, j));
    return r;
}

} // namespace sovchain
