#ifndef PROXCERT_MATRIX_HPP
#define PROXCERT_MATRIX_HPP

#include "proxcert/errors.hpp"
#include "proxcert/numeric.hpp"

#include <initializer_list>
#include <vector>

namespace proxcert {

// Dense row-major matrix over an exact scalar type. Desk scale: no
// sparsity, no views; submatrix extraction copies.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}

    Matrix(int rows, int cols, const T& init = T(0))
        : rows_(rows), cols_(cols),
          data_(static_cast<size_t>(rows) * static_cast<size_t>(cols), init) {
        if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
    }

    Matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = static_cast<int>(rows.size());
        cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
        data_.reserve(static_cast<size_t>(rows_) * static_cast<size_t>(cols_));
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols_)
                throw DimensionError("ragged initializer");
            for (const auto& v : r) data_.push_back(v);
        }
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(int i, int j) { return data_[idx(i, j)]; }
    const T& operator()(int i, int j) const { return data_[idx(i, j)]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    std::vector<T> row(int i) const {
        std::vector<T> r(static_cast<size_t>(cols_));
        for (int j = 0; j < cols_; ++j) r[static_cast<size_t>(j)] = (*this)(i, j);
        return r;
    }

    std::vector<T> col(int j) const {
        std::vector<T> c(static_cast<size_t>(rows_));
        for (int i = 0; i < rows_; ++i) c[static_cast<size_t>(i)] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
        Matrix s(static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
        for (size_t i = 0; i < row_idx.size(); ++i)
            for (size_t j = 0; j < col_idx.size(); ++j)
                s(static_cast<int>(i), static_cast<int>(j)) = (*this)(row_idx[i], col_idx[j]);
        return s;
    }

    Matrix select_cols(const std::vector<int>& col_idx) const {
        std::vector<int> all_rows(static_cast<size_t>(rows_));
        for (int i = 0; i < rows_; ++i) all_rows[static_cast<size_t>(i)] = i;
        return submatrix(all_rows, col_idx);
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw DimensionError("matrix product shape mismatch");
        Matrix p(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
            }
        return p;
    }

    std::vector<T> mul(const std::vector<T>& v) const {
        if (static_cast<int>(v.size()) != cols_)
            throw DimensionError("matrix-vector shape mismatch");
        std::vector<T> r(static_cast<size_t>(rows_), T(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                r[static_cast<size_t>(i)] += (*this)(i, j) * v[static_cast<size_t>(j)];
        return r;
    }

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    size_t idx(int i, int j) const {
        return static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j);
    }

    int rows_, cols_;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

inline RatMatrix to_rat(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

inline RatVec to_rat(const IntVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

inline Int matrix_linf_norm(const IntMatrix& m) {
    Int s = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (abs(m(i, j)) > s) s = abs(m(i, j));
    return s;
}

// Horizontal / vertical concatenation; empty blocks are permitted so
// the general-form degenerate shapes (m = 0 or n = 0) compose cleanly.
template <typename T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.empty() && a.cols() == 0 && a.rows() == 0) return b;
    if (b.empty() && b.cols() == 0 && b.rows() == 0) return a;
    if (a.rows() != b.rows()) throw DimensionError("hcat row mismatch");
    Matrix<T> r(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

template <typename T>
Matrix<T> vcat(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() == 0) return b;
    if (b.rows() == 0) return a;
    if (a.cols() != b.cols()) throw DimensionError("vcat column mismatch");
    Matrix<T> r(a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) r(a.rows() + i, j) = b(i, j);
    return r;
}

} // namespace proxcert

#endif
