// Copyright 2026 The hopfrep Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Dense exact matrices and the row-reduction toolkit built on them.

#ifndef HOPFREP_MATRIX_HPP
#define HOPFREP_MATRIX_HPP

#include <hopfrep/scalar.hpp>

#include <cstddef>
#include <algorithm>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace hopfrep {

using Vec = std::vector<Scalar>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
    Matrix(std::initializer_list<std::initializer_list<Scalar>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (auto& row : init) {
            if (row.size() != cols_) throw MathError("ragged matrix literal");
            for (auto& x : row) a_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static Matrix diag(const Vec& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }
    // Upper Jordan block: a on the diagonal, 1 on the superdiagonal.
    static Matrix jordan(std::size_t n, const Scalar& a) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = a;
            if (i + 1 < n) m(i, i + 1) = 1;
        }
        return m;
    }
    static Matrix from_columns(const std::vector<Vec>& cols, std::size_t nrows) {
        Matrix m(nrows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j][i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    const std::vector<Scalar>& data() const { return a_; }

    Vec column(std::size_t j) const {
        Vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    Vec row(std::size_t i) const { return Vec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_); }

    bool is_zero() const {
        for (auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }
    friend bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }
    // Lexicographic comparison used for deterministic orderings.
    friend bool operator<(const Matrix& x, const Matrix& y) {
        if (x.rows_ != y.rows_) return x.rows_ < y.rows_;
        if (x.cols_ != y.cols_) return x.cols_ < y.cols_;
        for (std::size_t k = 0; k < x.a_.size(); ++k) {
            if (x.a_[k] < y.a_[k]) return true;
            if (y.a_[k] < x.a_[k]) return false;
        }
        return false;
    }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k)
            if (!o.a_[k].is_zero()) a_[k] += o.a_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t k = 0; k < a_.size(); ++k)
            if (!o.a_[k].is_zero()) a_[k] -= o.a_[k];
        return *this;
    }
    Matrix& operator*=(const Scalar& s) {
        for (auto& x : a_)
            if (!x.is_zero()) x *= s;
        return *this;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
    friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
    friend Matrix operator*(Matrix x, const Scalar& s) { return x *= s; }
    friend Matrix operator*(const Scalar& s, Matrix x) { return x *= s; }
    Matrix operator-() const { return *this * Scalar(-1); }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.cols_ != y.rows_) throw MathError("matrix product: shape mismatch");
        Matrix z(x.rows_, y.cols_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k) {
                const Scalar& xik = x(i, k);
                if (xik.is_zero()) continue;
                for (std::size_t j = 0; j < y.cols_; ++j) {
                    const Scalar& ykj = y(k, j);
                    if (!ykj.is_zero()) z(i, j) += xik * ykj;
                }
            }
        return z;
    }
    friend Vec operator*(const Matrix& x, const Vec& v) {
        if (x.cols_ != v.size()) throw MathError("matrix-vector product: shape mismatch");
        Vec out(x.rows_);
        for (std::size_t i = 0; i < x.rows_; ++i)
            for (std::size_t k = 0; k < x.cols_; ++k)
                if (!x(i, k).is_zero() && !v[k].is_zero()) out[i] += x(i, k) * v[k];
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix pow(unsigned e) const {
        Matrix acc = identity(rows_), b = *this;
        while (e) {
            if (e & 1u) acc = acc * b;
            e >>= 1u;
            if (e) b = b * b;
        }
        return acc;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
        for (std::size_t i = 0; i < m.rows_; ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) (*this)(r0 + i, c0 + j) = m(i, j);
    }

    Scalar trace() const {
        Scalar t;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            s += i ? ",[" : "[";
            for (std::size_t j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).str();
            s += "]";
        }
        return s + "]";
    }

private:
    void check_same(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw MathError("matrix sum: shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

inline Matrix kronecker(const Matrix& x, const Matrix& y) {
    Matrix z(x.rows() * y.rows(), x.cols() * y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (x(i, j).is_zero()) continue;
            for (std::size_t k = 0; k < y.rows(); ++k)
                for (std::size_t l = 0; l < y.cols(); ++l)
                    if (!y(k, l).is_zero()) z(i * y.rows() + k, j * y.cols() + l) = x(i, j) * y(k, l);
        }
    return z;
}

inline Matrix direct_sum(const Matrix& x, const Matrix& y) {
    Matrix z(x.rows() + y.rows(), x.cols() + y.cols());
    z.set_block(0, 0, x);
    z.set_block(x.rows(), x.cols(), y);
    return z;
}

struct Rref {
    Matrix r;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
    std::size_t rank() const { return pivots.size(); }
};

// Reduced row echelon form; the pivot row is the first one with a nonzero entry.
inline Rref rref(Matrix m) {
    Rref out;
    std::size_t row = 0;
    const std::size_t R = m.rows(), C = m.cols();
    for (std::size_t c = 0; c < C && row < R; ++c) {
        std::size_t p = row;
        while (p < R && m(p, c).is_zero()) ++p;
        if (p == R) continue;
        if (p != row)
            for (std::size_t j = 0; j < C; ++j) std::swap(m(p, j), m(row, j));
        Scalar inv = m(row, c).inv();
        std::vector<std::size_t> nz;
        for (std::size_t j = c; j < C; ++j)
            if (!m(row, j).is_zero()) {
                m(row, j) *= inv;
                nz.push_back(j);
            }
        for (std::size_t i = 0; i < R; ++i) {
            if (i == row || m(i, c).is_zero()) continue;
            Scalar f = m(i, c);
            for (std::size_t j : nz) m(i, j) -= f * m(row, j);
        }
        out.pivots.push_back(c);
        ++row;
    }
    out.r = std::move(m);
    return out;
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank(); }

inline std::vector<Vec> kernel(const Matrix& m) {
    Rref rr = rref(m);
    const std::size_t C = m.cols();
    std::vector<bool> is_pivot(C, false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < C; ++f) {
        if (is_pivot[f]) continue;
        Vec v(C);
        v[f] = 1;
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            if (!rr.r(i, f).is_zero()) v[rr.pivots[i]] = -rr.r(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Column-space basis drawn from the pivot columns of m.
inline std::vector<Vec> image(const Matrix& m) {
    Rref rr = rref(m);
    std::vector<Vec> basis;
    for (auto p : rr.pivots) basis.push_back(m.column(p));
    return basis;
}

inline Matrix columns_matrix(const std::vector<Vec>& cols, std::size_t n) { return Matrix::from_columns(cols, n); }

// Canonical basis of the span of the columns of b (columns of the transposed RREF).
inline Matrix canonical_span(const Matrix& b) {
    Rref rr = rref(b.transpose());
    Matrix out(b.rows(), rr.rank());
    for (std::size_t k = 0; k < rr.rank(); ++k)
        for (std::size_t i = 0; i < b.rows(); ++i) out(i, k) = rr.r(k, i);
    return out;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    if (!m.square()) throw MathError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    Matrix aug(n, 2 * n);
    aug.set_block(0, 0, m);
    aug.set_block(0, n, Matrix::identity(n));
    Rref rr = rref(aug);
    if (rr.rank() < n || rr.pivots[n - 1] != n - 1) return std::nullopt;
    return rr.r.block(0, n, n, n);
}

inline bool invertible(const Matrix& m) { return m.square() && rank(m) == m.rows(); }

// Solve a * x = b for x (b may have several columns); nothing if inconsistent.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw MathError("solve: shape mismatch");
    Matrix aug(a.rows(), a.cols() + b.cols());
    aug.set_block(0, 0, a);
    aug.set_block(0, a.cols(), b);
    Rref rr = rref(aug);
    Matrix x(a.cols(), b.cols());
    for (std::size_t i = 0; i < rr.rank(); ++i) {
        std::size_t p = rr.pivots[i];
        if (p >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(p, j) = rr.r(i, a.cols() + j);
    }
    return x;
}

inline Scalar determinant(Matrix m) {
    if (!m.square()) throw MathError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Scalar det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c).is_zero()) ++p;
        if (p == n) return Scalar(0);
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        Scalar inv = m(c, c).inv();
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c).is_zero()) continue;
            Scalar f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

// Extend the independent columns of b to a basis of the ambient space; returns
// only the added standard vectors (leftmost pivoting).
inline Matrix complement_basis(const Matrix& b) {
    const std::size_t n = b.rows();
    Matrix aug(n, b.cols() + n);
    aug.set_block(0, 0, b);
    aug.set_block(0, b.cols(), Matrix::identity(n));
    Rref rr = rref(aug);
    std::vector<Vec> extra;
    for (auto p : rr.pivots)
        if (p >= b.cols()) extra.push_back(aug.column(p));
    return Matrix::from_columns(extra, n);
}

inline Matrix hconcat(const Matrix& x, const Matrix& y) {
    if (x.cols() == 0) return y;
    if (y.cols() == 0) return x;
    if (x.rows() != y.rows()) throw MathError("hconcat: shape mismatch");
    Matrix z(x.rows(), x.cols() + y.cols());
    z.set_block(0, 0, x);
    z.set_block(0, x.cols(), y);
    return z;
}

}  // namespace hopfrep

#endif  // HOPFREP_MATRIX_HPP
