#pragma once

#include "crnbif/rational.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace crn {

inline bool is_zero(const Q& q) { return sgn(q) == 0; }

// Dense row-major matrix over a field T. T needs +,-,*,/, construction from
// int, and an is_zero overload.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t r, size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}
    Matrix(size_t r, size_t c, std::vector<T> data) : r_(r), c_(c), a_(std::move(data)) {
        if (a_.size() != r * c) throw std::invalid_argument("matrix data size mismatch");
    }
    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    T& operator()(size_t i, size_t j) { return a_[i * c_ + j]; }
    const T& operator()(size_t i, size_t j) const { return a_[i * c_ + j]; }

    std::vector<T> row(size_t i) const { return {a_.begin() + i * c_, a_.begin() + (i + 1) * c_}; }
    std::vector<T> col(size_t j) const {
        std::vector<T> v;
        for (size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
        return v;
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& b) const {
        if (c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix p(r_, b.c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t k = 0; k < c_; ++k) {
                if (is_zero((*this)(i, k))) continue;
                for (size_t j = 0; j < b.c_; ++j) p(i, j) += (*this)(i, k) * b(k, j);
            }
        return p;
    }
    std::vector<T> operator*(const std::vector<T>& v) const {
        if (v.size() != c_) throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<T> out(r_, T(0));
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }
    Matrix operator+(const Matrix& b) const {
        Matrix s = *this;
        for (size_t i = 0; i < a_.size(); ++i) s.a_[i] += b.a_[i];
        return s;
    }
    Matrix operator-(const Matrix& b) const {
        Matrix s = *this;
        for (size_t i = 0; i < a_.size(); ++i) s.a_[i] -= b.a_[i];
        return s;
    }
    bool operator==(const Matrix& b) const {
        if (r_ != b.r_ || c_ != b.c_) return false;
        for (size_t i = 0; i < a_.size(); ++i)
            if (!is_zero(a_[i] - b.a_[i])) return false;
        return true;
    }

    // Reduced row echelon form in place; returns pivot columns.
    std::vector<size_t> rref() {
        std::vector<size_t> piv;
        size_t pr = 0;
        for (size_t j = 0; j < c_ && pr < r_; ++j) {
            size_t sel = r_;
            for (size_t i = pr; i < r_; ++i)
                if (!is_zero((*this)(i, j))) { sel = i; break; }
            if (sel == r_) continue;
            for (size_t k = 0; k < c_; ++k) std::swap((*this)(pr, k), (*this)(sel, k));
            T inv = T(1) / (*this)(pr, j);
            for (size_t k = 0; k < c_; ++k) (*this)(pr, k) = (*this)(pr, k) * inv;
            for (size_t i = 0; i < r_; ++i) {
                if (i == pr || is_zero((*this)(i, j))) continue;
                T f = (*this)(i, j);
                for (size_t k = 0; k < c_; ++k) (*this)(i, k) -= f * (*this)(pr, k);
            }
            piv.push_back(j);
            ++pr;
        }
        return piv;
    }

    size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    // Basis of the right kernel, one vector per free column.
    std::vector<std::vector<T>> nullspace() const {
        Matrix m = *this;
        auto piv = m.rref();
        std::vector<bool> is_piv(c_, false);
        for (auto p : piv) is_piv[p] = true;
        std::vector<std::vector<T>> basis;
        for (size_t f = 0; f < c_; ++f) {
            if (is_piv[f]) continue;
            std::vector<T> v(c_, T(0));
            v[f] = T(1);
            for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = T(0) - m(i, f);
            basis.push_back(v);
        }
        return basis;
    }

    std::optional<Matrix> inverse() const {
        if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
        Matrix aug(r_, 2 * c_);
        for (size_t i = 0; i < r_; ++i) {
            for (size_t j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, c_ + i) = T(1);
        }
        auto piv = aug.rref();
        if (piv.size() < r_ || piv[r_ - 1] >= c_) return std::nullopt;
        Matrix inv(r_, c_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
        return inv;
    }

    T det() const {
        if (r_ != c_) throw std::invalid_argument("determinant of non-square matrix");
        Matrix m = *this;
        T d(1);
        for (size_t j = 0; j < c_; ++j) {
            size_t sel = r_;
            for (size_t i = j; i < r_; ++i)
                if (!is_zero(m(i, j))) { sel = i; break; }
            if (sel == r_) return T(0);
            if (sel != j) {
                for (size_t k = 0; k < c_; ++k) std::swap(m(j, k), m(sel, k));
                d = T(0) - d;
            }
            d = d * m(j, j);
            for (size_t i = j + 1; i < r_; ++i) {
                if (is_zero(m(i, j))) continue;
                T f = m(i, j) / m(j, j);
                for (size_t k = j; k < c_; ++k) m(i, k) -= f * m(j, k);
            }
        }
        return d;
    }

    // Solves A x = b for square nonsingular A.
    std::optional<std::vector<T>> solve(const std::vector<T>& b) const {
        if (r_ != c_ || b.size() != r_) throw std::invalid_argument("solve shape mismatch");
        Matrix aug(r_, c_ + 1);
        for (size_t i = 0; i < r_; ++i) {
            for (size_t j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, c_) = b[i];
        }
        auto piv = aug.rref();
        if (piv.size() < r_ || piv[r_ - 1] >= c_) return std::nullopt;
        std::vector<T> x(c_);
        for (size_t i = 0; i < r_; ++i) x[i] = aug(i, c_);
        return x;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

using QMatrix = Matrix<Q>;

// Rank by fraction-free (Bareiss) elimination on the integer matrix obtained by
// clearing row denominators, pivoting on the last nonzero entry of a column.
size_t rank_fraction_free(const QMatrix& m);

QMatrix hstack(const QMatrix& a, const QMatrix& b);
QMatrix vstack(const QMatrix& a, const QMatrix& b);

}  // namespace crn
