#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <vector>

#include "crc/error.hpp"
#include "crc/scalar.hpp"

namespace crc {

/// Small dense row-major matrix.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw InvalidArgument("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
        os << '[';
        for (std::size_t r = 0; r < m.rows_; ++r) {
            os << (r ? ", [" : "[");
            for (std::size_t c = 0; c < m.cols_; ++c) os << (c ? ", " : "") << m(r, c);
            os << ']';
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<long long>;

/**
 * Inverse by Gauss-Jordan elimination. Exact scalars stay exact; for
 * approximate ones the pivot of largest magnitude is taken. Returns an
 * empty matrix when the input is singular (exactly, or below tol).
 */
inline Matrix<Scalar> inverse(const Matrix<Scalar>& m, double tol = 1e-12) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw InvalidArgument("inverse of a non-square matrix");
    Matrix<Scalar> a = m;
    Matrix<Scalar> inv(n, n);
    for (std::size_t i = 0; i < n; ++i) inv(i, i) = 1;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        double best = -1.0;
        for (std::size_t r = col; r < n; ++r) {
            if (a(r, col).is_zero(tol)) continue;
            const double mag = std::fabs(a(r, col).value());
            if (a(r, col).is_exact() && pivot != n) continue;  // first exact nonzero is fine
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (pivot == n) return {};
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const Scalar p = a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) /= p;
            inv(col, c) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero(0.0)) continue;
            const Scalar f = a(r, col);
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

inline std::vector<Scalar> multiply(const Matrix<Scalar>& m, const std::vector<Scalar>& v) {
    if (m.cols() != v.size()) throw InvalidArgument("dimension mismatch in matrix-vector product");
    std::vector<Scalar> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Scalar acc;
        for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

}  // namespace crc
