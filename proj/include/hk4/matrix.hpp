#pragma once

// Dense exact matrices and the rational linear algebra built on them
// (determinants, echelon forms, kernels, inverses).

#include "hk4/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hk4 {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty())
            return Matrix();
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("ragged matrix rows");
            std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
        }
        return m;
    }

    /// Small literal matrices, mainly for tests: Matrix::of({{1, 2}, {3, 4}}).
    static Matrix of(std::initializer_list<std::initializer_list<long>> rows) {
        std::vector<std::vector<T>> v;
        for (auto& r : rows) {
            std::vector<T> row;
            for (long x : r)
                row.emplace_back(x);
            v.push_back(std::move(row));
        }
        return from_rows(v);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::vector<T> row_vector(std::size_t i) const {
        auto r = row(i);
        return {r.begin(), r.end()};
    }
    std::vector<T> col_vector(std::size_t j) const {
        std::vector<T> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    /// Rows [first, first + count) as a new matrix.
    Matrix row_block(std::size_t first, std::size_t count) const {
        Matrix m(count, cols_);
        std::copy(data_.begin() + first * cols_,
                  data_.begin() + (first + count) * cols_, m.data_.begin());
        return m;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k)
            r.data_[k] += b.data_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        check_same_shape(a, b);
        Matrix r = a;
        for (std::size_t k = 0; k < r.data_.size(); ++k)
            r.data_[k] -= b.data_[k];
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix r = a;
        for (auto& x : r.data_)
            x *= s;
        return r;
    }

    /// Product skipping zero entries of the left factor; most matrices in
    /// this library are sparse.
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product: shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (sgn(aik) == 0)
                    continue;
                auto brow = b.row(k);
                auto rrow = r.row(i);
                for (std::size_t j = 0; j < b.cols_; ++j)
                    if (sgn(brow[j]) != 0)
                        rrow[j] += aik * brow[j];
            }
        return r;
    }

    const std::vector<T>& data() const { return data_; }

private:
    static void check_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Mat = Matrix<Rat>;
using ZMat = Matrix<Int>;

inline bool is_integral(const Mat& m) {
    return std::all_of(m.data().begin(), m.data().end(),
                       [](const Rat& x) { return is_integer(x); });
}

inline ZMat to_integer(const Mat& m) {
    if (!is_integral(m))
        throw std::invalid_argument("matrix has non-integer entries");
    ZMat z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            z(i, j) = m(i, j).get_num();
    return z;
}

inline Mat to_rational(const ZMat& z) {
    Mat m(z.rows(), z.cols());
    for (std::size_t i = 0; i < z.rows(); ++i)
        for (std::size_t j = 0; j < z.cols(); ++j)
            m(i, j) = z(i, j);
    return m;
}

/// Returns (d, d*m) with d the least common denominator of m.
inline std::pair<Int, ZMat> clear_denominators(const Mat& m) {
    Int d = common_denominator(m.data());
    ZMat z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            z(i, j) = Int(m(i, j) * d);
    return {d, z};
}

template <class T>
std::vector<T> vec_mat(const std::vector<T>& v, const Matrix<T>& m) {
    if (v.size() != m.rows())
        throw std::invalid_argument("vector-matrix product: shape mismatch");
    std::vector<T> r(m.cols());
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (sgn(v[k]) == 0)
            continue;
        auto mrow = m.row(k);
        for (std::size_t j = 0; j < r.size(); ++j)
            if (sgn(mrow[j]) != 0)
                r[j] += v[k] * mrow[j];
    }
    return r;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: length mismatch");
    T s = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (sgn(a[k]) != 0 && sgn(b[k]) != 0)
            s += a[k] * b[k];
    return s;
}

/// Determinant of a square integer matrix by Bareiss fraction-free
/// elimination.
inline Int bareiss_det(ZMat m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        const Int pivot = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Int mik = m(i, k);
            for (std::size_t j = k + 1; j < n; ++j) {
                Int v = pivot * m(i, j);
                if (mik != 0)
                    v -= mik * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = pivot;
    }
    return sign * m(n - 1, n - 1);
}

inline Rat det(const Mat& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    // Clear each row separately so the scale is the product of row lcms.
    ZMat z(m.rows(), m.cols());
    Int scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int d = common_denominator(m.row(i));
        scale *= d;
        for (std::size_t j = 0; j < m.cols(); ++j)
            z(i, j) = Int(m(i, j) * d);
    }
    return make_rat(bareiss_det(std::move(z)), scale);
}

namespace detail {

inline void remove_content(std::span<Int> row) {
    Int g = 0;
    for (const Int& x : row)
        if (x != 0) {
            g = gcd(g, x);
            if (g == 1)
                return;
        }
    if (g > 1)
        for (Int& x : row)
            if (x != 0)
                mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

/// Row echelon form of an integer matrix by fraction-free elimination with
/// content removal; returns the pivot columns. Zero rows are dropped.
inline std::vector<std::size_t> integer_echelon(ZMat& m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        // Prefer the smallest nonzero pivot to keep growth down.
        for (std::size_t i = r; i < m.rows(); ++i)
            if (m(i, c) != 0 && (m(p, c) == 0 || abs(m(i, c)) < abs(m(p, c))))
                p = i;
        if (m(p, c) == 0)
            continue;
        m.swap_rows(r, p);
        const Int pivot = m(r, c);
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0)
                continue;
            Int g = gcd(pivot, m(i, c));
            Int a = pivot / g, b = m(i, c) / g;
            auto ri = m.row(i);
            auto rr = m.row(r);
            for (std::size_t j = c; j < m.cols(); ++j) {
                ri[j] *= a;
                if (rr[j] != 0)
                    ri[j] -= b * rr[j];
            }
            remove_content(ri);
        }
        pivots.push_back(c);
        ++r;
    }
    m = m.row_block(0, r);
    return pivots;
}

}  // namespace detail

/// Reduced row echelon form over Q. Zero rows are dropped; pivot columns are
/// written to `pivots` when given.
inline Mat rref(const Mat& m, std::vector<std::size_t>* pivots = nullptr) {
    ZMat z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int d = common_denominator(m.row(i));
        for (std::size_t j = 0; j < m.cols(); ++j)
            z(i, j) = Int(m(i, j) * d);
    }
    auto piv = detail::integer_echelon(z);
    Mat r = to_rational(z);
    // Back substitution, normalising each pivot to 1.
    for (std::size_t k = piv.size(); k-- > 0;) {
        const Rat inv = 1 / r(k, piv[k]);
        for (std::size_t j = piv[k]; j < r.cols(); ++j)
            if (sgn(r(k, j)) != 0)
                r(k, j) *= inv;
        for (std::size_t i = 0; i < k; ++i) {
            const Rat f = r(i, piv[k]);
            if (sgn(f) == 0)
                continue;
            for (std::size_t j = piv[k]; j < r.cols(); ++j)
                if (sgn(r(k, j)) != 0)
                    r(i, j) -= f * r(k, j);
        }
    }
    if (pivots)
        *pivots = std::move(piv);
    return r;
}

inline std::size_t rank(const Mat& m) {
    std::vector<std::size_t> piv;
    rref(m, &piv);
    return piv.size();
}

/// Basis (as rows) of the right kernel {x : m x = 0}.
inline Mat nullspace(const Mat& m) {
    std::vector<std::size_t> piv;
    Mat r = rref(m, &piv);
    const std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : piv)
        is_pivot[p] = true;
    Mat k(n - piv.size(), n);
    std::size_t row = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        k(row, f) = 1;
        for (std::size_t i = 0; i < piv.size(); ++i)
            k(row, piv[i]) = -r(i, f);
        ++row;
    }
    return k;
}

inline Mat inverse(const Mat& m) {
    const std::size_t n = m.rows();
    if (m.cols() != n)
        throw std::invalid_argument("inverse of a non-square matrix");
    Mat aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    std::vector<std::size_t> piv;
    Mat r = rref(aug, &piv);
    if (piv.size() < n || piv[n - 1] != n - 1)
        throw std::domain_error("matrix is singular");
    Mat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = r(i, n + j);
    return inv;
}

}  // namespace hk4
