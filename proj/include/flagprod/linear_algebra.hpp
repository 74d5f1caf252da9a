#pragma once

#include "flagprod/rational.hpp"

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace flagprod {

/// Row-major dense matrix over an exact ring.
template <class T>
class DenseMatrix
{
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

    static DenseMatrix identity(std::size_t n)
    {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    void swap_rows(std::size_t i, std::size_t k)
    {
        if (i == k)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(i, j), (*this)(k, j));
    }
    void swap_cols(std::size_t j, std::size_t k)
    {
        if (j == k)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, j), (*this)(i, k));
    }

    template <class U>
    DenseMatrix<U> cast() const
    {
        DenseMatrix<U> m(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                m(i, j) = U((*this)(i, j));
        return m;
    }

    friend bool operator==(const DenseMatrix& x, const DenseMatrix& y)
    {
        return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.a_ == y.a_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

template <class T>
DenseMatrix<T> operator*(const DenseMatrix<T>& x, const DenseMatrix<T>& y)
{
    if (x.cols() != y.rows())
        throw std::invalid_argument("matrix product: shape mismatch");
    DenseMatrix<T> z(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            if (x(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < y.cols(); ++j)
                z(i, j) += x(i, k) * y(k, j);
        }
    return z;
}

/// Signals that a Checked64 computation left the int64 range; callers
/// redo the computation in BigInt.
struct IntegerOverflow : std::overflow_error
{
    IntegerOverflow() : std::overflow_error("int64 overflow") {}
};

/// int64 with overflow detection on every operation.
struct Checked64
{
    std::int64_t v = 0;

    Checked64() = default;
    Checked64(std::int64_t x) : v(x) {}  // NOLINT(google-explicit-constructor)
    explicit Checked64(const BigInt& x)
    {
        if (!x.fits_slong_p())
            throw IntegerOverflow();
        v = x.get_si();
    }
    explicit operator BigInt() const { return BigInt(static_cast<long>(v)); }

    friend Checked64 operator+(Checked64 a, Checked64 b)
    {
        Checked64 r;
        if (__builtin_add_overflow(a.v, b.v, &r.v))
            throw IntegerOverflow();
        return r;
    }
    friend Checked64 operator-(Checked64 a, Checked64 b)
    {
        Checked64 r;
        if (__builtin_sub_overflow(a.v, b.v, &r.v))
            throw IntegerOverflow();
        return r;
    }
    friend Checked64 operator*(Checked64 a, Checked64 b)
    {
        Checked64 r;
        if (__builtin_mul_overflow(a.v, b.v, &r.v))
            throw IntegerOverflow();
        return r;
    }
    // truncating, like BigInt
    friend Checked64 operator/(Checked64 a, Checked64 b)
    {
        if (b.v == -1 && a.v == std::numeric_limits<std::int64_t>::min())
            throw IntegerOverflow();
        return Checked64(a.v / b.v);
    }
    friend Checked64 operator%(Checked64 a, Checked64 b)
    {
        if (b.v == -1)
            return Checked64(0);
        return Checked64(a.v % b.v);
    }
    Checked64 operator-() const { return Checked64(0) - *this; }
    Checked64& operator+=(Checked64 b) { return *this = *this + b; }
    Checked64& operator-=(Checked64 b) { return *this = *this - b; }
    friend bool operator==(Checked64 a, Checked64 b) { return a.v == b.v; }
    friend bool operator==(Checked64 a, int b) { return a.v == b; }
    friend bool operator<(Checked64 a, Checked64 b) { return a.v < b.v; }
};

inline Checked64 abs_value(Checked64 x) { return x.v < 0 ? -x : x; }
inline BigInt abs_value(const BigInt& x) { return abs(x); }

/// Rank by fraction-free (Bareiss) elimination; destroys `m`. Every
/// intermediate entry is a minor of the input, so divisions are exact.
template <class T>
std::size_t bareiss_rank(DenseMatrix<T>& m)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    T prev(1);
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && m(p, c) == 0)
            ++p;
        if (p == rows)
            continue;
        m.swap_rows(p, rank);
        const T pivot = m(rank, c);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            const T lead = m(i, c);
            for (std::size_t j = c + 1; j < cols; ++j)
                m(i, j) = (pivot * m(i, j) - lead * m(rank, j)) / prev;
            m(i, c) = T(0);
        }
        prev = pivot;
        ++rank;
    }
    return rank;
}

/// Determinant by Bareiss elimination (square matrices).
template <class T>
T bareiss_determinant(DenseMatrix<T> m)
{
    const std::size_t n = m.rows();
    if (n != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    T prev(1);
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0)
            ++p;
        if (p == n)
            return T(0);
        if (p != k) {
            m.swap_rows(p, k);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(k, k) * m(i, j) - m(i, k) * m(k, j)) / prev;
            m(i, k) = T(0);
        }
        prev = m(k, k);
    }
    return n == 0 ? T(1) : (sign < 0 ? T(0) - m(n - 1, n - 1) : m(n - 1, n - 1));
}

namespace detail {

struct NoTransform
{
    void swap_rows(std::size_t, std::size_t) {}
    void swap_cols(std::size_t, std::size_t) {}
    template <class T>
    void add_row(std::size_t, std::size_t, const T&) {}
    template <class T>
    void add_col(std::size_t, std::size_t, const T&) {}
    void negate_row(std::size_t) {}
};

// The running products L and R in D = L A R.
template <class T>
struct TrackTransform
{
    DenseMatrix<T>& left;
    DenseMatrix<T>& right;
    void swap_rows(std::size_t i, std::size_t k) { left.swap_rows(i, k); }
    void swap_cols(std::size_t i, std::size_t k) { right.swap_cols(i, k); }
    // row_dst += c * row_src
    void add_row(std::size_t dst, std::size_t src, const T& c)
    {
        for (std::size_t j = 0; j < left.cols(); ++j)
            left(dst, j) += c * left(src, j);
    }
    // col_dst += c * col_src
    void add_col(std::size_t dst, std::size_t src, const T& c)
    {
        for (std::size_t i = 0; i < right.rows(); ++i)
            right(i, dst) += c * right(i, src);
    }
    void negate_row(std::size_t i)
    {
        for (std::size_t j = 0; j < left.cols(); ++j)
            left(i, j) = T(0) - left(i, j);
    }
};

template <class T, class Transform>
void smith_reduce(DenseMatrix<T>& m, Transform& tx)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    auto add_row = [&](std::size_t dst, std::size_t src, const T& c, std::size_t from) {
        for (std::size_t j = from; j < cols; ++j)
            m(dst, j) += c * m(src, j);
        tx.add_row(dst, src, c);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const T& c, std::size_t from) {
        for (std::size_t i = from; i < rows; ++i)
            m(i, dst) += c * m(i, src);
        tx.add_col(dst, src, c);
    };

    for (std::size_t t = 0; t < rows && t < cols; ++t) {
        // pivot: smallest nonzero magnitude in the trailing block
        std::size_t pi = rows, pj = cols;
        T best(0);
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (!(m(i, j) == 0)) {
                    T a = abs_value(m(i, j));
                    if (pi == rows || a < best) {
                        best = a;
                        pi = i;
                        pj = j;
                    }
                }
        if (pi == rows)
            return;
        m.swap_rows(t, pi);
        tx.swap_rows(t, pi);
        m.swap_cols(t, pj);
        tx.swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (!(m(i, t) == 0)) {
                    const T q = m(i, t) / m(t, t);
                    add_row(i, t, T(0) - q, t);
                    if (!(m(i, t) == 0))
                        clean = false;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (!(m(t, j) == 0)) {
                    const T q = m(t, j) / m(t, t);
                    add_col(j, t, T(0) - q, t);
                    if (!(m(t, j) == 0))
                        clean = false;
                }
            if (!clean) {
                // a remainder smaller than the pivot survived; make it the pivot
                std::size_t bi = t, bj = t;
                T b = abs_value(m(t, t));
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (!(m(i, t) == 0) && abs_value(m(i, t)) < b) {
                        b = abs_value(m(i, t));
                        bi = i;
                        bj = t;
                    }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!(m(t, j) == 0) && abs_value(m(t, j)) < b) {
                        b = abs_value(m(t, j));
                        bi = t;
                        bj = j;
                    }
                m.swap_rows(t, bi);
                tx.swap_rows(t, bi);
                m.swap_cols(t, bj);
                tx.swap_cols(t, bj);
                continue;
            }
            // divisibility of the trailing block by the pivot
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!(m(i, j) % m(t, t) == 0)) {
                        bad = i;
                        break;
                    }
            if (bad == rows)
                break;
            add_row(t, bad, T(1), t);
        }
        if (m(t, t) < T(0)) {
            for (std::size_t j = t; j < cols; ++j)
                m(t, j) = T(0) - m(t, j);
            tx.negate_row(t);
        }
    }
}

}  // namespace detail

/// Nonzero diagonal entries d_1 | d_2 | ... of the Smith normal form, all
/// positive. Destroys `m`.
template <class T>
std::vector<T> smith_invariant_factors(DenseMatrix<T>& m)
{
    detail::NoTransform tx;
    detail::smith_reduce(m, tx);
    std::vector<T> d;
    for (std::size_t t = 0; t < m.rows() && t < m.cols(); ++t) {
        if (m(t, t) == 0)
            break;
        d.push_back(m(t, t));
    }
    return d;
}

struct SmithDecomposition
{
    DenseMatrix<BigInt> diagonal;
    /// Unimodular; left * A * right == diagonal.
    DenseMatrix<BigInt> left;
    DenseMatrix<BigInt> right;
};

inline SmithDecomposition smith_decomposition(const DenseMatrix<BigInt>& a)
{
    SmithDecomposition s{a, DenseMatrix<BigInt>::identity(a.rows()), DenseMatrix<BigInt>::identity(a.cols())};
    detail::TrackTransform<BigInt> tx{s.left, s.right};
    detail::smith_reduce(s.diagonal, tx);
    return s;
}

}  // namespace flagprod
