#pragma once

#include "rat.hpp"

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ifib {

// Dense row-major rational matrix.
class RatMat {
public:
    RatMat() = default;
    RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols, Rat(0))
    {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("RatMat: empty shape");
    }
    RatMat(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
        : rows_(rows), cols_(cols), e_(std::move(entries))
    {
        if (e_.size() != rows * cols)
            throw std::invalid_argument("RatMat: entry count mismatch");
    }
    static RatMat identity(std::size_t n)
    {
        RatMat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }
    Rat& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    const std::vector<Rat>& entries() const { return e_; }

    std::vector<Rat> row(std::size_t i) const
    {
        return std::vector<Rat>(e_.begin() + i * cols_, e_.begin() + (i + 1) * cols_);
    }

    friend RatMat operator*(const RatMat& a, const RatMat& b)
    {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("RatMat: shape mismatch");
        RatMat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rat& x = a(i, k);
                if (is_zero(x))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r(i, j) += x * b(k, j);
            }
        return r;
    }
    friend RatMat operator*(const Rat& s, RatMat a)
    {
        for (auto& x : a.e_)
            x *= s;
        return a;
    }
    friend bool operator==(const RatMat& a, const RatMat& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RatMat& a, const RatMat& b) { return !(a == b); }

    bool integral() const
    {
        for (const auto& x : e_)
            if (!is_integer(x))
                return false;
        return true;
    }

    std::string str() const
    {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < cols_; ++j)
                os << (j ? ", " : "") << to_string((*this)(i, j));
            os << "]";
        }
        os << "]";
        return os.str();
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> e_;
};

namespace detail {

// Scales a square matrix to integer entries: returns (A*l, l).
inline std::pair<std::vector<std::vector<Integer>>, Integer> integer_scaled(const RatMat& m)
{
    Integer l = 1;
    for (const auto& x : m.entries())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat s = m(i, j) * l;
            a[i][j] = s.get_num();
        }
    return {a, l};
}

} // namespace detail

// Bareiss fraction-free determinant.
inline Rat det(const RatMat& m)
{
    if (!m.square())
        throw std::invalid_argument("det: non-square");
    auto [a, l] = detail::integer_scaled(m);
    std::size_t n = m.rows();
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    Rat d(a[n - 1][n - 1] * sign, ipow(l, static_cast<unsigned long>(n)));
    d.canonicalize();
    return d;
}

// Fraction-free Gauss-Jordan on [A*l | I]; the left block ends as d*I.
inline RatMat inverse(const RatMat& m)
{
    if (!m.square())
        throw std::invalid_argument("inverse: non-square");
    auto [a, l] = detail::integer_scaled(m);
    std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        a[i].resize(2 * n, 0);
        a[i][n + i] = 1;
    }
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && a[p][k] == 0)
                ++p;
            if (p == n)
                throw std::domain_error("inverse: singular matrix");
            std::swap(a[k], a[p]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k)
                continue;
            for (std::size_t j = 0; j < 2 * n; ++j) {
                if (j == k)
                    continue;
                Integer t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    // rows i < n-1 were last updated at step n-1, so every diagonal equals prev
    RatMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat x(a[i][n + j] * l, prev);
            x.canonicalize();
            inv(i, j) = x;
        }
    return inv;
}

inline RatMat mat_pow(const RatMat& m, long e)
{
    if (!m.square())
        throw std::invalid_argument("mat_pow: non-square");
    RatMat base = e < 0 ? inverse(m) : m;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    RatMat r = RatMat::identity(m.rows());
    while (k) {
        if (k & 1)
            r = r * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return r;
}

} // namespace ifib
