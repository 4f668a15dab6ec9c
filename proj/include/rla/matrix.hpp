#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rla/rational.hpp"

namespace rla {

/// Dense matrix over an exact field scalar S (Rational or RegulatedScalar).
template <class S>
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols, S fill = S(0))
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = S(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    S& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const S& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        Matrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a(i, k) == S(0)) continue;
                for (int j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
        return c;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix c = a;
        for (size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::vector<S> apply(const std::vector<S>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("vector length mismatch");
        std::vector<S> out(rows_, S(0));
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (!((*this)(i, j) == S(0))) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    /// Solves A x = b by exact Gaussian elimination; nullopt when singular
    /// or inconsistent.
    static std::optional<std::vector<S>> solve(Matrix a, std::vector<S> b) {
        auto cols = solve_columns(std::move(a), {std::move(b)});
        if (!cols) return std::nullopt;
        return (*cols)[0];
    }

    /// Solves A X = B column by column (B given as list of columns).
    static std::optional<std::vector<std::vector<S>>> solve_columns(Matrix a,
                                                                    std::vector<std::vector<S>> bs) {
        int n = a.rows_;
        if (a.cols_ != n) throw std::invalid_argument("square system expected");
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (!(a(r, col) == S(0))) { piv = r; break; }
            if (piv < 0) return std::nullopt;
            if (piv != col) {
                for (int j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
                for (auto& b : bs) std::swap(b[col], b[piv]);
            }
            S inv = S(1) / a(col, col);
            for (int j = col; j < n; ++j) a(col, j) = a(col, j) * inv;
            for (auto& b : bs) b[col] = b[col] * inv;
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                S f = a(r, col);
                if (f == S(0)) continue;
                for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
                for (auto& b : bs) b[r] -= f * b[col];
            }
        }
        return bs;
    }

    std::optional<Matrix> inverse() const {
        int n = rows_;
        std::vector<std::vector<S>> cols;
        for (int j = 0; j < n; ++j) {
            std::vector<S> e(n, S(0));
            e[j] = S(1);
            cols.push_back(std::move(e));
        }
        auto sol = solve_columns(*this, std::move(cols));
        if (!sol) return std::nullopt;
        Matrix inv(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) inv(i, j) = (*sol)[j][i];
        return inv;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<S> data_;
};

/// Solves a rectangular system A x = b over any exact field scalar,
/// requiring full column rank (unique solution); nullopt when rank is
/// deficient or the system is inconsistent.
template <class S>
std::optional<std::vector<S>> solve_unique(Matrix<S> a, std::vector<S> b) {
    int rows = a.rows(), cols = a.cols();
    int r = 0;
    std::vector<int> pivot_row_of_col(cols, -1);
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!(a(i, c) == S(0))) { piv = i; break; }
        if (piv < 0) return std::nullopt;  // rank deficient
        if (piv != r) {
            for (int j = 0; j < cols; ++j) std::swap(a(r, j), a(piv, j));
            std::swap(b[r], b[piv]);
        }
        S inv = S(1) / a(r, c);
        for (int j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
        b[r] = b[r] * inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            S f = a(i, c);
            if (f == S(0)) continue;
            for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
            b[i] -= f * b[r];
        }
        pivot_row_of_col[c] = r;
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (!(b[i] == S(0))) return std::nullopt;  // inconsistent
    std::vector<S> x(cols, S(0));
    for (int c = 0; c < cols; ++c) x[c] = b[pivot_row_of_col[c]];
    return x;
}

/// Fraction-free (Bareiss) elimination over the integers after clearing
/// row denominators; returns the exact rank.
inline int rank_rational(const Matrix<Rational>& m) {
    int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (int i = 0; i < rows; ++i) {
        mpz_class lcm = 1;
        for (int j = 0; j < cols; ++j) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den().get_mpz_t());
        for (int j = 0; j < cols; ++j) {
            Rational v = m(i, j) * Rational(lcm);
            a[i][j] = v.get_num();
        }
    }
    int rank = 0;
    mpz_class prev = 1;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r][col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int j = col + 1; j < cols; ++j) {
                mpz_class t = a[rank][col] * a[r][j] - a[r][col] * a[rank][j];
                mpz_divexact(a[r][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

/// Row-reduces [A | b] and reports solvability plus one particular solution
/// (lexicographically-first pivot solution; free variables set to zero).
/// Works for rectangular systems.
struct LinearSolveResult {
    bool solvable = false;
    std::vector<Rational> particular;  // valid when solvable
    int rank = 0;
};

inline LinearSolveResult solve_rectangular(Matrix<Rational> a, std::vector<Rational> b) {
    int rows = a.rows(), cols = a.cols();
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) {
            for (int j = 0; j < cols; ++j) std::swap(a(r, j), a(piv, j));
            std::swap(b[r], b[piv]);
        }
        Rational inv = 1 / a(r, c);
        for (int j = c; j < cols; ++j) a(r, j) *= inv;
        b[r] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Rational f = a(i, c);
            if (f == 0) continue;
            for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    LinearSolveResult res;
    res.rank = r;
    for (int i = r; i < rows; ++i)
        if (b[i] != 0) return res;  // inconsistent
    res.solvable = true;
    res.particular.assign(cols, 0);
    for (int i = 0; i < r; ++i) res.particular[pivot_col[i]] = b[i];
    return res;
}

/// Exact nullspace basis (columns of the kernel) of a rational matrix.
inline std::vector<std::vector<Rational>> nullspace_rational(Matrix<Rational> a) {
    int rows = a.rows(), cols = a.cols();
    std::vector<int> pivot_of_col(cols, -1);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(a(r, j), a(piv, j));
        Rational inv = 1 / a(r, c);
        for (int j = c; j < cols; ++j) a(r, j) *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Rational f = a(i, c);
            if (f == 0) continue;
            for (int j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivot_of_col[c] = r;
        ++r;
    }
    std::vector<std::vector<Rational>> basis;
    for (int c = 0; c < cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<Rational> v(cols, 0);
        v[c] = 1;
        for (int j = 0; j < cols; ++j)
            if (pivot_of_col[j] >= 0) v[j] = -a(pivot_of_col[j], c);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace rla
