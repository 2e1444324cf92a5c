#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "prehom/rational.hpp"

namespace prehom {

using Vec = std::vector<Rational>;

/// Dense row-major matrix over Rational.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }

    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = -a_[k];
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& x = (*this)(i, k);
                if (is_zero(x)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) {
                    if (is_zero(o(k, j))) continue;
                    r(i, j) += x * o(k, j);
                }
            }
        return r;
    }

    Matrix operator*(const Rational& s) const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] * s;
        return r;
    }

    Vec operator*(const Vec& v) const {
        if (cols_ != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
        Vec r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!is_zero((*this)(i, j)) && !is_zero(v[j])) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    bool is_zero_matrix() const {
        for (const auto& x : a_)
            if (!is_zero(x)) return false;
        return true;
    }

    /// Commutator AB - BA.
    Matrix commutator(const Matrix& o) const { return (*this) * o - o * (*this); }

  private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<Rational> a_;
};

inline Matrix operator*(const Rational& s, const Matrix& m) { return m * s; }

/// Kronecker product, index (a,b) of the product maps to a*cols(B)+b blocks.
inline Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix r(A.rows() * B.rows(), A.cols() * B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) {
            if (is_zero(A(i, j))) continue;
            for (std::size_t p = 0; p < B.rows(); ++p)
                for (std::size_t q = 0; q < B.cols(); ++q)
                    if (!is_zero(B(p, q)))
                        r(i * B.rows() + p, j * B.cols() + q) = A(i, j) * B(p, q);
        }
    return r;
}

namespace detail {

/// Row echelon form of an integer matrix by fraction-free single-step Bareiss.
/// Divisions are exact; entries stay at minor size. Returns the echelon matrix
/// and the list of pivot columns. Pivot choice is the first nonzero entry in
/// the column, which keeps the whole pipeline deterministic.
struct Echelon {
    std::vector<std::vector<Int>> m;
    std::vector<std::size_t> pivot_cols;
};

inline Echelon bareiss_echelon(std::vector<std::vector<Int>> m, std::size_t cols) {
    Echelon e;
    std::size_t rows = m.size();
    Int prev = 1;
    std::size_t pr = 0;
    for (std::size_t col = 0; col < cols && pr < rows; ++col) {
        std::size_t sel = pr;
        while (sel < rows && m[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[pr]);
        for (std::size_t i = pr + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                Int t = m[pr][col] * m[i][j] - m[i][col] * m[pr][j];
                m[i][j] = t / prev;
            }
            m[i][col] = 0;
        }
        prev = m[pr][col];
        e.pivot_cols.push_back(col);
        ++pr;
    }
    e.m = std::move(m);
    return e;
}

/// Clears denominators row by row and divides out the content, so the echelon
/// step runs on small integers. Row scaling by nonzero rationals changes
/// neither the rank nor the solution set of Ax = b when b is scaled along.
inline std::vector<std::vector<Int>> to_integer_rows(const Matrix& a,
                                                     const Vec* rhs = nullptr) {
    std::size_t extra = rhs ? 1 : 0;
    std::vector<std::vector<Int>> rows(a.rows(), std::vector<Int>(a.cols() + extra));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < a.cols(); ++j) l = lcm(l, den(a(i, j)));
        if (rhs) l = lcm(l, den((*rhs)[i]));
        Int g = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            rows[i][j] = num(a(i, j)) * (l / den(a(i, j)));
            g = gcd(g, rows[i][j]);
        }
        if (rhs) {
            rows[i][a.cols()] = num((*rhs)[i]) * (l / den((*rhs)[i]));
            g = gcd(g, rows[i][a.cols()]);
        }
        if (g > 1)
            for (auto& x : rows[i]) x /= g;
    }
    return rows;
}

}  // namespace detail

inline std::size_t rank(const Matrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    auto rows = detail::to_integer_rows(a);
    return detail::bareiss_echelon(std::move(rows), a.cols()).pivot_cols.size();
}

/// Basis of the right kernel {x : Ax = 0}. One vector per free column, built
/// by back substitution from the echelon form; every vector satisfies Ax = 0
/// exactly and the count is cols - rank.
inline std::vector<Vec> nullspace(const Matrix& a) {
    std::size_t n = a.cols();
    if (n == 0) return {};
    detail::Echelon e;
    if (a.rows() == 0)
        e = detail::Echelon{};
    else
        e = detail::bareiss_echelon(detail::to_integer_rows(a), n);
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        Vec x(n);
        x[f] = 1;
        for (std::size_t p = e.pivot_cols.size(); p-- > 0;) {
            std::size_t pc = e.pivot_cols[p];
            Rational s = 0;
            for (std::size_t j = pc + 1; j < n; ++j)
                if (e.m[p][j] != 0 && !is_zero(x[j])) s += Rational(e.m[p][j]) * x[j];
            x[pc] = -s / Rational(e.m[p][pc]);
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

/// One solution of Ax = b, or nullopt when the system is inconsistent. Free
/// variables are set to zero.
inline std::optional<Vec> solve(const Matrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    std::size_t n = a.cols();
    if (a.rows() == 0) return Vec(n);
    auto e = detail::bareiss_echelon(detail::to_integer_rows(a, &b), n + 1);
    if (!e.pivot_cols.empty() && e.pivot_cols.back() == n) return std::nullopt;
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivot_cols) is_pivot[c] = true;
    Vec x(n);
    for (std::size_t p = e.pivot_cols.size(); p-- > 0;) {
        std::size_t pc = e.pivot_cols[p];
        Rational s = Rational(e.m[p][n]);
        for (std::size_t j = pc + 1; j < n; ++j)
            if (e.m[p][j] != 0 && !is_zero(x[j])) s -= Rational(e.m[p][j]) * x[j];
        x[pc] = s / Rational(e.m[p][pc]);
    }
    return x;
}

/// Inverse of a square matrix by rational Gauss-Jordan. Throws when singular.
inline Matrix inverse(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: matrix not square");
    std::size_t n = a.rows();
    Matrix w = a;
    Matrix inv = Matrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && is_zero(w(sel, col))) ++sel;
        if (sel == n) throw std::invalid_argument("inverse: singular matrix");
        if (sel != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(sel, j), w(col, j));
                std::swap(inv(sel, j), inv(col, j));
            }
        Rational piv = w(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            w(col, j) /= piv;
            inv(col, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || is_zero(w(i, col))) continue;
            Rational f = w(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                w(i, j) -= f * w(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

inline bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

inline Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!is_zero(a[i]) && !is_zero(b[i])) s += a[i] * b[i];
    return s;
}

inline Vec unit_vec(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = 1;
    return v;
}

inline Vec vec_add(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec vec_sub(const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec vec_scale(const Rational& s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

/// Columns assembled into a matrix.
inline Matrix from_columns(const std::vector<Vec>& cols, std::size_t nrows) {
    Matrix m(nrows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != nrows) throw std::invalid_argument("from_columns: ragged input");
        for (std::size_t i = 0; i < nrows; ++i) m(i, j) = cols[j][i];
    }
    return m;
}

}  // namespace prehom
