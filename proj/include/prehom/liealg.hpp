#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "prehom/matrix.hpp"

namespace prehom {

/// Expresses ambient matrices in a fixed list of basis matrices. The pivot
/// rows and the inverse of the pivot submatrix are computed once, so each
/// coordinate extraction is a small multiply plus a full verification that
/// the input really lies in the span.
class CoordMap {
  public:
    explicit CoordMap(const std::vector<Matrix>& basis) : basis_(basis) {
        if (basis.empty()) return;
        ambr_ = basis[0].rows();
        ambc_ = basis[0].cols();
        std::size_t m = basis.size();
        std::size_t a2 = ambr_ * ambc_;
        Matrix stacked(m, a2);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t r = 0; r < ambr_; ++r)
                for (std::size_t c = 0; c < ambc_; ++c)
                    stacked(i, r * ambc_ + c) = basis[i](r, c);
        auto ech = detail::bareiss_echelon(detail::to_integer_rows(stacked), a2);
        if (ech.pivot_cols.size() != m)
            throw std::invalid_argument("CoordMap: basis matrices are dependent");
        rows_ = ech.pivot_cols;
        Matrix square(m, m);
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t i = 0; i < m; ++i) square(r, i) = stacked(i, rows_[r]);
        inv_ = inverse(square);
    }

    /// Coordinates of x in the basis. Throws when x is outside the span.
    Vec coords(const Matrix& x) const {
        std::size_t m = basis_.size();
        Vec rhs(m);
        for (std::size_t r = 0; r < m; ++r)
            rhs[r] = x(rows_[r] / ambc_, rows_[r] % ambc_);
        Vec c = inv_ * rhs;
        Matrix back(ambr_, ambc_);
        for (std::size_t i = 0; i < m; ++i)
            if (!is_zero(c[i])) back = back + basis_[i] * c[i];
        if (!(back == x)) throw std::invalid_argument("CoordMap: matrix outside basis span");
        return c;
    }

  private:
    std::vector<Matrix> basis_;
    std::size_t ambr_ = 0, ambc_ = 0;
    std::vector<std::size_t> rows_;
    Matrix inv_;
};

/// Lie algebra given by structure constants: [e_i, e_j] = sum_k c[i][j][k] e_k.
/// Classical families additionally carry their defining matrix basis.
class LieAlgebra {
  public:
    LieAlgebra() = default;
    LieAlgebra(std::size_t n, std::string name)
        : dim_(n), name_(std::move(name)), c_(n * n * n) {}

    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    Rational& c(std::size_t i, std::size_t j, std::size_t k) {
        return c_[(i * dim_ + j) * dim_ + k];
    }
    const Rational& c(std::size_t i, std::size_t j, std::size_t k) const {
        return c_[(i * dim_ + j) * dim_ + k];
    }

    /// Coordinates of [e_i, e_j].
    Vec bracket_basis(std::size_t i, std::size_t j) const {
        Vec r(dim_);
        for (std::size_t k = 0; k < dim_; ++k) r[k] = c(i, j, k);
        return r;
    }

    Vec bracket(const Vec& x, const Vec& y) const {
        Vec r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (is_zero(x[i])) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (is_zero(y[j])) continue;
                Rational f = x[i] * y[j];
                for (std::size_t k = 0; k < dim_; ++k)
                    if (!is_zero(c(i, j, k))) r[k] += f * c(i, j, k);
            }
        }
        return r;
    }

    const std::vector<Matrix>& matrix_basis() const { return basis_; }
    void set_matrix_basis(std::vector<Matrix> b) { basis_ = std::move(b); }

  private:
    std::size_t dim_ = 0;
    std::string name_;
    std::vector<Rational> c_;
    std::vector<Matrix> basis_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

struct BracketViolation {
    enum Kind { Antisymmetry, Jacobi } kind;
    std::size_t i, j, k;
};

struct ValidationResult {
    bool ok = true;
    std::vector<BracketViolation> violations;
};

/// Checks antisymmetry on all pairs and the Jacobi identity on all ordered
/// triples i < j < k; the remaining orderings follow from antisymmetry.
inline ValidationResult validate(const LieAlgebra& g) {
    ValidationResult res;
    std::size_t n = g.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (g.c(i, j, k) + g.c(j, i, k) != 0) {
                    res.ok = false;
                    res.violations.push_back({BracketViolation::Antisymmetry, i, j, k});
                }

    // sparse view of each bracket column for the triple loop
    std::vector<std::vector<std::pair<std::size_t, Rational>>> nz(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (!is_zero(g.c(i, j, k))) nz[i * n + j].emplace_back(k, g.c(i, j, k));

    Vec acc(n);
    auto add_nested = [&](std::size_t a, std::size_t b, std::size_t c) {
        // acc += [[e_a, e_b], e_c]
        for (const auto& [l, v] : nz[a * n + b])
            for (const auto& [m, w] : nz[l * n + c]) acc[m] += v * w;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k) {
                for (auto& x : acc) x = 0;
                add_nested(i, j, k);
                add_nested(j, k, i);
                add_nested(k, i, j);
                if (!is_zero_vec(acc)) {
                    res.ok = false;
                    res.violations.push_back({BracketViolation::Jacobi, i, j, k});
                }
            }
    return res;
}

enum class Family { gl, sl, so, sp };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::gl: return "gl";
        case Family::sl: return "sl";
        case Family::so: return "so";
        case Family::sp: return "sp";
    }
    return "?";
}

namespace detail {

inline Matrix unit_matrix(std::size_t n, std::size_t p, std::size_t q) {
    Matrix m(n, n);
    m(p, q) = 1;
    return m;
}

/// Basis matrices of the classical families, in the orders used everywhere
/// in this library:
///   gl(n): E_pq row major.
///   sl(n): E_pq with p != q row major, then H_i = E_ii - E_{i+1,i+1}.
///   so(n): E_pq - E_qp for p < q, lexicographic.
///   sp(n): acting on V(2n) with form J = [[0, I], [-I, 0]]; first the n^2
///          matrices E_pq - E_{n+q,n+p} row major, then E_{p,n+q} + E_{q,n+p}
///          for p <= q, then E_{n+p,q} + E_{n+q,p} for p <= q.
inline std::vector<Matrix> classical_basis(Family f, std::size_t n) {
    std::vector<Matrix> b;
    switch (f) {
        case Family::gl:
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q) b.push_back(unit_matrix(n, p, q));
            break;
        case Family::sl:
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q)
                    if (p != q) b.push_back(unit_matrix(n, p, q));
            for (std::size_t i = 0; i + 1 < n; ++i)
                b.push_back(unit_matrix(n, i, i) - unit_matrix(n, i + 1, i + 1));
            break;
        case Family::so:
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = p + 1; q < n; ++q)
                    b.push_back(unit_matrix(n, p, q) - unit_matrix(n, q, p));
            break;
        case Family::sp: {
            std::size_t m = 2 * n;
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = 0; q < n; ++q)
                    b.push_back(unit_matrix(m, p, q) - unit_matrix(m, n + q, n + p));
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = p; q < n; ++q)
                    b.push_back(unit_matrix(m, p, n + q) + unit_matrix(m, q, n + p));
            for (std::size_t p = 0; p < n; ++p)
                for (std::size_t q = p; q < n; ++q)
                    b.push_back(unit_matrix(m, n + p, q) + unit_matrix(m, n + q, p));
            break;
        }
    }
    return b;
}

}  // namespace detail

/// Structure constants computed from commutators of the defining matrix basis.
inline LieAlgebra construct_classical(Family f, std::size_t n) {
    if (n == 0) throw std::invalid_argument("construct_classical: rank must be positive");
    auto basis = detail::classical_basis(f, n);
    LieAlgebra g(basis.size(), family_name(f) + "(" + std::to_string(n) + ")");
    CoordMap cm(basis);
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Vec v = cm.coords(basis[i].commutator(basis[j]));
            for (std::size_t k = 0; k < basis.size(); ++k)
                if (!is_zero(v[k])) {
                    g.c(i, j, k) = v[k];
                    g.c(j, i, k) = -v[k];
                }
        }
    g.set_matrix_basis(std::move(basis));
    return g;
}

inline LieAlgebra abelian(std::size_t k, std::string name) {
    return LieAlgebra(k, std::move(name));
}

inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
    LieAlgebra g(a.dim() + b.dim(), a.name() + "+" + b.name());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < a.dim(); ++k) g.c(i, j, k) = a.c(i, j, k);
    std::size_t o = a.dim();
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            for (std::size_t k = 0; k < b.dim(); ++k) g.c(o + i, o + j, o + k) = b.c(i, j, k);
    return g;
}

/// dim [g, g], the rank of the matrix whose columns are all basis brackets.
inline std::size_t derived_subalgebra_dim(const LieAlgebra& g) {
    std::size_t n = g.dim();
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) cols.push_back(g.bracket_basis(i, j));
    if (cols.empty()) return 0;
    return rank(from_columns(cols, n));
}

/// Distinguishes subalgebra closure questions: expresses brackets of the given
/// spanning vectors in that same span. Throws when the span is not closed.
inline LieAlgebra subalgebra(const LieAlgebra& g, const std::vector<Vec>& span,
                             const std::string& name) {
    std::size_t m = span.size();
    std::vector<Matrix> as_cols;
    for (const auto& v : span) {
        Matrix c(g.dim(), 1);
        for (std::size_t i = 0; i < g.dim(); ++i) c(i, 0) = v[i];
        as_cols.push_back(std::move(c));
    }
    CoordMap cm(as_cols);
    LieAlgebra h(m, name);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            Vec br = g.bracket(span[i], span[j]);
            Matrix col(g.dim(), 1);
            for (std::size_t t = 0; t < g.dim(); ++t) col(t, 0) = br[t];
            Vec v = cm.coords(col);
            for (std::size_t k = 0; k < m; ++k)
                if (!is_zero(v[k])) {
                    h.c(i, j, k) = v[k];
                    h.c(j, i, k) = -v[k];
                }
        }
    return h;
}

inline nlohmann::ordered_json to_json(const LieAlgebra& g) {
    nlohmann::ordered_json j;
    j["name"] = g.name();
    j["dim"] = g.dim();
    auto entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t jj = i + 1; jj < g.dim(); ++jj)
            for (std::size_t k = 0; k < g.dim(); ++k)
                if (!is_zero(g.c(i, jj, k)))
                    entries.push_back({i, jj, k, rat_to_string(g.c(i, jj, k))});
    j["bracket"] = std::move(entries);
    return j;
}

/// Reads the canonical form written by to_json. Entries with i > j are also
/// accepted; the antisymmetric partner of every entry is filled in, and a
/// contradicting duplicate raises.
inline LieAlgebra algebra_from_json(const nlohmann::json& j) {
    LieAlgebra g(j.at("dim").get<std::size_t>(), j.at("name").get<std::string>());
    for (const auto& e : j.at("bracket")) {
        std::size_t i = e.at(0).get<std::size_t>();
        std::size_t jj = e.at(1).get<std::size_t>();
        std::size_t k = e.at(2).get<std::size_t>();
        Rational v = rat_from_string(e.at(3).get<std::string>());
        if (i >= g.dim() || jj >= g.dim() || k >= g.dim())
            throw std::invalid_argument("algebra_from_json: index out of range");
        if (i == jj && !is_zero(v))
            throw std::invalid_argument("algebra_from_json: nonzero [e_i, e_i] entry");
        if (!is_zero(g.c(i, jj, k)) && g.c(i, jj, k) != v)
            throw std::invalid_argument("algebra_from_json: contradictory duplicate entry");
        g.c(i, jj, k) = v;
        g.c(jj, i, k) = -v;
    }
    return g;
}

}  // namespace prehom
