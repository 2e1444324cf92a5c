#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prehom/liealg.hpp"

namespace prehom {

/// Finite-dimensional module over a structure-constant Lie algebra. action[i]
/// is the matrix of e_i acting on coordinate columns of the module.
struct Representation {
    AlgebraPtr algebra;
    std::size_t space_dim = 0;
    std::vector<Matrix> action;
    std::string label;

    const Matrix& act(std::size_t i) const { return action[i]; }

    /// Action of a general algebra element given by coordinates.
    Matrix act_elem(const Vec& x) const {
        Matrix m(space_dim, space_dim);
        for (std::size_t i = 0; i < action.size(); ++i)
            if (!is_zero(x[i])) m = m + action[i] * x[i];
        return m;
    }
};

struct RepViolation {
    std::size_t i, j;
};

struct RepValidation {
    bool ok = true;
    std::vector<RepViolation> violations;
};

/// Checks d(rho)([e_i,e_j]) = [d(rho)(e_i), d(rho)(e_j)] on all basis pairs.
inline RepValidation validate_rep(const Representation& r) {
    RepValidation res;
    const LieAlgebra& g = *r.algebra;
    if (r.action.size() != g.dim())
        throw std::invalid_argument("validate_rep: action count differs from algebra dim");
    for (const auto& m : r.action)
        if (m.rows() != r.space_dim || m.cols() != r.space_dim)
            throw std::invalid_argument("validate_rep: action matrix shape mismatch");
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            Matrix lhs = r.act_elem(g.bracket_basis(i, j));
            Matrix rhs = r.action[i].commutator(r.action[j]);
            if (!(lhs == rhs)) {
                res.ok = false;
                res.violations.push_back({i, j});
            }
        }
    return res;
}

/// Defining representation of a classical family, read off the stored matrix
/// basis.
inline Representation standard(AlgebraPtr g) {
    if (g->matrix_basis().empty())
        throw std::invalid_argument("standard: algebra carries no matrix basis");
    Representation r;
    r.algebra = g;
    r.space_dim = g->matrix_basis()[0].rows();
    r.action = g->matrix_basis();
    r.label = "std(" + g->name() + ")";
    return r;
}

/// Adjoint module, ad(e_i) read off the structure tensor.
inline Representation adjoint(AlgebraPtr g) {
    Representation r;
    r.algebra = g;
    r.space_dim = g->dim();
    for (std::size_t i = 0; i < g->dim(); ++i) {
        Matrix m(g->dim(), g->dim());
        for (std::size_t j = 0; j < g->dim(); ++j)
            for (std::size_t k = 0; k < g->dim(); ++k) m(k, j) = g->c(i, j, k);
        r.action.push_back(std::move(m));
    }
    r.label = "ad(" + g->name() + ")";
    return r;
}

inline Representation trivial(AlgebraPtr g, std::size_t d) {
    Representation r;
    r.algebra = std::move(g);
    r.space_dim = d;
    r.action.assign(r.algebra->dim(), Matrix(d, d));
    r.label = "triv(" + std::to_string(d) + ")";
    return r;
}

inline Representation dual(const Representation& r) {
    Representation d;
    d.algebra = r.algebra;
    d.space_dim = r.space_dim;
    for (const auto& m : r.action) d.action.push_back(-m.transpose());
    d.label = r.label + "*";
    return d;
}

/// Leibniz action on the tensor product of two modules over the same algebra.
/// Index (a, b) of the product basis maps to a * dim(s) + b.
inline Representation tensor(const Representation& r, const Representation& s) {
    if (r.algebra->dim() != s.algebra->dim())
        throw std::invalid_argument("tensor: modules over different algebras");
    Representation t;
    t.algebra = r.algebra;
    t.space_dim = r.space_dim * s.space_dim;
    Matrix ir = Matrix::identity(r.space_dim);
    Matrix is = Matrix::identity(s.space_dim);
    for (std::size_t i = 0; i < r.action.size(); ++i)
        t.action.push_back(kron(r.action[i], is) + kron(ir, s.action[i]));
    t.label = r.label + "(x)" + s.label;
    return t;
}

/// Pullback of a factor module along the projection of a direct-sum algebra.
/// offset is the index of the factor's first basis vector inside sum. The
/// factor block of sum must carry the very structure constants of r's
/// algebra; that is checked entry by entry.
inline Representation inflate(AlgebraPtr sum, const Representation& r, std::size_t offset) {
    std::size_t m = r.algebra->dim();
    if (offset + m > sum->dim()) throw std::invalid_argument("inflate: offset out of range");
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t k = 0; k < m; ++k)
                if (sum->c(offset + i, offset + j, offset + k) != r.algebra->c(i, j, k))
                    throw std::invalid_argument("inflate: factor block structure mismatch");
            for (std::size_t k = 0; k < sum->dim(); ++k)
                if ((k < offset || k >= offset + m) &&
                    !is_zero(sum->c(offset + i, offset + j, k)))
                    throw std::invalid_argument("inflate: factor block leaks outside itself");
        }
    Representation t;
    t.algebra = std::move(sum);
    t.space_dim = r.space_dim;
    t.action.assign(t.algebra->dim(), Matrix(r.space_dim, r.space_dim));
    for (std::size_t i = 0; i < m; ++i) t.action[offset + i] = r.action[i];
    t.label = r.label;
    return t;
}

inline Representation direct_sum_rep(const Representation& r, const Representation& s) {
    if (r.algebra->dim() != s.algebra->dim())
        throw std::invalid_argument("direct_sum_rep: modules over different algebras");
    Representation t;
    t.algebra = r.algebra;
    t.space_dim = r.space_dim + s.space_dim;
    for (std::size_t i = 0; i < r.action.size(); ++i) {
        Matrix m(t.space_dim, t.space_dim);
        for (std::size_t a = 0; a < r.space_dim; ++a)
            for (std::size_t b = 0; b < r.space_dim; ++b) m(a, b) = r.action[i](a, b);
        for (std::size_t a = 0; a < s.space_dim; ++a)
            for (std::size_t b = 0; b < s.space_dim; ++b)
                m(r.space_dim + a, r.space_dim + b) = s.action[i](a, b);
        t.action.push_back(std::move(m));
    }
    t.label = r.label + "+" + s.label;
    return t;
}

namespace detail {

/// Monomial bases of the symmetric and alternating powers, ordered
/// lexicographically on the sorted index tuples.
inline std::vector<std::array<std::size_t, 2>> sym2_basis(std::size_t d) {
    std::vector<std::array<std::size_t, 2>> v;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a; b < d; ++b) v.push_back({a, b});
    return v;
}

inline std::vector<std::array<std::size_t, 2>> alt2_basis(std::size_t d) {
    std::vector<std::array<std::size_t, 2>> v;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) v.push_back({a, b});
    return v;
}

template <std::size_t N>
std::map<std::array<std::size_t, N>, std::size_t> index_of(
    const std::vector<std::array<std::size_t, N>>& basis) {
    std::map<std::array<std::size_t, N>, std::size_t> m;
    for (std::size_t i = 0; i < basis.size(); ++i) m[basis[i]] = i;
    return m;
}

/// Sorts a tuple, counting transpositions; returns nullopt on a repeat.
template <std::size_t N>
std::optional<std::pair<std::array<std::size_t, N>, int>> sort_signed(
    std::array<std::size_t, N> t) {
    int sign = 1;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j + 1 < N - i; ++j)
            if (t[j] > t[j + 1]) {
                std::swap(t[j], t[j + 1]);
                sign = -sign;
            }
    for (std::size_t i = 0; i + 1 < N; ++i)
        if (t[i] == t[i + 1]) return std::nullopt;
    return std::make_pair(t, sign);
}

}  // namespace detail

/// Symmetric square on the monomial basis e_a e_b, a <= b.
inline Representation sym_square(const Representation& r) {
    std::size_t d = r.space_dim;
    auto basis = detail::sym2_basis(d);
    auto idx = detail::index_of<2>(basis);
    Representation t;
    t.algebra = r.algebra;
    t.space_dim = basis.size();
    for (const auto& M : r.action) {
        Matrix A(basis.size(), basis.size());
        for (std::size_t col = 0; col < basis.size(); ++col) {
            auto [a, b] = std::pair(basis[col][0], basis[col][1]);
            for (std::size_t c = 0; c < d; ++c) {
                if (!is_zero(M(c, a))) A(idx[{std::min(c, b), std::max(c, b)}], col) += M(c, a);
                if (!is_zero(M(c, b))) A(idx[{std::min(a, c), std::max(a, c)}], col) += M(c, b);
            }
        }
        t.action.push_back(std::move(A));
    }
    t.label = "S2(" + r.label + ")";
    return t;
}

/// Alternating square on the basis e_a ^ e_b, a < b.
inline Representation alt_square(const Representation& r) {
    std::size_t d = r.space_dim;
    auto basis = detail::alt2_basis(d);
    auto idx = detail::index_of<2>(basis);
    Representation t;
    t.algebra = r.algebra;
    t.space_dim = basis.size();
    for (const auto& M : r.action) {
        Matrix A(basis.size(), basis.size());
        for (std::size_t col = 0; col < basis.size(); ++col) {
            auto [a, b] = std::pair(basis[col][0], basis[col][1]);
            for (std::size_t c = 0; c < d; ++c) {
                if (!is_zero(M(c, a)))
                    if (auto s = detail::sort_signed<2>({c, b}))
                        A(idx[s->first], col) += Rational(s->second) * M(c, a);
                if (!is_zero(M(c, b)))
                    if (auto s = detail::sort_signed<2>({a, c}))
                        A(idx[s->first], col) += Rational(s->second) * M(c, b);
            }
        }
        t.action.push_back(std::move(A));
    }
    t.label = "L2(" + r.label + ")";
    return t;
}

namespace detail {

template <bool Sym>
Representation cube_power(const Representation& r, const std::string& tag) {
    std::size_t d = r.space_dim;
    std::vector<std::array<std::size_t, 3>> basis;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = Sym ? a : a + 1; b < d; ++b)
            for (std::size_t c = Sym ? b : b + 1; c < d; ++c) basis.push_back({a, b, c});
    auto idx = index_of<3>(basis);
    Representation t;
    t.algebra = r.algebra;
    t.space_dim = basis.size();
    for (const auto& M : r.action) {
        Matrix A(basis.size(), basis.size());
        for (std::size_t col = 0; col < basis.size(); ++col) {
            auto tup = basis[col];
            for (std::size_t slot = 0; slot < 3; ++slot)
                for (std::size_t c = 0; c < d; ++c) {
                    if (is_zero(M(c, tup[slot]))) continue;
                    auto moved = tup;
                    moved[slot] = c;
                    if constexpr (Sym) {
                        std::sort(moved.begin(), moved.end());
                        A(idx[moved], col) += M(c, tup[slot]);
                    } else {
                        if (auto s = sort_signed<3>(moved))
                            A(idx[s->first], col) += Rational(s->second) * M(c, tup[slot]);
                    }
                }
        }
        t.action.push_back(std::move(A));
    }
    t.label = tag + "(" + r.label + ")";
    return t;
}

}  // namespace detail

inline Representation sym_cube(const Representation& r) {
    return detail::cube_power<true>(r, "S3");
}

/// Third alternating power; used for instantiating L3 labels.
inline Representation alt_cube(const Representation& r) {
    return detail::cube_power<false>(r, "L3");
}

/// Extends a module by k commuting one-parameter twists. The result lives
/// over algebra + gl(1)^k, the twist matrices acting for the new abelian
/// basis vectors. Twists must commute with the whole image and with each
/// other; the offending pair is reported otherwise.
inline Representation with_center(const Representation& r, const std::vector<Matrix>& twists) {
    for (std::size_t t = 0; t < twists.size(); ++t) {
        if (twists[t].rows() != r.space_dim || twists[t].cols() != r.space_dim)
            throw std::invalid_argument("with_center: twist " + std::to_string(t) +
                                        " has wrong shape");
        for (std::size_t i = 0; i < r.action.size(); ++i)
            if (!twists[t].commutator(r.action[i]).is_zero_matrix())
                throw std::invalid_argument("with_center: twist " + std::to_string(t) +
                                            " fails to commute with action of e_" +
                                            std::to_string(i));
        for (std::size_t u = t + 1; u < twists.size(); ++u)
            if (!twists[t].commutator(twists[u]).is_zero_matrix())
                throw std::invalid_argument("with_center: twists " + std::to_string(t) + " and " +
                                            std::to_string(u) + " fail to commute");
    }
    std::size_t k = twists.size();
    auto ext = std::make_shared<LieAlgebra>(
        direct_sum(*r.algebra, abelian(k, "gl(1)^" + std::to_string(k))));
    Representation t;
    t.algebra = ext;
    t.space_dim = r.space_dim;
    t.action = r.action;
    for (const auto& m : twists) t.action.push_back(m);
    t.label = r.label + "@c" + std::to_string(k);
    return t;
}

/// Quotient module V / span(gens). Throws when the span is not invariant,
/// naming the generator and the algebra basis vector that witness it.
inline Representation quotient_rep(const Representation& r, const std::vector<Vec>& gens) {
    std::size_t d = r.space_dim;
    Matrix G = from_columns(gens, d);
    auto ech = detail::bareiss_echelon(detail::to_integer_rows(G), G.cols());
    std::vector<Vec> wbasis;
    for (auto c : ech.pivot_cols) wbasis.push_back(gens[c]);
    std::size_t s = wbasis.size();

    // coordinate positions not hit by pivots of the transposed span complete
    // the subspace basis to a basis of V
    Matrix Wt = from_columns(wbasis, d).transpose();
    auto echt = detail::bareiss_echelon(detail::to_integer_rows(Wt), d);
    std::vector<bool> is_pivot(d, false);
    for (auto c : echt.pivot_cols) is_pivot[c] = true;
    std::vector<std::size_t> comp;
    for (std::size_t i = 0; i < d; ++i)
        if (!is_pivot[i]) comp.push_back(i);

    Matrix F(d, d);
    for (std::size_t j = 0; j < s; ++j)
        for (std::size_t i = 0; i < d; ++i) F(i, j) = wbasis[j][i];
    for (std::size_t j = 0; j < comp.size(); ++j) F(comp[j], s + j) = 1;
    Matrix Finv = inverse(F);

    for (std::size_t i = 0; i < r.action.size(); ++i)
        for (std::size_t w = 0; w < s; ++w) {
            Vec img = Finv * (r.action[i] * wbasis[w]);
            for (std::size_t q = s; q < d; ++q)
                if (!is_zero(img[q]))
                    throw std::invalid_argument(
                        "quotient_rep: submodule not invariant, action of e_" +
                        std::to_string(i) + " moves generator " + std::to_string(w) +
                        " outside the span");
        }

    Representation t;
    t.algebra = r.algebra;
    t.space_dim = d - s;
    for (std::size_t i = 0; i < r.action.size(); ++i) {
        Matrix A(t.space_dim, t.space_dim);
        for (std::size_t j = 0; j < comp.size(); ++j) {
            Vec col(d);
            col[comp[j]] = 1;
            Vec img = Finv * (r.action[i] * col);
            for (std::size_t q = 0; q < t.space_dim; ++q) A(q, j) = img[s + q];
        }
        t.action.push_back(std::move(A));
    }
    t.label = r.label + "/sub" + std::to_string(s);
    return t;
}

/// Restriction of a module along the inclusion of a subalgebra spanned by the
/// given coordinate vectors. The span is checked for bracket closure.
inline std::pair<AlgebraPtr, Representation> restrict_to_span(const Representation& r,
                                                              const std::vector<Vec>& span,
                                                              const std::string& name) {
    auto h = std::make_shared<LieAlgebra>(subalgebra(*r.algebra, span, name));
    Representation t;
    t.algebra = h;
    t.space_dim = r.space_dim;
    for (const auto& v : span) t.action.push_back(r.act_elem(v));
    t.label = r.label + "|" + name;
    return {h, t};
}

}  // namespace prehom
