#pragma once

#include <cstddef>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "prehom/prehom.hpp"
#include "prehom/repr.hpp"

namespace prehom {

/// Left-symmetric algebra given by its multiplication tensor,
/// e_i * e_j = sum_k m[i][j][k] e_k.
class Lsa {
  public:
    Lsa() = default;
    Lsa(std::size_t n, std::string name)
        : dim_(n), name_(std::move(name)), m_(n * n * n) {}

    std::size_t dim() const { return dim_; }
    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    Rational& m(std::size_t i, std::size_t j, std::size_t k) {
        return m_[(i * dim_ + j) * dim_ + k];
    }
    const Rational& m(std::size_t i, std::size_t j, std::size_t k) const {
        return m_[(i * dim_ + j) * dim_ + k];
    }

    /// Coordinates of e_i * e_j.
    Vec product_basis(std::size_t i, std::size_t j) const {
        Vec r(dim_);
        for (std::size_t k = 0; k < dim_; ++k) r[k] = m(i, j, k);
        return r;
    }

    Vec product(const Vec& x, const Vec& y) const {
        Vec r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (is_zero(x[i])) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (is_zero(y[j])) continue;
                Rational f = x[i] * y[j];
                for (std::size_t k = 0; k < dim_; ++k)
                    if (!is_zero(m(i, j, k))) r[k] += f * m(i, j, k);
            }
        }
        return r;
    }

    /// Matrix of L_{e_i}, left multiplication acting on coordinate columns.
    Matrix left_matrix(std::size_t i) const {
        Matrix l(dim_, dim_);
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k) l(k, j) = m(i, j, k);
        return l;
    }

    Matrix left_matrix_of(const Vec& x) const {
        Matrix l(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            if (!is_zero(x[i])) l = l + left_matrix(i) * x[i];
        return l;
    }

  private:
    std::size_t dim_ = 0;
    std::string name_;
    std::vector<Rational> m_;
};

struct LsaViolation {
    std::size_t i, j, k;
};

struct LsaValidation {
    bool ok = true;
    std::vector<LsaViolation> violations;
};

/// Commutator algebra of the product, c[i][j][k] = m[i][j][k] - m[j][i][k].
inline LieAlgebra adjacent(const Lsa& a) {
    std::size_t n = a.dim();
    LieAlgebra g(n, "adj(" + a.name() + ")");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                g.c(i, j, k) = a.m(i, j, k) - a.m(j, i, k);
    return g;
}

/// Left-symmetry of the associator over basis triples. The defect
/// (xy)z - x(yz) - (yx)z + y(xz) is antisymmetric in x and y, so pairs with
/// i < j suffice.
inline LsaValidation validate_lsa(const Lsa& a) {
    std::size_t n = a.dim();
    LsaValidation res;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                Vec ek = unit_vec(n, k);
                Vec lhs = vec_sub(a.product(a.product_basis(i, j), ek),
                                  a.product(unit_vec(n, i), a.product_basis(j, k)));
                Vec rhs = vec_sub(a.product(a.product_basis(j, i), ek),
                                  a.product(unit_vec(n, j), a.product_basis(i, k)));
                if (lhs != rhs) {
                    res.ok = false;
                    res.violations.push_back({i, j, k});
                }
            }
        }
    }
    return res;
}

/// Affine set of solutions e to x * e = x.
struct RightIdentitySet {
    bool exists = false;
    Vec particular;
    std::vector<Vec> kernel;

    bool unique() const { return exists && kernel.empty(); }
};

/// Solves sum_j e_j m[i][j][k] = delta_{ik} as a linear system in e.
inline RightIdentitySet right_identities(const Lsa& a) {
    std::size_t n = a.dim();
    if (n == 0) return {};
    Matrix sys(n * n, n);
    Vec rhs(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) sys(i * n + k, j) = a.m(i, j, k);
            rhs[i * n + k] = (i == k) ? Rational(1) : Rational(0);
        }
    RightIdentitySet out;
    auto sol = solve(sys, rhs);
    if (!sol) return out;
    out.exists = true;
    out.particular = *sol;
    out.kernel = nullspace(sys);
    return out;
}

/// Left-regular representation of a valid left-symmetric algebra over its
/// adjacent Lie algebra.
inline Representation left_regular_rep(const Lsa& a) {
    auto v = validate_lsa(a);
    if (!v.ok) throw std::invalid_argument("left_regular_rep: product is not left-symmetric");
    Representation r;
    r.algebra = std::make_shared<LieAlgebra>(adjacent(a));
    r.space_dim = a.dim();
    r.label = "L(" + a.name() + ")";
    for (std::size_t i = 0; i < a.dim(); ++i) r.action.push_back(a.left_matrix(i));
    return r;
}

struct CuspidalLsa {
    Lsa lsa;
    Vec identity;
};

/// Transfers the module product through the bijection pi(x) = action(x) v of a
/// cuspidal point: e_i * e_j has coordinates pi^{-1}(action(e_i) action(e_j) v),
/// and pi^{-1}(v) is a right identity.
inline CuspidalLsa lsa_from_cuspidal(const Representation& r, const Vec& v) {
    std::size_t n = r.algebra->dim();
    if (n == 0 || r.space_dim != n)
        throw std::invalid_argument("lsa_from_cuspidal: algebra and module dimensions must agree and be positive");
    if (v.size() != r.space_dim)
        throw std::invalid_argument("lsa_from_cuspidal: point has wrong length");
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < n; ++i) cols.push_back(r.act(i) * v);
    Matrix p = from_columns(cols, n);
    Matrix pinv;
    try {
        pinv = inverse(p);
    } catch (const std::exception&) {
        throw std::invalid_argument("lsa_from_cuspidal: stabilizer at the point is nonzero");
    }
    CuspidalLsa out;
    out.lsa = Lsa(n, r.label + " @point");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec z = pinv * (r.act(i) * cols[j]);
            for (std::size_t k = 0; k < n; ++k) out.lsa.m(i, j, k) = z[k];
        }
    out.identity = pinv * v;
    for (std::size_t i = 0; i < n; ++i) {
        Vec xe = out.lsa.product(unit_vec(n, i), out.identity);
        if (xe != unit_vec(n, i))
            throw std::logic_error("lsa_from_cuspidal: recovered element is not a right identity");
    }
    return out;
}

/// Full matrix algebra on gl(n), basis E_pq in row-major order, with the
/// matrix product as left-symmetric structure.
inline Lsa matrix_lsa(std::size_t n) {
    Lsa a(n * n, "gl(" + std::to_string(n) + ") matrix algebra");
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s)
                    if (q == r) a.m(p * n + q, r * n + s, p * n + s) = 1;
    return a;
}

/// Block sum of two products.
inline Lsa direct_sum_lsa(const Lsa& a, const Lsa& b) {
    std::size_t n = a.dim(), m = b.dim();
    Lsa s(n + m, a.name() + " (+) " + b.name());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) s.m(i, j, k) = a.m(i, j, k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k) s.m(n + i, n + j, n + k) = b.m(i, j, k);
    return s;
}

/// Candidate family for the isomorphism search: diagonal rescalings over
/// {1, -1, 2, -2, 1/2, -1/2}, and in dimension 4 each of them composed with
/// the sl(2) Weyl reflection H -> -H, X -> -Y, Y -> -X, C -> C.
inline std::vector<Matrix> default_candidate_family(std::size_t dim) {
    std::vector<Matrix> out;
    out.push_back(Matrix::identity(dim));
    if (dim == 0 || dim > 8) return out;
    std::vector<Rational> grid = {Rational(1), Rational(-1)};
    if (dim <= 4) {
        grid.push_back(Rational(2));
        grid.push_back(Rational(-2));
        grid.push_back(Rational(1) / 2);
        grid.push_back(Rational(-1) / 2);
    }
    std::vector<Matrix> diagonals;
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
        Matrix d(dim, dim);
        for (std::size_t i = 0; i < dim; ++i) d(i, i) = grid[idx[i]];
        diagonals.push_back(d);
        std::size_t pos = 0;
        while (pos < dim && ++idx[pos] == grid.size()) idx[pos++] = 0;
        if (pos == dim) break;
    }
    std::vector<Matrix> twists;
    twists.push_back(Matrix::identity(dim));
    if (dim == 4) {
        Matrix w(4, 4);
        w(0, 0) = -1;
        w(2, 1) = -1;
        w(1, 2) = -1;
        w(3, 3) = 1;
        twists.push_back(w);
    }
    for (const auto& w : twists)
        for (const auto& d : diagonals) out.push_back(w * d);
    return out;
}

/// Searches the candidate family for an invertible h with
/// h(x * y) = h(x) h(y). Absence of a witness is not a proof of
/// non-isomorphism.
inline std::optional<Matrix> lsa_isomorphic(const Lsa& a, const Lsa& b,
                                            const std::vector<Matrix>& candidates) {
    if (a.dim() != b.dim()) return std::nullopt;
    std::size_t n = a.dim();
    for (const auto& h : candidates) {
        if (h.rows() != n || h.cols() != n) continue;
        if (rank(h) != n) continue;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            Vec hi = h * unit_vec(n, i);
            for (std::size_t j = 0; j < n && ok; ++j) {
                Vec lhs = h * a.product_basis(i, j);
                Vec rhs = b.product(hi, h * unit_vec(n, j));
                if (lhs != rhs) ok = false;
            }
        }
        if (ok) return h;
    }
    return std::nullopt;
}

inline std::optional<Matrix> lsa_isomorphic(const Lsa& a, const Lsa& b) {
    return lsa_isomorphic(a, b, default_candidate_family(a.dim()));
}

struct ReducedSplit {
    enum class Status { Reduced, Split, NotApplicable };
    Status status = Status::Reduced;
    std::size_t fixed_dim = 0;
    std::vector<Vec> g1_basis, c1_basis;
    Lsa g1, c1;
    std::string failure;
};

namespace detail {

/// Coordinates of x in the span of the given columns, or nullopt.
inline std::optional<Vec> in_span(const Matrix& span_cols, const Vec& x) {
    return solve(span_cols, x);
}

}  // namespace detail

/// Fixed space {x : s * x = 0 for every s in the span}, as a nullspace of the
/// stacked left-multiplication matrices.
inline std::vector<Vec> lsa_fixed_space(const Lsa& a, const std::vector<Vec>& span) {
    std::size_t n = a.dim();
    Matrix stacked(span.size() * n, n);
    for (std::size_t s = 0; s < span.size(); ++s) {
        Matrix ls = a.left_matrix_of(span[s]);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) stacked(s * n + r, c) = ls(r, c);
    }
    return nullspace(stacked);
}

/// Computes the fixed space g^s = {x : s * x = 0 for all s in the semisimple
/// part} and, when it is nonzero, splits the algebra into the ideal generated
/// by the semisimple part plus the fixed space.
inline ReducedSplit reduced_split(const Lsa& a, const std::vector<Vec>& semisimple_part) {
    std::size_t n = a.dim();
    ReducedSplit out;
    std::vector<Vec> fixed = lsa_fixed_space(a, semisimple_part);
    out.fixed_dim = fixed.size();
    if (fixed.empty()) {
        out.status = ReducedSplit::Status::Reduced;
        return out;
    }

    // two-sided ideal generated by the semisimple part
    std::vector<Vec> gen = semisimple_part;
    while (true) {
        Matrix cur = from_columns(gen, n);
        std::size_t r = rank(cur);
        std::vector<Vec> next = gen;
        for (const auto& u : gen)
            for (std::size_t i = 0; i < n; ++i) {
                next.push_back(a.product(unit_vec(n, i), u));
                next.push_back(a.product(u, unit_vec(n, i)));
            }
        Matrix grown = from_columns(next, n);
        if (rank(grown) == r) break;
        std::vector<Vec> indep;
        for (const auto& cand : next) {
            std::vector<Vec> trial;
            for (const auto& g : indep) trial.push_back(g);
            trial.push_back(cand);
            if (rank(from_columns(trial, n)) == trial.size()) indep.push_back(cand);
        }
        gen = indep;
        if (gen.size() >= n) break;
    }
    out.g1_basis = gen;
    out.c1_basis = fixed;

    std::vector<Vec> all = gen;
    for (const auto& f : fixed) all.push_back(f);
    if (gen.size() + fixed.size() != n || rank(from_columns(all, n)) != n) {
        out.status = ReducedSplit::Status::NotApplicable;
        out.failure = "generated ideal and fixed space do not form a direct sum";
        return out;
    }

    Matrix g1_cols = from_columns(gen, n);
    Matrix c1_cols = from_columns(fixed, n);
    auto check_ideal = [&](const Matrix& cols, const std::vector<Vec>& basis,
                           const char* tag) -> bool {
        for (std::size_t b = 0; b < basis.size(); ++b)
            for (std::size_t i = 0; i < n; ++i) {
                Vec left = a.product(unit_vec(n, i), basis[b]);
                Vec right = a.product(basis[b], unit_vec(n, i));
                if (!detail::in_span(cols, left)) {
                    out.failure = std::string("e_") + std::to_string(i) + " * " + tag + "[" +
                                  std::to_string(b) + "] leaves the span";
                    return false;
                }
                if (!detail::in_span(cols, right)) {
                    out.failure = std::string(tag) + "[" + std::to_string(b) + "] * e_" +
                                  std::to_string(i) + " leaves the span";
                    return false;
                }
            }
        return true;
    };
    if (!check_ideal(g1_cols, gen, "g1") || !check_ideal(c1_cols, fixed, "c1")) {
        out.status = ReducedSplit::Status::NotApplicable;
        return out;
    }

    auto restrict_product = [&](const Matrix& cols, const std::vector<Vec>& basis,
                                const std::string& tag) {
        Lsa comp(basis.size(), a.name() + "." + tag);
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j) {
                Vec pr = a.product(basis[i], basis[j]);
                auto coords = detail::in_span(cols, pr);
                for (std::size_t k = 0; k < basis.size(); ++k) comp.m(i, j, k) = (*coords)[k];
            }
        return comp;
    };
    out.g1 = restrict_product(g1_cols, gen, "g1");
    out.c1 = restrict_product(c1_cols, fixed, "c1");
    for (std::size_t i = 0; i < fixed.size(); ++i)
        for (std::size_t j = i + 1; j < fixed.size(); ++j)
            if (out.c1.product_basis(i, j) != out.c1.product_basis(j, i)) {
                out.status = ReducedSplit::Status::NotApplicable;
                out.failure = "complement is not commutative at pair (" + std::to_string(i) +
                              ", " + std::to_string(j) + ")";
                return out;
            }
    std::vector<Vec> s_in_g1;
    for (const auto& v : semisimple_part) s_in_g1.push_back(*detail::in_span(g1_cols, v));
    if (!lsa_fixed_space(out.g1, s_in_g1).empty()) {
        out.status = ReducedSplit::Status::NotApplicable;
        out.failure = "component g1 still has nonzero fixed space";
        return out;
    }
    out.status = ReducedSplit::Status::Split;
    return out;
}

inline nlohmann::ordered_json lsa_to_json(const Lsa& a) {
    nlohmann::ordered_json j;
    j["name"] = a.name();
    j["dim"] = a.dim();
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t jj = 0; jj < a.dim(); ++jj)
            for (std::size_t k = 0; k < a.dim(); ++k)
                if (!is_zero(a.m(i, jj, k)))
                    entries.push_back({i, jj, k, rat_to_string(a.m(i, jj, k))});
    j["mult"] = std::move(entries);
    return j;
}

inline Lsa lsa_from_json(const nlohmann::json& j) {
    Lsa a(j.at("dim").get<std::size_t>(), j.at("name").get<std::string>());
    for (const auto& e : j.at("mult")) {
        std::size_t i = e.at(0).get<std::size_t>();
        std::size_t jj = e.at(1).get<std::size_t>();
        std::size_t k = e.at(2).get<std::size_t>();
        if (i >= a.dim() || jj >= a.dim() || k >= a.dim())
            throw std::invalid_argument("lsa_from_json: index out of range");
        a.m(i, jj, k) = rat_from_string(e.at(3).get<std::string>());
    }
    return a;
}

}  // namespace prehom
