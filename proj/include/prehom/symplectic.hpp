#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "prehom/lsa.hpp"

namespace prehom {

/// Lie algebra with a closed nondegenerate antisymmetric form on it.
struct SymplecticLieAlgebra {
    LieAlgebra algebra;
    Matrix omega;
};

struct SymplecticViolation {
    enum class Kind { Antisymmetry, Degenerate, NotClosed };
    Kind kind;
    std::size_t i = 0, j = 0, k = 0;
};

struct SymplecticValidation {
    bool ok = true;
    std::vector<SymplecticViolation> violations;
};

inline Rational omega_pair(const SymplecticLieAlgebra& s, const Vec& x, const Vec& y) {
    return dot(x, s.omega * y);
}

/// Checks antisymmetry and invertibility of omega and the cocycle identity
/// omega([x,y],z) + omega([y,z],x) + omega([z,x],y) = 0 over basis triples.
inline SymplecticValidation validate_symplectic(const SymplecticLieAlgebra& s) {
    SymplecticValidation res;
    std::size_t n = s.algebra.dim();
    if (s.omega.rows() != n || s.omega.cols() != n)
        throw std::invalid_argument("validate_symplectic: omega has wrong shape");
    if (s.omega != -s.omega.transpose()) {
        res.ok = false;
        res.violations.push_back({SymplecticViolation::Kind::Antisymmetry});
    }
    if (rank(s.omega) != n) {
        res.ok = false;
        res.violations.push_back({SymplecticViolation::Kind::Degenerate});
    }
    auto term = [&](std::size_t i, std::size_t j, std::size_t k) {
        Rational v(0);
        for (std::size_t t = 0; t < n; ++t) {
            const Rational& c = s.algebra.c(i, j, t);
            if (!is_zero(c)) v += c * s.omega(t, k);
        }
        return v;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (!is_zero(term(i, j, k) + term(j, k, i) + term(k, i, j))) {
                    res.ok = false;
                    res.violations.push_back({SymplecticViolation::Kind::NotClosed, i, j, k});
                }
    return res;
}

/// Extends a left-symmetric algebra to its dual sum: the adjacent algebra acts
/// on dual coordinates through the negative transpose of left multiplication,
/// the dual half is abelian, and omega pairs the two halves.
inline SymplecticLieAlgebra double_lsa(const Lsa& a) {
    auto v = validate_lsa(a);
    if (!v.ok) throw std::invalid_argument("double_lsa: product is not left-symmetric");
    std::size_t n = a.dim();
    LieAlgebra adj = adjacent(a);
    LieAlgebra d(2 * n, "double(" + a.name() + ")");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) d.c(i, j, k) = adj.c(i, j, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                const Rational& m = a.m(i, k, j);
                if (is_zero(m)) continue;
                d.c(i, n + j, n + k) = -m;
                d.c(n + j, i, n + k) = m;
            }
    Matrix omega(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        omega(i, n + i) = 1;
        omega(n + i, i) = -1;
    }
    return {std::move(d), std::move(omega)};
}

/// Recovers a product from the pairing: for each (j, k), e_j * e_k is the
/// unique w with omega(e_i, w) = omega([e_i, e_j], e_k) for all i.
inline Lsa chu_lsa(const SymplecticLieAlgebra& s) {
    std::size_t n = s.algebra.dim();
    Matrix oinv;
    try {
        oinv = inverse(s.omega);
    } catch (const std::exception&) {
        throw std::invalid_argument("chu_lsa: omega is degenerate");
    }
    Lsa a(n, "chu(" + s.algebra.name() + ")");
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            Vec rhs(n);
            for (std::size_t i = 0; i < n; ++i) {
                Rational v(0);
                for (std::size_t t = 0; t < n; ++t) {
                    const Rational& c = s.algebra.c(i, j, t);
                    if (!is_zero(c)) v += c * s.omega(t, k);
                }
                rhs[i] = v;
            }
            Vec w = oinv * rhs;
            for (std::size_t t = 0; t < n; ++t) a.m(j, k, t) = w[t];
        }
    return a;
}

/// Restriction of a product tensor to the leading block of coordinates.
inline Lsa leading_block(const Lsa& a, std::size_t n, const std::string& name) {
    Lsa out(n, name);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) out.m(i, j, k) = a.m(i, j, k);
    return out;
}

/// Solves f([e_i, e_j]) = omega(e_i, e_j) for a dual vector f. The system is
/// finite and linear, so absence of a solution is conclusive.
inline std::optional<Vec> frobenius_witness(const SymplecticLieAlgebra& s) {
    std::size_t n = s.algebra.dim();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    Matrix sys(pairs.size(), n);
    Vec rhs(pairs.size());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
        auto [i, j] = pairs[r];
        for (std::size_t t = 0; t < n; ++t) sys(r, t) = s.algebra.c(i, j, t);
        rhs[r] = s.omega(i, j);
    }
    return solve(sys, rhs);
}

struct FrobeniusReport {
    bool has_right_identity = false;
    bool frobenius = false;
    bool agree = false;
    std::optional<Vec> identity;
    std::optional<Vec> witness;
    bool exact_form_checked = false;
};

/// Compares right-identity existence with Frobenius detection on the dual sum
/// and, when an identity e exists, verifies that f(z) = omega(z, e) realizes
/// omega as the coboundary of f.
inline FrobeniusReport frobenius_iff_right_identity(const Lsa& a) {
    FrobeniusReport rep;
    auto ids = right_identities(a);
    SymplecticLieAlgebra d = double_lsa(a);
    auto f = frobenius_witness(d);
    rep.has_right_identity = ids.exists;
    rep.frobenius = f.has_value();
    rep.agree = (rep.has_right_identity == rep.frobenius);
    if (f) rep.witness = *f;
    if (ids.exists) {
        rep.identity = ids.particular;
        std::size_t n = a.dim();
        Vec embedded(2 * n);
        for (std::size_t i = 0; i < n; ++i) embedded[i] = ids.particular[i];
        Vec fe = d.omega * embedded;
        bool ok = true;
        for (std::size_t i = 0; i < 2 * n && ok; ++i)
            for (std::size_t j = i + 1; j < 2 * n && ok; ++j) {
                Rational lhs = dot(d.algebra.bracket_basis(i, j), fe);
                if (lhs != d.omega(i, j)) ok = false;
            }
        rep.exact_form_checked = ok;
    }
    return rep;
}

inline nlohmann::ordered_json to_json(const SymplecticLieAlgebra& s,
                                      const std::optional<Vec>& witness = std::nullopt) {
    nlohmann::ordered_json j;
    j["algebra"] = to_json(s.algebra);
    nlohmann::ordered_json om = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < s.omega.rows(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t c = 0; c < s.omega.cols(); ++c)
            row.push_back(rat_to_string(s.omega(r, c)));
        om.push_back(std::move(row));
    }
    j["omega"] = std::move(om);
    if (witness) {
        nlohmann::ordered_json w = nlohmann::ordered_json::array();
        for (const auto& c : *witness) w.push_back(rat_to_string(c));
        j["frobenius_witness"] = std::move(w);
    }
    return j;
}

}  // namespace prehom
