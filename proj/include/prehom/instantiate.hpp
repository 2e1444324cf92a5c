#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prehom/castling.hpp"
#include "prehom/prehom.hpp"
#include "prehom/repr.hpp"

namespace prehom {

/// Concrete action of the GL(1)^k center. Each generator acts by per-summand
/// scalars plus optional matrix blocks across groups of equal-dimension
/// summands.
struct CenterSpec {
    struct Block {
        std::vector<std::size_t> summands;
        Matrix matrix;
    };
    struct Generator {
        std::vector<Rational> scalars;
        std::vector<Block> blocks;
    };
    std::vector<Generator> generators;
};

struct InstantiationOutcome {
    std::optional<Representation> rep;
    std::string reason;

    explicit operator bool() const { return rep.has_value(); }
};

namespace detail {

/// Fundamental 6-j style reduction for Sp: the alternating square modulo the
/// invariant line spanned by sum_i e_i ^ e_{n+i}.
inline Representation sp_lambda2(AlgebraPtr g, std::size_t rank) {
    Representation r = alt_square(standard(g));
    std::size_t d = 2 * rank;
    auto basis = alt2_basis(d);
    Vec w(basis.size());
    for (std::size_t t = 0; t < basis.size(); ++t)
        if (basis[t][1] == basis[t][0] + rank) w[t] = 1;
    Representation q = quotient_rep(r, {w});
    q.label = "sp lambda2";
    return q;
}

/// Third fundamental module for Sp: the alternating cube modulo the image of
/// x -> x ^ w, with w the invariant 2-form from sp_lambda2.
inline Representation sp_lambda3(AlgebraPtr g, std::size_t rank) {
    Representation r = alt_cube(standard(g));
    std::size_t d = 2 * rank;
    std::vector<std::array<std::size_t, 3>> basis;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b)
            for (std::size_t c = b + 1; c < d; ++c) basis.push_back({a, b, c});
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < d; ++j) {
        Vec v(basis.size());
        for (std::size_t i = 0; i < rank; ++i) {
            if (j == i || j == rank + i) continue;
            std::array<std::size_t, 3> tri = {j, i, rank + i};
            int sign = 1;
            for (std::size_t p = 0; p < 3; ++p)
                for (std::size_t q = p + 1; q < 3; ++q)
                    if (tri[p] > tri[q]) {
                        std::swap(tri[p], tri[q]);
                        sign = -sign;
                    }
            for (std::size_t t = 0; t < basis.size(); ++t)
                if (basis[t] == tri) v[t] += Rational(sign);
        }
        gens.push_back(std::move(v));
    }
    Representation q = quotient_rep(r, gens);
    q.label = "sp lambda3";
    return q;
}

inline Representation factor_label_rep(AlgebraPtr g, const DescriptorFactor& f,
                                       const RepLabel& l) {
    Int ld = label_dim(f, l);
    if (g->dim() == 0) return trivial(g, ld.convert_to<std::size_t>());
    if (l.base == "1") return trivial(g, 1);
    Representation base;
    if (l.base == "L1")
        base = standard(g);
    else if (l.base == "L2")
        base = f.family == FactorFamily::Sp ? sp_lambda2(g, f.rank) : alt_square(standard(g));
    else if (l.base == "L3")
        base = f.family == FactorFamily::Sp ? sp_lambda3(g, f.rank) : alt_cube(standard(g));
    else if (l.base == "2L1")
        base = sym_square(standard(g));
    else if (l.base == "3L1")
        base = sym_cube(standard(g));
    else
        throw std::logic_error("factor_label_rep: unhandled label " + label_text(l));
    if (l.dual) base = dual(base);
    return base;
}

}  // namespace detail

/// Builds the representation named by a descriptor over the direct sum of its
/// factor algebras, center generators last. Families outside GL, SL, SO, Sp
/// are reported as not instantiable.
inline InstantiationOutcome try_instantiate(const TripletDescriptor& t,
                                            const CenterSpec* center = nullptr) {
    InstantiationOutcome out;
    validate_descriptor(t);
    for (const auto& f : t.factors) {
        bool ok = f.family == FactorFamily::GL || f.family == FactorFamily::SL ||
                  f.family == FactorFamily::SO || f.family == FactorFamily::Sp;
        if (!ok) {
            out.reason = std::string("factor ") + family_text(f.family) + " is not instantiable";
            return out;
        }
    }
    if (t.center_count > 0 && center == nullptr) {
        out.reason = "center action unspecified";
        return out;
    }
    if (center != nullptr && center->generators.size() != t.center_count) {
        out.reason = "center action lists " + std::to_string(center->generators.size()) +
                     " generators for GL(1)^" + std::to_string(t.center_count);
        return out;
    }

    std::vector<AlgebraPtr> factor_algs;
    std::vector<std::size_t> offsets;
    LieAlgebra sum(0, "");
    for (const auto& f : t.factors) {
        Family fam = f.family == FactorFamily::GL   ? Family::gl
                     : f.family == FactorFamily::SL ? Family::sl
                     : f.family == FactorFamily::SO ? Family::so
                                                    : Family::sp;
        LieAlgebra alg = construct_classical(fam, f.rank);
        offsets.push_back(sum.dim());
        sum = sum.dim() == 0 ? alg : direct_sum(sum, alg);
        factor_algs.push_back(std::make_shared<LieAlgebra>(std::move(alg)));
    }
    if (t.factors.empty()) sum = LieAlgebra(0, "1");
    sum.set_name([&] {
        std::string n;
        for (const auto& f : t.factors) {
            if (!n.empty()) n += "+";
            n += family_text(f.family);
            if (family_has_rank(f.family)) n += "(" + std::to_string(f.rank) + ")";
        }
        return n.empty() ? std::string("1") : n;
    }());
    auto sum_ptr = std::make_shared<LieAlgebra>(std::move(sum));

    std::vector<std::size_t> summand_dims;
    Representation whole;
    bool first_summand = true;
    for (std::size_t s = 0; s < t.summands.size(); ++s) {
        Representation term;
        bool first_factor = true;
        for (std::size_t f = 0; f < t.factors.size(); ++f) {
            Representation part = detail::factor_label_rep(factor_algs[f], t.factors[f],
                                                           t.summands[s].labels[f]);
            Representation lifted = inflate(sum_ptr, part, offsets[f]);
            term = first_factor ? std::move(lifted) : tensor(term, lifted);
            first_factor = false;
        }
        if (first_factor) term = trivial(sum_ptr, 1);
        summand_dims.push_back(term.space_dim);
        whole = first_summand ? std::move(term) : direct_sum_rep(whole, term);
        first_summand = false;
    }

    if (t.center_count > 0) {
        std::vector<std::size_t> starts(summand_dims.size());
        std::size_t acc = 0;
        for (std::size_t s = 0; s < summand_dims.size(); ++s) {
            starts[s] = acc;
            acc += summand_dims[s];
        }
        std::vector<Matrix> twists;
        for (const auto& gen : center->generators) {
            Matrix tw(whole.space_dim, whole.space_dim);
            if (!gen.scalars.empty()) {
                if (gen.scalars.size() != summand_dims.size()) {
                    out.reason = "center scalars do not match the summand count";
                    return out;
                }
                for (std::size_t s = 0; s < summand_dims.size(); ++s)
                    for (std::size_t v = 0; v < summand_dims[s]; ++v)
                        tw(starts[s] + v, starts[s] + v) += gen.scalars[s];
            }
            for (const auto& b : gen.blocks) {
                if (b.summands.empty()) continue;
                std::size_t d = summand_dims.at(b.summands.at(0));
                if (b.matrix.rows() != b.summands.size() || b.matrix.cols() != b.summands.size()) {
                    out.reason = "center block matrix shape mismatch";
                    return out;
                }
                for (std::size_t p = 0; p < b.summands.size(); ++p) {
                    if (summand_dims.at(b.summands[p]) != d) {
                        out.reason = "center block mixes summands of different dimensions";
                        return out;
                    }
                    for (std::size_t q = 0; q < b.summands.size(); ++q)
                        for (std::size_t v = 0; v < d; ++v)
                            tw(starts[b.summands[p]] + v, starts[b.summands[q]] + v) +=
                                b.matrix(p, q);
                }
            }
            twists.push_back(std::move(tw));
        }
        whole = with_center(whole, twists);
    }

    whole.label = render(t);
    if (Int(static_cast<unsigned long long>(whole.space_dim)) != space_dim_of(t))
        throw std::logic_error("try_instantiate: space dimension disagrees with the formula");
    if (Int(static_cast<unsigned long long>(whole.algebra->dim())) != algebra_dim_of(t))
        throw std::logic_error("try_instantiate: algebra dimension disagrees with the formula");
    out.rep = std::move(whole);
    return out;
}

struct TransportReport {
    bool applicable = false;
    std::string reason;
    TripletDescriptor left, right;
    PvVerdict left_verdict, right_verdict;
    bool agree = false;
};

/// Instantiates a descriptor and its castling transform and compares the
/// prehomogeneity verdicts and generic isotropy dimensions.
inline TransportReport pv_transport_check(const TripletDescriptor& t, const CastlingMove& mv,
                                          const SearchPolicy& policy = {}) {
    TransportReport rep;
    rep.left = t;
    rep.right = castle(t, mv);
    InstantiationOutcome a = try_instantiate(t);
    InstantiationOutcome b = try_instantiate(rep.right);
    if (!a || !b) {
        rep.reason = "not instantiable: " + (a ? b.reason : a.reason);
        return rep;
    }
    rep.applicable = true;
    rep.left_verdict = decide_pv(*a.rep, policy);
    rep.right_verdict = decide_pv(*b.rep, policy);
    rep.agree = rep.left_verdict.status == rep.right_verdict.status;
    if (rep.agree && rep.left_verdict.status == PvStatus::IsPV)
        rep.agree = rep.left_verdict.certificate->isotropy_dim ==
                    rep.right_verdict.certificate->isotropy_dim;
    return rep;
}

}  // namespace prehom
