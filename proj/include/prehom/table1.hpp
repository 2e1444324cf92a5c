#pragma once

#include <array>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "prehom/lsa.hpp"

namespace prehom {

/// Quotient of two polynomials in one parameter, coefficient arrays with the
/// constant term first.
struct RationalFn {
    std::vector<Rational> num = {Rational(0)};
    std::vector<Rational> den = {Rational(1)};

    static RationalFn constant(Rational c) { return {{std::move(c)}, {Rational(1)}}; }

    Rational eval(const Rational& lambda) const {
        auto horner = [&](const std::vector<Rational>& cs) {
            Rational v(0);
            for (std::size_t t = cs.size(); t-- > 0;) v = v * lambda + cs[t];
            return v;
        };
        Rational d = horner(den);
        if (is_zero(d)) throw std::domain_error("table1: parameter value hits a pole");
        return horner(num) / d;
    }
};

/// The three left-symmetric products on gl(2) in basis (H, X, Y, C), loaded
/// from data and orientation-checked once against the expected commutators.
class Table1 {
  public:
    using OperatorSet = std::array<std::array<std::array<RationalFn, 4>, 4>, 4>;

    const std::string& convention() const { return convention_; }

    Lsa a1() const { return build(ops_[0], "table1:A1", {}); }
    Lsa a2() const { return build(ops_[1], "table1:A2", {}); }
    Lsa a3(const Rational& lambda) const {
        return build(ops_[2], "table1:A3(" + rat_to_string(lambda) + ")", lambda);
    }

    static Table1 load(const std::string& path);

    /// gl(2) in the ordering (H, X, Y, C).
    static LieAlgebra expected_adjacent() {
        LieAlgebra g(4, "gl(2) [H,X,Y,C]");
        g.c(0, 1, 1) = 2;
        g.c(1, 0, 1) = -2;
        g.c(0, 2, 2) = -2;
        g.c(2, 0, 2) = 2;
        g.c(1, 2, 0) = 1;
        g.c(2, 1, 0) = -1;
        return g;
    }

  private:
    std::array<OperatorSet, 3> ops_;
    std::string convention_;

    Lsa build(const OperatorSet& set, const std::string& name,
              std::optional<Rational> lambda) const {
        Rational l = lambda.value_or(Rational(0));
        Lsa a(4, name);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = 0; c < 4; ++c) {
                    Rational v = set[i][r][c].eval(l);
                    if (convention_ == "columns")
                        a.m(i, c, r) = v;
                    else
                        a.m(i, r, c) = v;
                }
        return a;
    }

    static bool conforms(const Lsa& a) {
        if (!validate_lsa(a).ok) return false;
        LieAlgebra adj = adjacent(a);
        LieAlgebra want = expected_adjacent();
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                for (std::size_t k = 0; k < 4; ++k)
                    if (adj.c(i, j, k) != want.c(i, j, k)) return false;
        return true;
    }
};

inline RationalFn parse_table1_entry(const nlohmann::json& e) {
    if (e.is_string()) return RationalFn::constant(rat_from_string(e.get<std::string>()));
    RationalFn f;
    f.num.clear();
    f.den.clear();
    for (const auto& c : e.at("num")) f.num.push_back(rat_from_string(c.get<std::string>()));
    for (const auto& c : e.at("den")) f.den.push_back(rat_from_string(c.get<std::string>()));
    if (f.num.empty() || f.den.empty())
        throw std::invalid_argument("table1: empty coefficient array");
    return f;
}

inline Table1 Table1::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("table1: cannot open " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    Table1 t;
    const char* names[3] = {"A1", "A2", "A3"};
    const char* mats[4] = {"L_H", "L_X", "L_Y", "L_C"};
    for (std::size_t a = 0; a < 3; ++a) {
        const auto& alg = j.at(names[a]);
        for (std::size_t i = 0; i < 4; ++i) {
            const auto& m = alg.at(mats[i]);
            if (m.size() != 4) throw std::invalid_argument("table1: operator is not 4x4");
            for (std::size_t r = 0; r < 4; ++r) {
                if (m[r].size() != 4) throw std::invalid_argument("table1: operator is not 4x4");
                for (std::size_t c = 0; c < 4; ++c)
                    t.ops_[a][i][r][c] = parse_table1_entry(m[r][c]);
            }
        }
    }
    for (const char* conv : {"columns", "rows"}) {
        t.convention_ = conv;
        if (conforms(t.a1()) && conforms(t.a2()) && conforms(t.a3(Rational(3)))) return t;
    }
    throw std::runtime_error(
        "table1: neither orientation of the printed operators is left-symmetric with the "
        "expected commutators");
}

}  // namespace prehom
