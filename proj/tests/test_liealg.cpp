#include <catch2/catch_amalgamated.hpp>

#include "prehom/liealg.hpp"
#include "prehom/rng.hpp"

using namespace prehom;

namespace {

std::size_t expected_dim(Family f, std::size_t n) {
    switch (f) {
        case Family::gl: return n * n;
        case Family::sl: return n * n - 1;
        case Family::so: return n * (n - 1) / 2;
        case Family::sp: return n * (2 * n + 1);
    }
    return 0;
}

}  // namespace

TEST_CASE("classical families validate exactly for rank 1..5") {
    for (Family f : {Family::gl, Family::sl, Family::so, Family::sp})
        for (std::size_t n = 1; n <= 5; ++n) {
            LieAlgebra g = construct_classical(f, n);
            INFO(g.name());
            CHECK(g.dim() == expected_dim(f, n));
            auto res = validate(g);
            CHECK(res.ok);
            CHECK(res.violations.empty());
        }
}

TEST_CASE("structure constants agree with matrix commutators") {
    Rng rng(101);
    for (Family f : {Family::gl, Family::sl, Family::so, Family::sp})
        for (std::size_t n = 2; n <= 3; ++n) {
            LieAlgebra g = construct_classical(f, n);
            const auto& b = g.matrix_basis();
            for (int trial = 0; trial < 8; ++trial) {
                std::size_t i = static_cast<std::size_t>(rng.draw(0, static_cast<long>(g.dim()) - 1));
                std::size_t j = static_cast<std::size_t>(rng.draw(0, static_cast<long>(g.dim()) - 1));
                Matrix lhs = b[i].commutator(b[j]);
                Vec coords = g.bracket_basis(i, j);
                Matrix rhs(lhs.rows(), lhs.cols());
                for (std::size_t k = 0; k < g.dim(); ++k)
                    if (!is_zero(coords[k])) rhs = rhs + b[k] * coords[k];
                CHECK(lhs == rhs);
            }
        }
}

TEST_CASE("sp basis matrices preserve the symplectic form") {
    for (std::size_t n = 1; n <= 3; ++n) {
        LieAlgebra g = construct_classical(Family::sp, n);
        Matrix J(2 * n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            J(i, n + i) = 1;
            J(n + i, i) = -1;
        }
        for (const auto& x : g.matrix_basis())
            CHECK((x.transpose() * J + J * x).is_zero_matrix());
    }
}

TEST_CASE("so basis matrices are antisymmetric") {
    LieAlgebra g = construct_classical(Family::so, 4);
    for (const auto& x : g.matrix_basis()) CHECK((x + x.transpose()).is_zero_matrix());
}

TEST_CASE("a deliberately broken bracket is flagged") {
    LieAlgebra g(3, "broken");
    // sl(2) in the order (X, Y, H) with [X,Y] perturbed to H + X
    g.c(0, 1, 2) = 1;
    g.c(1, 0, 2) = -1;
    g.c(0, 1, 0) = 1;
    g.c(1, 0, 0) = -1;
    g.c(2, 0, 0) = 2;
    g.c(0, 2, 0) = -2;
    g.c(2, 1, 1) = -2;
    g.c(1, 2, 1) = 2;
    auto res = validate(g);
    CHECK(!res.ok);
    REQUIRE(res.violations.size() == 1);
    CHECK(res.violations[0].kind == BracketViolation::Jacobi);

    LieAlgebra h(2, "asym-broken");
    h.c(0, 1, 0) = 1;
    h.c(1, 0, 0) = 1;
    auto res2 = validate(h);
    CHECK(!res2.ok);
    CHECK(res2.violations[0].kind == BracketViolation::Antisymmetry);
}

TEST_CASE("direct sum keeps blocks and cross brackets vanish") {
    LieAlgebra a = construct_classical(Family::sl, 2);
    LieAlgebra b = construct_classical(Family::so, 3);
    LieAlgebra s = direct_sum(a, b);
    CHECK(s.dim() == a.dim() + b.dim());
    CHECK(validate(s).ok);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            CHECK(is_zero_vec(s.bracket_basis(i, a.dim() + j)));
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            CHECK(s.bracket_basis(i, j) == [&] {
                Vec v(s.dim());
                Vec w = a.bracket_basis(i, j);
                for (std::size_t k = 0; k < a.dim(); ++k) v[k] = w[k];
                return v;
            }());
}

TEST_CASE("derived subalgebra dimensions") {
    CHECK(derived_subalgebra_dim(construct_classical(Family::sl, 3)) == 8);
    CHECK(derived_subalgebra_dim(construct_classical(Family::gl, 3)) == 8);
    CHECK(derived_subalgebra_dim(construct_classical(Family::so, 3)) == 3);
    CHECK(derived_subalgebra_dim(abelian(4, "ab(4)")) == 0);
    LieAlgebra s = direct_sum(construct_classical(Family::sl, 2), abelian(2, "ab(2)"));
    CHECK(derived_subalgebra_dim(s) == 3);
}

TEST_CASE("bracket of general elements is bilinear and antisymmetric") {
    LieAlgebra g = construct_classical(Family::gl, 3);
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        Vec x(g.dim()), y(g.dim());
        for (auto& v : x) v = Rational(rng.draw(-3, 3));
        for (auto& v : y) v = Rational(rng.draw(-3, 3));
        Vec xy = g.bracket(x, y);
        Vec yx = g.bracket(y, x);
        CHECK(vec_add(xy, yx) == Vec(g.dim()));
    }
}

TEST_CASE("json round trip preserves the structure tensor") {
    for (Family f : {Family::sl, Family::sp}) {
        LieAlgebra g = construct_classical(f, 2);
        auto j = to_json(g);
        LieAlgebra h = algebra_from_json(j);
        CHECK(h.dim() == g.dim());
        CHECK(h.name() == g.name());
        for (std::size_t i = 0; i < g.dim(); ++i)
            for (std::size_t jj = 0; jj < g.dim(); ++jj)
                CHECK(h.bracket_basis(i, jj) == g.bracket_basis(i, jj));
    }
    // values survive as exact rationals
    LieAlgebra q(2, "half");
    q.c(0, 1, 0) = Rational(1, 2);
    q.c(1, 0, 0) = Rational(-1, 2);
    auto j = to_json(q);
    CHECK(j["bracket"][0][3] == "1/2");
    CHECK(algebra_from_json(j).c(0, 1, 0) == Rational(1, 2));
}

TEST_CASE("json reader rejects malformed data") {
    nlohmann::json j = {{"name", "bad"}, {"dim", 2},
                        {"bracket", {{0, 1, 5, "1"}}}};
    CHECK_THROWS_AS(algebra_from_json(j), std::invalid_argument);
    nlohmann::json dup = {{"name", "bad"}, {"dim", 2},
                          {"bracket", {{0, 1, 0, "1"}, {1, 0, 0, "1"}}}};
    CHECK_THROWS_AS(algebra_from_json(dup), std::invalid_argument);
    nlohmann::json diag = {{"name", "bad"}, {"dim", 2},
                           {"bracket", {{1, 1, 0, "2"}}}};
    CHECK_THROWS_AS(algebra_from_json(diag), std::invalid_argument);
}

TEST_CASE("subalgebra extraction checks closure") {
    LieAlgebra g = construct_classical(Family::sl, 2);
    // order in sl(2): e0 = E01, e1 = E10, e2 = H
    std::vector<Vec> borel = {Vec{Rational(1), Rational(0), Rational(0)},
                              Vec{Rational(0), Rational(0), Rational(1)}};
    LieAlgebra b = subalgebra(g, borel, "borel");
    CHECK(b.dim() == 2);
    CHECK(validate(b).ok);
    // [H, E01] = 2 E01 lands on the first spanning vector
    CHECK(b.c(1, 0, 0) == 2);

    std::vector<Vec> not_closed = {Vec{Rational(1), Rational(0), Rational(0)},
                                   Vec{Rational(0), Rational(1), Rational(0)}};
    CHECK_THROWS_AS(subalgebra(g, not_closed, "x"), std::invalid_argument);
}
