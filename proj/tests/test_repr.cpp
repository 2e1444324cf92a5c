#include <catch2/catch_amalgamated.hpp>

#include "prehom/repr.hpp"

using namespace prehom;

namespace {

AlgebraPtr make(Family f, std::size_t n) {
    return std::make_shared<LieAlgebra>(construct_classical(f, n));
}

AlgebraPtr two_dim_nonabelian() {
    // [x, y] = y
    auto g = std::make_shared<LieAlgebra>(2, "r2");
    g->c(0, 1, 1) = 1;
    g->c(1, 0, 1) = -1;
    return g;
}

}  // namespace

TEST_CASE("power functor dimensions") {
    auto g = make(Family::gl, 3);
    auto s = standard(g);
    CHECK(sym_square(s).space_dim == 6);
    CHECK(alt_square(s).space_dim == 3);
    CHECK(sym_cube(s).space_dim == 10);
    CHECK(alt_cube(s).space_dim == 1);
    auto g4 = make(Family::gl, 4);
    CHECK(alt_cube(standard(g4)).space_dim == 4);
}

TEST_CASE("builders stay homomorphisms across the classical families") {
    for (Family f : {Family::gl, Family::sl, Family::so, Family::sp})
        for (std::size_t n = (f == Family::so || f == Family::sl ? 2 : 1); n <= 4; ++n) {
            auto g = make(f, n);
            auto s = standard(g);
            INFO(g->name());
            CHECK(validate_rep(s).ok);
            CHECK(validate_rep(dual(s)).ok);
            CHECK(validate_rep(sym_square(s)).ok);
            CHECK(validate_rep(alt_square(s)).ok);
            if (s.space_dim <= 4) {
                CHECK(validate_rep(tensor(s, s)).ok);
                CHECK(validate_rep(sym_cube(s)).ok);
                CHECK(validate_rep(alt_cube(s)).ok);
            }
            CHECK(validate_rep(adjoint(g)).ok);
        }
}

TEST_CASE("dual is an involution") {
    auto s = standard(make(Family::sl, 3));
    auto dd = dual(dual(s));
    for (std::size_t i = 0; i < s.action.size(); ++i) CHECK(dd.action[i] == s.action[i]);
}

TEST_CASE("tensor square decomposes into sym plus alt by symmetrization") {
    for (std::size_t d = 2; d <= 4; ++d) {
        auto g = make(Family::gl, d);
        auto s = standard(g);
        auto t = tensor(s, s);
        auto sym = sym_square(s);
        auto alt = alt_square(s);
        REQUIRE(sym.space_dim + alt.space_dim == t.space_dim);

        // rows of S send e_a (x) e_b to its monomial images in S2 and L2
        auto s2 = detail::sym2_basis(d);
        auto a2 = detail::alt2_basis(d);
        auto s2i = detail::index_of<2>(s2);
        auto a2i = detail::index_of<2>(a2);
        Matrix S(t.space_dim, t.space_dim);
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                std::size_t col = a * d + b;
                S(s2i[{std::min(a, b), std::max(a, b)}], col) += 1;
                if (a != b) {
                    Rational sign = a < b ? 1 : -1;
                    S(sym.space_dim + a2i[{std::min(a, b), std::max(a, b)}], col) += sign;
                }
            }
        REQUIRE(rank(S) == t.space_dim);

        for (std::size_t i = 0; i < g->dim(); ++i) {
            Matrix block(t.space_dim, t.space_dim);
            for (std::size_t p = 0; p < sym.space_dim; ++p)
                for (std::size_t q = 0; q < sym.space_dim; ++q)
                    block(p, q) = sym.action[i](p, q);
            for (std::size_t p = 0; p < alt.space_dim; ++p)
                for (std::size_t q = 0; q < alt.space_dim; ++q)
                    block(sym.space_dim + p, sym.space_dim + q) = alt.action[i](p, q);
            CHECK(S * t.action[i] == block * S);
        }
    }
}

TEST_CASE("external tensor through inflation") {
    auto a = make(Family::sl, 2);
    auto b = make(Family::sl, 3);
    auto sum = std::make_shared<LieAlgebra>(direct_sum(*a, *b));
    auto left = inflate(sum, standard(a), 0);
    auto right = inflate(sum, standard(b), a->dim());
    CHECK(validate_rep(left).ok);
    CHECK(validate_rep(right).ok);
    auto t = tensor(left, right);
    CHECK(t.space_dim == 6);
    CHECK(validate_rep(t).ok);
    // first factor acts as x (x) I, second as I (x) y
    CHECK(t.action[0] == kron(standard(a).action[0], Matrix::identity(3)));
    CHECK(t.action[a->dim()] == kron(Matrix::identity(2), standard(b).action[0]));

    CHECK_THROWS_AS(inflate(sum, standard(a), 1), std::invalid_argument);
}

TEST_CASE("direct sum of modules") {
    auto g = make(Family::sl, 2);
    auto s = standard(g);
    auto d = direct_sum_rep(s, dual(s));
    CHECK(d.space_dim == 4);
    CHECK(validate_rep(d).ok);
}

TEST_CASE("with_center validates commutation") {
    auto g = make(Family::sl, 2);
    auto s = standard(g);
    auto r = with_center(s, {Matrix::identity(2)});
    CHECK(r.algebra->dim() == 4);
    CHECK(validate_rep(r).ok);

    Matrix bad(2, 2);
    bad(0, 1) = 1;
    CHECK_THROWS_WITH(with_center(s, {bad}),
                      Catch::Matchers::ContainsSubstring("fail") &&
                          Catch::Matchers::ContainsSubstring("commute"));

    // two twists that commute with a trivial action but not with each other
    auto t = trivial(g, 2);
    Matrix e01(2, 2), e10(2, 2);
    e01(0, 1) = 1;
    e10(1, 0) = 1;
    CHECK_THROWS_AS(with_center(t, {e01, e10}), std::invalid_argument);
}

TEST_CASE("coadjoint quotient of the nonabelian 2-dim algebra") {
    auto g = two_dim_nonabelian();
    auto co = dual(adjoint(g));
    CHECK(validate_rep(co).ok);

    // span(x*) is invariant, the quotient is the 1-dim module x -> -1
    auto q = quotient_rep(co, {Vec{Rational(1), Rational(0)}});
    CHECK(q.space_dim == 1);
    CHECK(validate_rep(q).ok);
    CHECK(q.action[0](0, 0) == -1);
    CHECK(q.action[1](0, 0) == 0);

    // span(y*) is not invariant and the violation names the witness
    CHECK_THROWS_WITH(quotient_rep(co, {Vec{Rational(0), Rational(1)}}),
                      Catch::Matchers::ContainsSubstring("not invariant") &&
                          Catch::Matchers::ContainsSubstring("e_1"));
}

TEST_CASE("quotient of the adjoint of gl(2) by its center") {
    auto g = make(Family::gl, 2);
    auto ad = adjoint(g);
    Vec center{Rational(1), Rational(0), Rational(0), Rational(1)};
    auto q = quotient_rep(ad, {center});
    CHECK(q.space_dim == 3);
    CHECK(validate_rep(q).ok);
}

TEST_CASE("restriction to a spanned subalgebra") {
    auto g = make(Family::sl, 2);
    auto s = standard(g);
    // basis order E01, E10, H; the borel span is closed
    auto [h, r] = restrict_to_span(s, {Vec{Rational(1), Rational(0), Rational(0)},
                                       Vec{Rational(0), Rational(0), Rational(1)}},
                                   "borel");
    CHECK(h->dim() == 2);
    CHECK(validate_rep(r).ok);
    CHECK(r.action[1](0, 0) == 1);
}
