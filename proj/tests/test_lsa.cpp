#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "prehom/lsa.hpp"
#include "prehom/table1.hpp"

using namespace prehom;

namespace {

bool same_structure(const LieAlgebra& a, const LieAlgebra& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < a.dim(); ++k)
                if (a.c(i, j, k) != b.c(i, j, k)) return false;
    return true;
}

bool same_mult(const Lsa& a, const Lsa& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < a.dim(); ++k)
                if (a.m(i, j, k) != b.m(i, j, k)) return false;
    return true;
}

/// xx = -x, xy = 0, yx = -y, yy = 0.
Lsa two_dim_family_example() {
    Lsa a(2, "2-dim with a line of right identities");
    a.m(0, 0, 0) = -1;
    a.m(1, 0, 1) = -1;
    return a;
}

Representation left_mult_rep(std::size_t n) {
    auto g = std::make_shared<LieAlgebra>(construct_classical(Family::gl, n));
    Representation std_rep = standard(g);
    Representation r = tensor(std_rep, trivial(g, n));
    r.label = "gl(" + std::to_string(n) + ") left multiplication";
    return r;
}

Vec vec_of_identity(std::size_t n) {
    Vec v(n * n);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1;
    return v;
}

Table1 load_table() { return Table1::load(std::string(PREHOM_DATA_DIR) + "/table1.json"); }

}  // namespace

TEST_CASE("matrix algebras are left-symmetric with identity right identity") {
    for (std::size_t n : {2, 3}) {
        Lsa a = matrix_lsa(n);
        CHECK(validate_lsa(a).ok);
        CHECK(same_structure(adjacent(a), construct_classical(Family::gl, n)));
        auto ids = right_identities(a);
        REQUIRE(ids.exists);
        CHECK(ids.unique());
        CHECK(ids.particular == vec_of_identity(n));
    }
}

TEST_CASE("table 1 loads under a validated orientation") {
    Table1 t = load_table();
    CHECK((t.convention() == "columns" || t.convention() == "rows"));

    std::vector<Lsa> algebras = {t.a1(), t.a2(), t.a3(Rational(2)),
                                 t.a3(Rational(1) / 2), t.a3(Rational(3))};
    for (const auto& a : algebras) {
        INFO(a.name());
        CHECK(validate_lsa(a).ok);
        CHECK(same_structure(adjacent(a), Table1::expected_adjacent()));
        auto ids = right_identities(a);
        REQUIRE(ids.exists);
        CHECK(ids.unique());
        for (std::size_t i = 0; i < 4; ++i)
            CHECK(a.product(unit_vec(4, i), ids.particular) == unit_vec(4, i));
    }

    SECTION("the first algebra has right identity -C") {
        auto ids = right_identities(t.a1());
        Vec minus_c(4);
        minus_c[3] = -1;
        CHECK(ids.particular == minus_c);
    }

    SECTION("the pole is rejected") {
        CHECK_THROWS_AS(t.a3(Rational(-1)), std::domain_error);
    }
}

TEST_CASE("a flipped sign in the first operator breaks left-symmetry") {
    Table1 t = load_table();
    Lsa broken = t.a1();
    REQUIRE(!is_zero(broken.m(0, 0, 0)));
    broken.m(0, 0, 0) = -broken.m(0, 0, 0);
    auto v = validate_lsa(broken);
    CHECK_FALSE(v.ok);
    CHECK_FALSE(v.violations.empty());
}

TEST_CASE("right identity solution sets") {
    SECTION("two dimensional example has a one-parameter family") {
        Lsa a = two_dim_family_example();
        REQUIRE(validate_lsa(a).ok);
        auto ids = right_identities(a);
        REQUIRE(ids.exists);
        CHECK_FALSE(ids.unique());
        REQUIRE(ids.kernel.size() == 1);
        CHECK(is_zero(ids.kernel[0][0]));
        CHECK(!is_zero(ids.kernel[0][1]));
        CHECK(ids.particular[0] == Rational(-1));
        for (int k : {-2, 0, 5}) {
            Vec e = vec_add(ids.particular, vec_scale(Rational(k), ids.kernel[0]));
            for (std::size_t i = 0; i < 2; ++i)
                CHECK(a.product(unit_vec(2, i), e) == unit_vec(2, i));
        }
    }

    SECTION("an algebra without right identity") {
        Lsa a(1, "null product line");
        auto ids = right_identities(a);
        CHECK_FALSE(ids.exists);
    }
}

TEST_CASE("left regular representation is a module exactly when left-symmetric") {
    Table1 t = load_table();
    for (const Lsa& a : {t.a1(), t.a2(), matrix_lsa(2)}) {
        Representation r = left_regular_rep(a);
        CHECK(validate_rep(r).ok);
    }

    Lsa broken = t.a1();
    broken.m(0, 0, 0) = -broken.m(0, 0, 0);
    CHECK_THROWS_AS(left_regular_rep(broken), std::invalid_argument);
    Representation manual;
    manual.algebra = std::make_shared<LieAlgebra>(adjacent(broken));
    manual.space_dim = broken.dim();
    manual.label = "manual left action";
    for (std::size_t i = 0; i < broken.dim(); ++i) manual.action.push_back(broken.left_matrix(i));
    CHECK(validate_lsa(broken).ok == validate_rep(manual).ok);
    CHECK_FALSE(validate_rep(manual).ok);
}

TEST_CASE("left multiplication module recovers the matrix product") {
    for (std::size_t n : {2, 3}) {
        Representation r = left_mult_rep(n);
        Vec v = vec_of_identity(n);
        auto out = lsa_from_cuspidal(r, v);
        CHECK(same_mult(out.lsa, matrix_lsa(n)));
        CHECK(out.identity == vec_of_identity(n));
        CHECK(validate_lsa(out.lsa).ok);
        CHECK(same_structure(adjacent(out.lsa), *r.algebra));
    }
}

TEST_CASE("binary cubics under gl(2) carry a left-symmetric product") {
    auto g = std::make_shared<LieAlgebra>(construct_classical(Family::gl, 2));
    Representation cubics = sym_cube(standard(g));
    auto found = find_generic_point(cubics, {});
    REQUIRE(found);
    REQUIRE(found->second.isotropy_dim == 0);
    auto out = lsa_from_cuspidal(cubics, found->first);
    CHECK(validate_lsa(out.lsa).ok);
    CHECK(same_structure(adjacent(out.lsa), *g));
    auto ids = right_identities(out.lsa);
    REQUIRE(ids.exists);
    CHECK(ids.unique());
    CHECK(out.identity == ids.particular);
}

TEST_CASE("degenerate inputs to the cuspidal transfer are rejected") {
    auto g = std::make_shared<LieAlgebra>(construct_classical(Family::sl, 2));
    CHECK_THROWS_AS(lsa_from_cuspidal(trivial(g, 0), Vec{}), std::invalid_argument);
    CHECK_THROWS_AS(lsa_from_cuspidal(adjoint(g), Vec(3)), std::invalid_argument);
    Representation adj = adjoint(g);
    Vec h(3);
    h[2] = 1;
    CHECK_THROWS_AS(lsa_from_cuspidal(adj, h), std::invalid_argument);
}

TEST_CASE("round trip through the left regular module at the right identity") {
    Table1 t = load_table();
    std::vector<Lsa> suite = {t.a1(), t.a2(), t.a3(Rational(2)), matrix_lsa(2), matrix_lsa(3)};
    for (const auto& a : suite) {
        INFO(a.name());
        auto ids = right_identities(a);
        REQUIRE(ids.exists);
        auto back = lsa_from_cuspidal(left_regular_rep(a), ids.particular);
        CHECK(same_mult(back.lsa, a));
        CHECK(back.identity == ids.particular);
    }
}

TEST_CASE("isomorphism witnesses within the default candidate family") {
    Table1 t = load_table();

    SECTION("identical algebras") {
        auto w = lsa_isomorphic(t.a2(), t.a2());
        REQUIRE(w);
    }

    SECTION("reciprocal parameters are isomorphic") {
        Lsa a = t.a3(Rational(2));
        Lsa b = t.a3(Rational(1) / 2);
        auto w = lsa_isomorphic(a, b);
        REQUIRE(w);
        REQUIRE(rank(*w) == 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) {
                Vec lhs = *w * a.product_basis(i, j);
                Vec rhs = b.product(*w * unit_vec(4, i), *w * unit_vec(4, j));
                CHECK(lhs == rhs);
            }
    }

    SECTION("no witness between the first two algebras") {
        CHECK_FALSE(lsa_isomorphic(t.a1(), t.a2()));
    }

    SECTION("dimension mismatch") {
        CHECK_FALSE(lsa_isomorphic(t.a1(), matrix_lsa(3)));
    }
}

TEST_CASE("reduction against the semisimple part") {
    std::vector<Vec> sl2_in_gl2 = {Vec{1, 0, 0, -1}, Vec{0, 1, 0, 0}, Vec{0, 0, 1, 0}};

    SECTION("matrix algebra is already reduced") {
        auto split = reduced_split(matrix_lsa(2), sl2_in_gl2);
        CHECK(split.status == ReducedSplit::Status::Reduced);
        CHECK(split.fixed_dim == 0);
    }

    SECTION("table 1 algebras are reduced") {
        Table1 t = load_table();
        std::vector<Vec> sl2 = {unit_vec(4, 0), unit_vec(4, 1), unit_vec(4, 2)};
        for (const Lsa& a : {t.a1(), t.a2(), t.a3(Rational(2))}) {
            INFO(a.name());
            auto split = reduced_split(a, sl2);
            CHECK(split.status == ReducedSplit::Status::Reduced);
        }
    }

    SECTION("a synthetic sum splits into its summands") {
        Lsa line(1, "idempotent line");
        line.m(0, 0, 0) = 1;
        Lsa sum = direct_sum_lsa(matrix_lsa(2), line);
        std::vector<Vec> sl2;
        for (const auto& v : sl2_in_gl2) {
            Vec ext = v;
            ext.push_back(Rational(0));
            sl2.push_back(ext);
        }
        auto split = reduced_split(sum, sl2);
        REQUIRE(split.status == ReducedSplit::Status::Split);
        CHECK(split.fixed_dim == 1);
        REQUIRE(split.g1_basis.size() == 4);
        REQUIRE(split.c1_basis.size() == 1);
        CHECK(validate_lsa(split.g1).ok);
        CHECK(right_identities(split.g1).unique());
        CHECK(split.c1.m(0, 0, 0) == Rational(1));
    }

    SECTION("a non-split instance is reported") {
        Lsa a = two_dim_family_example();
        auto split = reduced_split(a, {unit_vec(2, 0)});
        CHECK(split.status == ReducedSplit::Status::NotApplicable);
        CHECK_FALSE(split.failure.empty());
    }
}

TEST_CASE("derived subalgebra of the commutator algebra is proper") {
    Table1 t = load_table();
    std::vector<Lsa> suite = {t.a1(),        t.a2(),        t.a3(Rational(2)),
                              t.a3(Rational(1) / 2),        t.a3(Rational(3)),
                              matrix_lsa(2), matrix_lsa(3), two_dim_family_example()};
    for (const auto& a : suite) {
        INFO(a.name());
        REQUIRE(validate_lsa(a).ok);
        CHECK(derived_subalgebra_dim(adjacent(a)) < a.dim());
    }
}

TEST_CASE("mult tensors serialize exactly") {
    Table1 t = load_table();
    Lsa a = t.a2();
    auto j = lsa_to_json(a);
    Lsa back = lsa_from_json(j);
    CHECK(back.name() == a.name());
    CHECK(same_mult(back, a));
}

TEST_CASE("fixed space of a span of left multipliers") {
    Lsa a = matrix_lsa(2);
    auto fixed = lsa_fixed_space(a, {unit_vec(4, 1)});
    CHECK(fixed.size() == 2);
    for (const auto& v : fixed) CHECK(is_zero_vec(a.product(unit_vec(4, 1), v)));
}
