#include <catch2/catch_amalgamated.hpp>

#include "identities.hpp"
#include "support.hpp"

using namespace secohom;
using support::K;
using support::Q;

TEST_CASE("unit and identity cochains") {
    std::mt19937_64 rng(31);
    for (auto t : {triple_t2(Q), triple_t5(Q)}) {
        auto cx = support::regular(t);
        auto one = unit_cochain(cx);
        auto id = identity_cochain(cx);
        for (std::size_t n = 0; n <= 2; ++n) {
            auto g = random_cochain(Q, cx.shape(n), rng);
            CHECK(cup(cx, one, g) == g);
            CHECK(cup(cx, g, one) == g);
            CHECK(comp_i(cx, id, g, 0) == g);
        }
        CHECK(cup(cx, id, id) == pi_cochain(cx));
        CHECK(pi_cochain(cx) == cx.delta(id));
    }
}

TEST_CASE("pi is associative and squares to zero") {
    for (auto t : {triple_t2(Q), triple_t5(Q), triple_matrix(Q)}) {
        auto cx = support::regular(t);
        auto pi = pi_cochain(cx);
        CHECK(comp_i(cx, pi, pi, 0) == comp_i(cx, pi, pi, 1));
        CHECK(circle(cx, pi, pi).is_zero());
        CHECK(bracket(cx, pi, pi).is_zero());
        CHECK(cup(cx, pi, pi) == comp_i(cx, comp_i(cx, pi, pi, 0), pi, 2));
    }
}

TEST_CASE("pi for B = k is the multiplication of A") {
    auto t = triple_matrix(Q);
    auto cx = support::regular(t);
    auto pi = pi_cochain(cx);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(pi.value(TensorIndex{{std::uint32_t(i), std::uint32_t(j)}, {0}}) == to_dense(Q, t.A().multiply(t.A().basis_vector(i), t.A().basis_vector(j)), 4));
}

TEST_CASE("insertion of a 0-cochain") {
    std::mt19937_64 rng(32);
    auto cx = support::regular(triple_t5(Q));
    auto f = random_cochain(Q, cx.shape(2), rng);
    auto inserted = comp_i(cx, f, unit_cochain(cx), 0);
    REQUIRE(inserted.degree() == 1);
    for (std::uint32_t a = 0; a < 3; ++a) CHECK(inserted.value(TensorIndex{{a}, {}}) == f.value(TensorIndex{{0, a}, {0}}));
}

TEST_CASE("circle product and bracket bookkeeping") {
    std::mt19937_64 rng(33);
    auto cx = support::regular(triple_t5(Q));
    auto R = [&](std::size_t d) { return random_cochain(Q, cx.shape(d), rng); };
    auto f = R(1), g = R(2);
    CHECK(circle(cx, f, g) == comp_i(cx, f, g, 0));

    auto f1 = R(2), f2 = R(2), g1 = R(1), g2 = R(1);
    const mpq_class two(2);
    CHECK(circle(cx, f1 + two * f2, g1) == circle(cx, f1, g1) + two * circle(cx, f2, g1));
    CHECK(circle(cx, f1, g1 - g2) == circle(cx, f1, g1) - circle(cx, f1, g2));

    auto e = R(2);
    CHECK(bracket(cx, e, e) == two * circle(cx, e, e));
    auto o = R(1);
    CHECK(bracket(cx, o, o).is_zero());

    CHECK_THROWS_AS(comp_i(cx, f, g, 1), PreconditionError);
    CHECK_THROWS_AS(circle(cx, R(0), R(0)), PreconditionError);
}

TEST_CASE("operations need coefficients in A") {
    auto t = triple_t2(Q);
    std::vector<Matrix<K>> zero(2, Matrix<K>(Q, 0, 0));
    SecondaryComplex<K> cx(t, validate_bimodule(t, 0, zero, zero));
    CHECK_THROWS_AS(pi_cochain(cx), PreconditionError);
    CHECK_THROWS_AS(cup(cx, cx.zero(1), cx.zero(1)), PreconditionError);
}

TEST_CASE("Gerstenhaber identities on sampled tuples") {
    std::mt19937_64 rng(34);
    for (auto t : {triple_t2(Q), triple_t5(Q)}) {
        auto cx = support::regular(t);
        for (const auto& tally : identities::gerstenhaber_suite(cx, 12, rng)) {
            INFO(tally.name);
            CHECK(tally.tuples == 12);
            CHECK(tally.failures == 0);
        }
    }
}
