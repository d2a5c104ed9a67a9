#include <catch2/catch_amalgamated.hpp>

#include "secohom/extensions.hpp"
#include "support.hpp"

using namespace secohom;
using support::K;
using support::Q;

namespace {

Cochain<K> chi_x(const SecondaryComplex<K>& cx) {
    Matrix<K> u(Q, 3, 2);  // u(y) = x
    u.add_to(1, 1, 1);
    return cx.chi(LinearMap<K>{u});
}

// Brute-force associativity of X on basis elements.
bool associative(const FiniteAlgebra<K>& X) {
    for (std::size_t i = 0; i < X.dim(); ++i)
        for (std::size_t j = 0; j < X.dim(); ++j)
            for (std::size_t l = 0; l < X.dim(); ++l) {
                auto lhs = X.multiply(X.multiply(X.basis_vector(i), X.basis_vector(j)), X.basis_vector(l));
                auto rhs = X.multiply(X.basis_vector(i), X.multiply(X.basis_vector(j), X.basis_vector(l)));
                if (!equal(Q, lhs, rhs)) return false;
            }
    return true;
}

}  // namespace

TEST_CASE("trivial extension") {
    auto cx = support::regular(triple_t5(Q));
    auto e = extension_from_cocycle(cx, cx.zero(2));
    CHECK(e.algebra().dim() == 6);
    CHECK(to_dense(Q, e.algebra().unit(), 6) == Vec<K>{1, 0, 0, 0, 0, 0});
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t beta = 0; beta < 2; ++beta)
            CHECK(e.eps().at(r, beta) == (r < 3 ? cx.triple().eps_matrix().at(r, beta) : mpq_class(0)));
    CHECK(cocycle_from_section(cx, e).is_zero());
}

TEST_CASE("extensions from cocycles are valid square-zero extensions") {
    std::mt19937_64 rng(51);
    for (auto t : {triple_t2(Q), triple_t4(Q), triple_t5(Q), triple_matrix(Q)}) {
        auto cx = support::regular(t);
        auto h2 = cx.cohomology(2);
        for (int it = 0; it < 5; ++it) {
            auto c = random_cocycle(cx, h2, rng);
            auto e = extension_from_cocycle(cx, c);
            CHECK(associative(e.algebra()));
            const std::size_t da = t.A().dim();
            for (std::size_t i = da; i < e.algebra().dim(); ++i)
                for (std::size_t j = da; j < e.algebra().dim(); ++j) CHECK(e.algebra().basis_product(i, j).empty());
            CHECK(family_product_consistent(cx, c, e));
            CHECK_NOTHROW(verify_extension(cx, e));
        }
    }
}

TEST_CASE("extension needs a cocycle") {
    std::mt19937_64 rng(52);
    auto cx = support::regular(triple_t5(Q));
    auto c = random_cochain(Q, cx.shape(2), rng);
    REQUIRE_FALSE(cx.is_cocycle(c));
    CHECK_THROWS_AS(extension_from_cocycle(cx, c), PreconditionError);
    CHECK_THROWS_AS(extension_from_cocycle(cx, cx.zero(1)), PreconditionError);
}

TEST_CASE("round trip preserves the class") {
    std::mt19937_64 rng(53);
    for (auto t : {triple_t2(Q), triple_t4(Q), triple_t5(Q)}) {
        auto cx = support::regular(t);
        auto h2 = cx.cohomology(2);
        for (int it = 0; it < 5; ++it) {
            auto c = random_cocycle(cx, h2, rng);
            auto back = cocycle_from_section(cx, extension_from_cocycle(cx, c));
            CHECK(cx.is_cocycle(back));
            CHECK(h2.canonical(back) == h2.canonical(c));
            CHECK(classes_equivalent(cx, back, c).equivalent);
        }
    }
}

TEST_CASE("changing the section changes the cocycle by a coboundary") {
    std::mt19937_64 rng(54);
    for (auto t : {triple_t2(Q), triple_t5(Q)}) {
        auto cx = support::regular(t);
        auto h2 = cx.cohomology(2);
        const std::size_t da = t.A().dim();
        for (int it = 0; it < 5; ++it) {
            auto e = extension_from_cocycle(cx, random_cocycle(cx, h2, rng));
            auto g = random_cochain(Q, cx.shape(1), rng);
            Matrix<K> other = e.section.matrix;
            for (std::size_t i = 0; i < da; ++i)
                for (std::size_t r = 0; r < da; ++r)
                    if (!Q.is_zero(g.data()[i * da + r])) other.add_to(da + r, i, g.data()[i * da + r]);
            auto cs = cocycle_from_section(cx, e);
            auto ct = cocycle_from_section(cx, e, LinearMap<K>{other});
            // s - t = -g as a map A -> M.
            CHECK(cs - ct == cx.delta(-g));
        }
    }
}

TEST_CASE("section must split the projection") {
    auto cx = support::regular(triple_t2(Q));
    auto e = extension_from_cocycle(cx, cx.zero(2));
    CHECK_THROWS_AS(cocycle_from_section(cx, e, LinearMap<K>{Matrix<K>(Q, 4, 2)}), PreconditionError);
}

TEST_CASE("classes_equivalent") {
    std::mt19937_64 rng(55);
    auto cx = support::regular(triple_t5(Q));
    auto h2 = cx.cohomology(2);
    auto c = random_cocycle(cx, h2, rng);
    auto f = random_cochain(Q, cx.shape(1), rng);
    auto shifted = c + cx.delta(f);
    auto eq = classes_equivalent(cx, shifted, c);
    REQUIRE(eq.equivalent);
    REQUIRE(eq.witness);
    CHECK(cx.delta(*eq.witness) == shifted - c);

    auto self = classes_equivalent(cx, c, c);
    CHECK(self.equivalent);
    CHECK(cx.delta(*self.witness).is_zero());

    auto chi = chi_x(cx);
    auto no = classes_equivalent(cx, chi, cx.zero(2));
    CHECK_FALSE(no.equivalent);
    CHECK_FALSE(no.witness);
    CHECK_NOTHROW(extension_from_cocycle(cx, chi));
}

TEST_CASE("key identity") {
    std::mt19937_64 rng(56);
    for (auto t : {triple_t2(Q), triple_t4(Q), triple_t5(Q)}) {
        auto cx = support::regular(t);
        auto h2 = cx.cohomology(2);
        for (int it = 0; it < 5; ++it) CHECK(key_identity_holds(cx, random_cocycle(cx, h2, rng)));
    }
    // Negative control: a random cochain with nonzero B-dependence is not of that form.
    auto cx = support::regular(triple_t5(Q));
    CHECK_FALSE(key_identity_holds(cx, random_cochain(Q, cx.shape(2), rng)));
}

TEST_CASE("first obstruction") {
    std::mt19937_64 rng(57);
    for (auto t : {triple_t2(Q), triple_t5(Q)}) {
        auto cx = support::regular(t);
        auto zero = first_obstruction(cx, cx.zero(2));
        CHECK(zero.value.is_zero());
        CHECK(zero.vanishes);
        auto h2 = cx.cohomology(2);
        for (int it = 0; it < 5; ++it) {
            auto ob = first_obstruction(cx, random_cocycle(cx, h2, rng));
            CHECK(ob.closed);
            CHECK(cx.delta(ob.value).is_zero());
            auto cob = first_obstruction(cx, cx.delta(random_cochain(Q, cx.shape(1), rng)));
            CHECK(cob.vanishes);
        }
    }
}
