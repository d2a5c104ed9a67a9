#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"
#include "secohom/catalog.hpp"
#include "secohom/tensor.hpp"
#include "support.hpp"

using namespace secohom;
using support::K;
using support::Q;

namespace {

FiniteAlgebra<K> algebra2(std::vector<Vec<K>> table, Vec<K> unit = {1, 0}) {
    return validate_algebra(Q, 2, {"e0", "e1"}, std::move(table), std::move(unit));
}

std::string validation_message(const std::function<void()>& body) {
    try {
        body();
    } catch (const ValidationError& e) {
        return e.what();
    }
    return "";
}

// Left and right multiplication matrices of A on itself.
std::pair<std::vector<Matrix<K>>, std::vector<Matrix<K>>> regular_actions(const FiniteAlgebra<K>& A) {
    std::vector<Matrix<K>> left, right;
    for (std::size_t i = 0; i < A.dim(); ++i) {
        Matrix<K> l(Q, A.dim(), A.dim()), r(Q, A.dim(), A.dim());
        for (std::size_t s = 0; s < A.dim(); ++s) {
            for (const auto& [row, v] : A.basis_product(i, s)) l.add_to(row, s, v);
            for (const auto& [row, v] : A.basis_product(s, i)) r.add_to(row, s, v);
        }
        left.push_back(l);
        right.push_back(r);
    }
    return {left, right};
}

}  // namespace

TEST_CASE("small algebras validate") {
    CHECK(validate_algebra(Q, 1, {"1"}, {{1}}, {1}).dim() == 1);
    auto dual = algebra2({{1, 0}, {0, 1}, {0, 1}, {0, 0}});
    CHECK(dual.is_commutative());
    CHECK(dual.multiply(Vec<K>{0, 1}, Vec<K>{0, 1}) == Vec<K>{0, 0});
}

TEST_CASE("non-associative table is rejected") {
    // e0 e0 = e1, e1 e0 = e0: (e0 e0) e0 = e0 but e0 (e0 e0) = 0.
    auto msg = validation_message([] { algebra2({{0, 1}, {0, 0}, {1, 0}, {0, 0}}); });
    CHECK(msg.find("non-associative") != std::string::npos);
}

TEST_CASE("wrong unit is rejected") {
    auto msg = validation_message([] { algebra2({{1, 0}, {0, 1}, {0, 1}, {0, 0}}, {0, 1}); });
    CHECK(msg.find("unit") != std::string::npos);
    CHECK_THROWS_AS(algebra2({{1, 0}, {0, 1}, {0, 1}}), ParseError);
}

TEST_CASE("catalog triples validate") {
    for (const auto& [name, t] : support::all_triples()) {
        INFO(name);
        CHECK(t.A().dim() > 0);
        CHECK(equal(Q, t.eps(t.B().unit()), t.A().unit()));
    }
}

TEST_CASE("eps must be multiplicative") {
    // y -> x in k[x]/(x^3): x^2 != eps(y^2) = 0.
    auto msg = validation_message([] {
        validate_triple(truncated_polynomial(Q, 3), truncated_polynomial(Q, 2, "y"), power_map(Q, 3, 2, 1));
    });
    CHECK(msg.find("ε not multiplicative") != std::string::npos);
}

TEST_CASE("eps image must be central") {
    // 2x2 matrices with y -> E12.
    Matrix<K> eps(Q, 4, 2);
    eps.add_to(0, 0, 1);
    eps.add_to(3, 0, 1);
    eps.add_to(1, 1, 1);
    auto msg = validation_message([&] { validate_triple(matrix_algebra_2(Q), truncated_polynomial(Q, 2, "y"), eps); });
    CHECK(msg.find("image not central") != std::string::npos);
}

TEST_CASE("bimodule validation") {
    auto t = triple_matrix(Q);
    auto [left, right] = regular_actions(t.A());
    CHECK(validate_bimodule(t, 4, left, right).dim() == 4);
    // Right action replaced by left multiplication: not a right module for noncommutative A.
    CHECK_THROWS_AS(validate_bimodule(t, 4, left, left), ValidationError);
    // The zero module is valid.
    std::vector<Matrix<K>> zero(4, Matrix<K>(Q, 0, 0));
    CHECK(validate_bimodule(t, 0, zero, zero).dim() == 0);
}

TEST_CASE("eps-centrality of a module is enforced") {
    // T3 (eps = id) with the right action twisted by x -> -x.
    auto t = triple_t3(Q);
    auto [left, right] = regular_actions(t.A());
    right[1] = Matrix<K>(Q, 2, 2);
    right[1].add_to(1, 0, -1);
    auto msg = validation_message([&] { validate_bimodule(t, 2, left, right); });
    CHECK(msg.find("ε-centrality") != std::string::npos);
}

TEST_CASE("invariant submodule is the centre for M = A") {
    for (const auto& [name, t] : support::all_triples()) {
        INFO(name);
        const auto& A = t.A();
        // Brute-force centre: z with z e_i = e_i z for all i.
        oracle::Dense constraints;
        for (std::size_t i = 0; i < A.dim(); ++i)
            for (std::size_t r = 0; r < A.dim(); ++r) {
                std::vector<mpq_class> row(A.dim(), 0);
                for (std::size_t s = 0; s < A.dim(); ++s) {
                    row[s] += sparse_at(Q, A.basis_product(s, i), static_cast<std::uint32_t>(r));
                    row[s] -= sparse_at(Q, A.basis_product(i, s), static_cast<std::uint32_t>(r));
                }
                constraints.push_back(row);
            }
        CHECK(invariant_submodule(t, regular_bimodule(t)).dim() == A.dim() - oracle::rank(constraints));
    }
    auto m2 = triple_matrix(Q);
    auto centre = invariant_submodule(m2, regular_bimodule(m2));
    CHECK(centre.dim() == 1);
    CHECK(centre.contains(Vec<K>{1, 0, 0, 1}));
    auto t2 = triple_t2(Q);
    CHECK(invariant_submodule(t2, regular_bimodule(t2)).dim() == 2);
}

TEST_CASE("derivation spaces") {
    auto t2 = triple_t2(Q), t3 = triple_t3(Q), t5 = triple_t5(Q), m2 = triple_matrix(Q);
    CHECK(derivation_space(t3, regular_bimodule(t3), DerivationKind::BLinear).dim() == 0);
    CHECK(derivation_space(t2, regular_bimodule(t2), DerivationKind::All).dim() == 1);
    CHECK(derivation_space(t5, regular_bimodule(t5), DerivationKind::OnB).dim() == 2);
    CHECK(derivation_space(t2, regular_bimodule(t2), DerivationKind::Inner).dim() == 0);
    // Inner derivations of M_2 are ad(a) modulo the centre.
    CHECK(derivation_space(m2, regular_bimodule(m2), DerivationKind::Inner).dim() == 3);
    CHECK(derivation_space(m2, regular_bimodule(m2), DerivationKind::All).dim() == 3);
}

TEST_CASE("pullback of derivations") {
    auto t5 = triple_t5(Q);
    auto M = regular_bimodule(t5);
    Matrix<K> w(Q, 3, 3);  // w(1) = 0, w(x) = x, w(x^2) = 2x^2
    w.add_to(1, 1, 1);
    w.add_to(2, 2, 2);
    auto u = pullback_derivation(t5, M, LinearMap<K>{w});
    CHECK(u.matrix.dense() == std::vector<Vec<K>>{{0, 0}, {0, 0}, {0, 2}});
    CHECK(pullback_derivation(t5, M, LinearMap<K>{Matrix<K>(Q, 3, 3)}).matrix.is_zero());
    CHECK(pullback_image(t5, M).dim() == 1);

    auto t3 = triple_t3(Q);
    auto M3 = regular_bimodule(t3);
    for (const auto& d : derivation_space(t3, M3, DerivationKind::All).dense_basis()) {
        auto map = LinearMap<K>::unflatten(Q, d, 2, 2);
        CHECK(pullback_derivation(t3, M3, map).flatten() == d);
    }
}

TEST_CASE("tensor codec") {
    TensorCodec c1(1, 3, 2);
    CHECK(c1.encode({{0}, {}}) == 0);
    TensorCodec c2(2, 2, 2);
    CHECK(c2.encode({{1, 0}, {1}}) == 5);
    for (std::size_t n = 0; n <= 3; ++n)
        for (std::size_t da = 1; da <= 3; ++da)
            for (std::size_t db = 1; db <= 3; ++db) {
                TensorCodec c(n, da, db);
                oracle::Layout layout{n, da, db};
                REQUIRE(c.count() == layout.count());
                for (std::uint64_t o = 0; o < c.count(); ++o) {
                    auto t = c.decode(o);
                    CHECK(c.encode(t) == o);
                    // Same ordering as the naive layout.
                    auto ref = layout.tensor(o);
                    for (std::size_t i = 0; i < n; ++i) CHECK(t.diag[i] == ref.a[i]);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = i + 1; j < n; ++j) CHECK(pair_at(t, i, j) == ref.b[i][j]);
                }
            }
    CHECK_THROWS_AS(c2.encode({{2, 0}, {0}}), PreconditionError);
}
