#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracle.hpp"
#include "secohom/linalg.hpp"

using namespace secohom;
using K = RationalField;

namespace {

Matrix<K> random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int density_pct = 40) {
    std::uniform_int_distribution<int> coin(0, 99), val(-4, 4);
    std::vector<Vec<K>> dense(rows, Vec<K>(cols, 0));
    for (auto& row : dense)
        for (auto& x : row)
            if (coin(rng) < density_pct) {
                x = mpq_class(val(rng), 1 + coin(rng) % 3);
                x.canonicalize();
            }
    return Matrix<K>::from_dense(K{}, dense, cols);
}

// A rows x cols matrix of rank at most r, as a product of random factors.
Matrix<K> low_rank(std::size_t rows, std::size_t cols, std::size_t r, std::mt19937_64& rng) {
    return random_matrix(rows, r, rng, 70) * random_matrix(r, cols, rng, 70);
}

}  // namespace

TEST_CASE("rational field arithmetic and canonical strings") {
    K Q;
    CHECK(Q.to_string(Q.parse("3/6")) == "1/2");
    CHECK(Q.to_string(Q.parse("-4/2")) == "-2");
    CHECK(Q.to_string(Q.inv(Q.parse("-2/3"))) == "-3/2");
    CHECK_THROWS_AS(Q.inv(Q.zero()), PreconditionError);
    CHECK_THROWS_AS(Q.parse("1/0"), ParseError);
    CHECK_THROWS_AS(Q.parse("abc"), ParseError);
}

TEST_CASE("prime field arithmetic") {
    PrimeField F(7);
    CHECK(F.parse("1/2") == 4);
    CHECK(F.mul(F.inv(3), 3) == 1);
    CHECK(F.from_int(-1) == 6);
    CHECK(F.reduce(mpq_class(-3, 5)) == F.mul(F.from_int(-3), F.inv(5)));
    CHECK_THROWS(PrimeField(8));
    CHECK(PrimeField::is_prime(2147483647));
    CHECK_FALSE(PrimeField::is_prime(1));
}

TEST_CASE("rank of trivial matrices") {
    K Q;
    CHECK(rank(Matrix<K>::identity(Q, 3)) == 3);
    CHECK(rank(Matrix<K>(Q, 4, 2)) == 0);
    CHECK(nullspace(Matrix<K>::identity(Q, 4)).dim() == 0);
    CHECK(nullspace(Matrix<K>(Q, 3, 3)).dim() == 3);
}

TEST_CASE("rank agrees with schoolbook elimination") {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 60; ++it) {
        std::size_t rows = 1 + rng() % 12, cols = 1 + rng() % 12, r = 1 + rng() % 6;
        auto m = it % 2 ? random_matrix(rows, cols, rng, 10 + it) : low_rank(rows, cols, r, rng);
        const auto expected = oracle::rank(oracle::dense(m));
        CHECK(rank(m) == expected);
        CHECK(sparse_rank(m) == expected);
        CHECK(detail::dense_rank(m) == expected);
    }
}

TEST_CASE("rank-nullity and nullspace correctness") {
    std::mt19937_64 rng(12);
    for (int it = 0; it < 50; ++it) {
        auto m = low_rank(1 + rng() % 10, 1 + rng() % 10, 1 + rng() % 5, rng);
        auto ker = nullspace(m);
        CHECK(rank(m) + ker.dim() == m.cols());
        for (const auto& v : ker.dense_basis()) CHECK(is_zero(K{}, m.apply(v)));
    }
}

TEST_CASE("column space has dimension rank") {
    std::mt19937_64 rng(13);
    for (int it = 0; it < 20; ++it) {
        auto m = low_rank(8, 6, 3, rng);
        auto cs = column_space(m);
        CHECK(cs.dim() == rank(m));
        for (std::size_t c = 0; c < m.cols(); ++c) {
            Vec<K> e(m.cols(), 0);
            e[c] = 1;
            CHECK(cs.contains(m.apply(e)));
        }
    }
}

TEST_CASE("solve") {
    K Q;
    Vec<K> b{1, 2, 3};
    auto x = solve(Matrix<K>::identity(Q, 3), b);
    REQUIRE(x);
    CHECK(*x == b);
    CHECK_FALSE(solve(Matrix<K>(Q, 3, 3), b));

    std::mt19937_64 rng(14);
    for (int it = 0; it < 40; ++it) {
        auto m = low_rank(7, 5, 3, rng);
        auto y = random_matrix(5, 1, rng, 80).transpose().dense()[0];
        auto rhs = m.apply(y);
        auto sol = solve(m, rhs);
        REQUIRE(sol);
        CHECK(m.apply(*sol) == rhs);
        // A vector outside the column space has no preimage.
        const auto cs = column_space(m);
        for (std::size_t i = 0; i < 7; ++i) {
            Vec<K> e(7, 0);
            e[i] = 1;
            if (!cs.contains(e)) {
                CHECK_FALSE(solve(m, e));
                break;
            }
        }
    }
}

TEST_CASE("quotient dimension") {
    K Q;
    auto full = Subspace<K>::full(Q, 5);
    CHECK(quotient_dim(full, full) == 0);
    CHECK(quotient_dim(full, Subspace<K>(Q, 5)) == 5);
}

TEST_CASE("subspace membership, sums and canonical reduction") {
    K Q;
    auto s = Subspace<K>::span_dense(Q, 3, {{1, 1, 0}, {0, 1, 1}});
    CHECK(s.dim() == 2);
    CHECK(s.contains(Vec<K>{1, 0, -1}));
    CHECK_FALSE(s.contains(Vec<K>{1, 0, 0}));
    auto t = Subspace<K>::span_dense(Q, 3, {{1, 0, -1}, {2, 1, -1}});
    CHECK(s == t);
    auto u = Subspace<K>::span_dense(Q, 3, {{0, 0, 1}});
    CHECK((s + u).dim() == 3);
    // Elements in the same coset reduce to the same normal form.
    auto a = to_sparse(Q, Vec<K>{5, 2, 7});
    auto b = to_sparse(Q, Vec<K>{6, 2, 6});
    CHECK(s.reduce(a) == s.reduce(b));
}

TEST_CASE("dense fallback agrees with sparse elimination on filled matrices") {
    std::mt19937_64 rng(15);
    for (int it = 0; it < 10; ++it) {
        auto m = low_rank(30, 25, 4 + it, rng);
        CHECK(m.fill() > kDenseFillThreshold);
        CHECK(detail::dense_rank(m) == sparse_rank(m));
    }
}

TEST_CASE("rational results reduce to prime field results") {
    std::mt19937_64 rng(16);
    PrimeField F(1000003);
    for (int it = 0; it < 30; ++it) {
        auto m = low_rank(6, 6, 1 + it % 5, rng);
        std::vector<Vec<PrimeField>> rows;
        for (const auto& row : m.dense()) {
            Vec<PrimeField> r;
            for (const auto& x : row) r.push_back(F.reduce(x));
            rows.push_back(r);
        }
        auto mp = Matrix<PrimeField>::from_dense(F, rows, 6);
        // Generic large prime: the rank is preserved.
        CHECK(rank(mp) == rank(m));
        // Every rational kernel vector reduces to a kernel vector mod p.
        for (const auto& v : nullspace(m).dense_basis()) {
            Vec<PrimeField> vp;
            for (const auto& x : v) vp.push_back(F.reduce(x));
            CHECK(is_zero(F, mp.apply(vp)));
        }
    }
}

TEST_CASE("matrix product and transpose") {
    std::mt19937_64 rng(17);
    auto a = random_matrix(4, 5, rng), b = random_matrix(5, 3, rng);
    CHECK(oracle::dense(a * b) == oracle::multiply(oracle::dense(a), oracle::dense(b), 5, 3));
    CHECK(oracle::dense((a * b).transpose()) == oracle::dense(b.transpose() * a.transpose()));
}
