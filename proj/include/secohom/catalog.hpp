#pragma once

// Small named algebras and triples used by the tests, the acceptance suite and
// the CLI self-test.

#include <cstddef>
#include <string>
#include <vector>

#include "secohom/algebra.hpp"

namespace secohom {

/// k[x]/(x^n), basis 1, x, ..., x^{n-1}.
template <Field K>
FiniteAlgebra<K> truncated_polynomial(const K& k, std::size_t n, const std::string& var = "x") {
    std::vector<std::string> labels;
    std::vector<Vec<K>> table;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "1" : i == 1 ? var : var + "^" + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec<K> v(n, k.zero());
            if (i + j < n) v[i + j] = k.one();
            table.push_back(std::move(v));
        }
    Vec<K> unit(n, k.zero());
    unit[0] = k.one();
    return validate_algebra(k, n, std::move(labels), table, unit);
}

/// The ground field as a 1-dimensional algebra.
template <Field K>
FiniteAlgebra<K> ground_algebra(const K& k) {
    return truncated_polynomial(k, 1);
}

/// 2x2 matrices, basis E11, E12, E21, E22 (index 2r + c).
template <Field K>
FiniteAlgebra<K> matrix_algebra_2(const K& k) {
    std::vector<Vec<K>> table;
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b) {
            Vec<K> v(4, k.zero());
            if (a % 2 == b / 2) v[2 * (a / 2) + b % 2] = k.one();
            table.push_back(std::move(v));
        }
    Vec<K> unit{k.one(), k.zero(), k.zero(), k.one()};
    return validate_algebra(k, 4, {"E11", "E12", "E21", "E22"}, table, unit);
}

/// eps matrix sending y^j to x^{j*step} in truncated polynomial algebras.
template <Field K>
Matrix<K> power_map(const K& k, std::size_t dim_a, std::size_t dim_b, std::size_t step) {
    Matrix<K> eps(k, dim_a, dim_b);
    for (std::size_t j = 0; j < dim_b; ++j)
        if (j * step < dim_a) eps.add_to(j * step, j, k.one());
    return eps;
}

/// eps : k -> A, the unit inclusion.
template <Field K>
Matrix<K> unit_inclusion(const FiniteAlgebra<K>& A) {
    Matrix<K> eps(A.field(), A.dim(), 1);
    for (const auto& [i, v] : A.unit()) eps.add_to(i, 0, v);
    return eps;
}

/// T2 = (k[x]/(x^2), k, unit).
template <Field K>
Triple<K> triple_t2(const K& k) {
    auto A = truncated_polynomial(k, 2);
    auto eps = unit_inclusion(A);
    return validate_triple(std::move(A), ground_algebra(k), std::move(eps));
}

/// T3 = (k[x]/(x^2), k[x]/(x^2), id).
template <Field K>
Triple<K> triple_t3(const K& k) {
    return validate_triple(truncated_polynomial(k, 2), truncated_polynomial(k, 2), Matrix<K>::identity(k, 2));
}

/// T4 = (k[x]/(x^4), k[y]/(y^2), y -> x^2).
template <Field K>
Triple<K> triple_t4(const K& k) {
    return validate_triple(truncated_polynomial(k, 4), truncated_polynomial(k, 2, "y"), power_map(k, 4, 2, 2));
}

/// T5 = (k[x]/(x^3), k[y]/(y^2), y -> x^2).
template <Field K>
Triple<K> triple_t5(const K& k) {
    return validate_triple(truncated_polynomial(k, 3), truncated_polynomial(k, 2, "y"), power_map(k, 3, 2, 2));
}

/// (M_2(k), k, unit).
template <Field K>
Triple<K> triple_matrix(const K& k) {
    auto A = matrix_algebra_2(k);
    auto eps = unit_inclusion(A);
    return validate_triple(std::move(A), ground_algebra(k), std::move(eps));
}

}  // namespace secohom
