#pragma once

// Cup product, insertions, circle product and bracket on secondary cochains
// with coefficients in A.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secohom/complex.hpp"

namespace secohom {

template <Field K>
bool is_regular(const Triple<K>& t, const Bimodule<K>& M) {
    if (M.dim() != t.A().dim()) return false;
    auto reg = regular_bimodule(t);
    for (std::size_t i = 0; i < t.A().dim(); ++i)
        if (!detail::same(M.left(i), reg.left(i)) || !detail::same(M.right(i), reg.right(i))) return false;
    return true;
}

template <Field K>
void require_a_coefficients(const SecondaryComplex<K>& cx) {
    if (!is_regular(cx.triple(), cx.module())) throw PreconditionError("coefficients must be A");
}

/// The 0-cochain with value 1_A.
template <Field K>
Cochain<K> unit_cochain(const SecondaryComplex<K>& cx) {
    require_a_coefficients(cx);
    Cochain<K> f = cx.zero(0);
    f.set_value(0, to_dense(cx.field(), cx.triple().A().unit(), cx.triple().A().dim()));
    return f;
}

/// pi(a (x) b (x) alpha) = a b eps(alpha)
template <Field K>
Cochain<K> pi_cochain(const SecondaryComplex<K>& cx) {
    require_a_coefficients(cx);
    const auto& t = cx.triple();
    const auto& A = t.A();
    Cochain<K> f = cx.zero(2);
    const auto c = cx.codec(2);
    for (std::uint64_t o = 0; o < c.count(); ++o) {
        const auto T = c.decode(o);
        auto v = A.multiply_basis_right(A.multiply_basis_left(T.diag[0], t.eps_basis(T.pairs[0])), T.diag[1]);
        f.set_value(o, to_dense(cx.field(), v, A.dim()));
    }
    return f;
}

/// (f cup g)(T) = f(T^0_m) eps(prod_{i<=m<j} b_ij) g(T^m_{m+n})
template <Field K>
Cochain<K> cup(const SecondaryComplex<K>& cx, const Cochain<K>& f, const Cochain<K>& g) {
    require_a_coefficients(cx);
    cx.require_compatible(f);
    cx.require_compatible(g);
    const std::size_t m = f.degree(), n = g.degree();
    const auto& t = cx.triple();
    const auto& A = t.A();
    const K& k = cx.field();
    Cochain<K> out = cx.zero(m + n);
    const auto c = cx.codec(m + n), cf = cx.codec(m), cg = cx.codec(n);
    std::vector<std::uint32_t> factors;
    for (std::uint64_t o = 0; o < c.count(); ++o) {
        const auto T = c.decode(o);
        factors.clear();
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = m; j < m + n; ++j) factors.push_back(pair_at(T, i, j));
        auto left = to_sparse(k, f.value(cf.encode(sub_tensor(T, 0, m))));
        if (left.empty()) continue;
        auto right = to_sparse(k, g.value(cg.encode(sub_tensor(T, m, m + n))));
        if (right.empty()) continue;
        auto mid = t.eps(basis_product(t.B(), std::span<const std::uint32_t>(factors)));
        out.set_value(o, to_dense(k, A.multiply(A.multiply(left, mid), right), A.dim()));
    }
    return out;
}

/// f o_i g: g evaluated on the block of positions i..i+n-1 and inserted at slot i of f.
template <Field K>
Cochain<K> comp_i(const SecondaryComplex<K>& cx, const Cochain<K>& f, const Cochain<K>& g, std::size_t i) {
    require_a_coefficients(cx);
    cx.require_compatible(f);
    cx.require_compatible(g);
    const std::size_t m = f.degree(), n = g.degree();
    if (i >= m)
        throw PreconditionError("insertion index " + std::to_string(i) + " out of range for degree " + std::to_string(m));
    const std::size_t d = m + n - 1;
    const K& k = cx.field();
    const auto& A = cx.triple().A();
    Cochain<K> out = cx.zero(d);
    const auto c = cx.codec(d), cg = cx.codec(n);
    std::vector<std::pair<std::size_t, std::size_t>> blocks;
    for (std::size_t u = 0; u < i; ++u) blocks.emplace_back(u, u + 1);
    blocks.emplace_back(i, i + n);
    for (std::size_t u = i + n; u < d; ++u) blocks.emplace_back(u, u + 1);
    for (std::uint64_t o = 0; o < c.count(); ++o) {
        const auto T = c.decode(o);
        auto inner = to_sparse(k, g.value(cg.encode(sub_tensor(T, i, i + n))));
        if (inner.empty()) continue;
        std::vector<SparseVec<K>> values;
        for (std::size_t u = 0; u < blocks.size(); ++u)
            values.push_back(u == i ? inner : A.basis_vector(T.diag[blocks[u].first]));
        out.set_value(o, f.evaluate(collapse(cx.triple().B(), T, blocks, std::move(values))));
    }
    return out;
}

/// f o g = sum_{i<m} (-1)^{(n-1) i} f o_i g
template <Field K>
Cochain<K> circle(const SecondaryComplex<K>& cx, const Cochain<K>& f, const Cochain<K>& g) {
    const std::size_t m = f.degree(), n = g.degree();
    if (m + n == 0) throw PreconditionError("circle product of two 0-cochains has degree -1");
    require_a_coefficients(cx);
    Cochain<K> out = cx.zero(m + n - 1);
    for (std::size_t i = 0; i < m; ++i) {
        auto term = comp_i(cx, f, g, i);
        if (((static_cast<long>(n) - 1) * static_cast<long>(i)) % 2 != 0) out -= term;
        else out += term;
    }
    return out;
}

/// [f, g] = f o g - (-1)^{(m-1)(n-1)} g o f
template <Field K>
Cochain<K> bracket(const SecondaryComplex<K>& cx, const Cochain<K>& f, const Cochain<K>& g) {
    const long m = static_cast<long>(f.degree()), n = static_cast<long>(g.degree());
    auto out = circle(cx, f, g);
    auto other = circle(cx, g, f);
    if (((m - 1) * (n - 1)) % 2 == 0) out -= other;
    else out += other;
    return out;
}

/// c_1 o c_k + c_2 o c_{k-1} + ... + c_k o c_1 for a list c_1..c_k.
template <Field K>
Cochain<K> obstruction_sum(const SecondaryComplex<K>& cx, const std::vector<Cochain<K>>& cs) {
    if (cs.empty()) throw PreconditionError("empty cochain list");
    std::optional<Cochain<K>> out;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        auto term = circle(cx, cs[i], cs[cs.size() - 1 - i]);
        if (!out) out = std::move(term);
        else *out += term;
    }
    return *out;
}

}  // namespace secohom
