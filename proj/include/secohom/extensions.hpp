#pragma once

// Square-zero extensions of B-algebras and their 2-cocycles, equivalence of
// classes with an explicit isomorphism, and the first deformation obstruction.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secohom/complex.hpp"
#include "secohom/gerstenhaber.hpp"

namespace secohom {

/// X = A (+) M with basis A-part then M-part.
template <Field K>
struct Extension {
    Triple<K> triple;          // (X, B, eps_X)
    LinearMap<K> projection;   // X -> A
    LinearMap<K> section;      // A -> X
    std::size_t dim_a;
    std::size_t dim_m;

    const FiniteAlgebra<K>& algebra() const { return triple.A(); }
    const Matrix<K>& eps() const { return triple.eps_matrix(); }
};

namespace detail {

template <Field K>
Vec<K> eval2(const Cochain<K>& c, SparseVec<K> a, SparseVec<K> b, SparseVec<K> alpha) {
    TensorArg<K> arg;
    arg.diag = {std::move(a), std::move(b)};
    arg.pairs = {std::move(alpha)};
    return c.evaluate(arg);
}

/// a + m as a vector of X.
template <Field K>
SparseVec<K> join(const K& k, const SparseVec<K>& a, const Vec<K>& m, std::size_t dim_a) {
    SparseVec<K> out = a;
    for (std::size_t r = 0; r < m.size(); ++r)
        if (!k.is_zero(m[r])) out.emplace_back(static_cast<std::uint32_t>(dim_a + r), m[r]);
    return out;
}

template <Field K>
std::pair<SparseVec<K>, Vec<K>> split(const K& k, const SparseVec<K>& x, std::size_t dim_a, std::size_t dim_m) {
    SparseVec<K> a;
    Vec<K> m(dim_m, k.zero());
    for (const auto& [i, v] : x) {
        if (i < dim_a) a.emplace_back(i, v);
        else m[i - dim_a] = v;
    }
    return {std::move(a), std::move(m)};
}

}  // namespace detail

/// Checks p surjective algebra map, (ker p)^2 = 0, p eps_X = eps, p s = id.
template <Field K>
void verify_extension(const SecondaryComplex<K>& cx, const Extension<K>& e) {
    const K& k = cx.field();
    const auto& A = cx.triple().A();
    const auto& X = e.algebra();
    const auto& p = e.projection.matrix;
    if (p.rows() != A.dim() || p.cols() != X.dim()) throw Error("extension: projection has wrong shape");
    if (rank(p) != A.dim()) throw Error("extension: projection not surjective");
    for (std::size_t i = 0; i < X.dim(); ++i)
        for (std::size_t j = 0; j < X.dim(); ++j) {
            auto lhs = p.apply(to_dense(k, X.basis_product(i, j), X.dim()));
            auto rhs = A.multiply(p.apply(to_dense(k, X.basis_vector(i), X.dim())), p.apply(to_dense(k, X.basis_vector(j), X.dim())));
            if (!equal(k, lhs, rhs)) throw Error("extension: projection not multiplicative");
        }
    if (!equal(k, p.apply(to_dense(k, X.unit(), X.dim())), to_dense(k, A.unit(), A.dim())))
        throw Error("extension: projection not unital");
    auto kernel = nullspace(p);
    for (const auto& u : kernel.basis())
        for (const auto& v : kernel.basis())
            if (!X.multiply(u, v).empty()) throw Error("extension: kernel does not square to zero");
    if (!detail::same(p * e.eps(), cx.triple().eps_matrix())) throw Error("extension: p eps_X differs from eps");
    if (!detail::same(p * e.section.matrix, Matrix<K>::identity(k, A.dim()))) throw Error("extension: section does not split p");
}

/// The extension with product (a+m)(b+n) = ab + an + mb + c(a (x) b (x) 1_B),
/// unit 1_A - c(1 (x) 1 (x) 1) and eps_X(alpha) = eps(alpha) - 2 eps(alpha) c(1 (x) 1 (x) 1) + c(1 (x) 1 (x) alpha).
template <Field K>
Extension<K> extension_from_cocycle(const SecondaryComplex<K>& cx, const Cochain<K>& c) {
    cx.require_compatible(c);
    if (c.degree() != 2) throw PreconditionError("extension needs a 2-cochain");
    if (!cx.is_cocycle(c)) throw PreconditionError("not a cocycle");
    const K& k = cx.field();
    const auto& t = cx.triple();
    const auto& A = t.A();
    const auto& B = t.B();
    const auto& M = cx.module();
    const std::size_t da = A.dim(), dm = M.dim(), dx = da + dm;

    std::vector<Matrix<K>> left_t, right_t;
    for (std::size_t i = 0; i < da; ++i) {
        left_t.push_back(M.left(i).transpose());
        right_t.push_back(M.right(i).transpose());
    }
    std::vector<Vec<K>> table;
    for (std::size_t i = 0; i < dx; ++i)
        for (std::size_t j = 0; j < dx; ++j) {
            Vec<K> v(dx, k.zero());
            if (i < da && j < da) {
                for (const auto& [q, x] : A.basis_product(i, j)) v[q] = x;
                auto m = detail::eval2(c, A.basis_vector(i), A.basis_vector(j), B.unit());
                for (std::size_t r = 0; r < dm; ++r) v[da + r] = m[r];
            } else if (i < da) {
                for (const auto& [r, x] : left_t[i].row(j - da)) v[da + r] = x;
            } else if (j < da) {
                for (const auto& [r, x] : right_t[j].row(i - da)) v[da + r] = x;
            }
            table.push_back(std::move(v));
        }

    const auto c111 = detail::eval2(c, A.unit(), A.unit(), B.unit());
    Vec<K> unit(dx, k.zero());
    for (const auto& [i, x] : A.unit()) unit[i] = x;
    for (std::size_t r = 0; r < dm; ++r) unit[da + r] = k.neg(c111[r]);

    std::vector<std::string> labels = A.labels();
    for (std::size_t r = 0; r < dm; ++r) labels.push_back("m" + std::to_string(r));
    auto X = validate_algebra(k, dx, std::move(labels), table, unit);

    Matrix<K> eps_x(k, dx, B.dim());
    for (std::size_t beta = 0; beta < B.dim(); ++beta) {
        const auto e = t.eps_basis(beta);
        auto m = M.act_left(e, c111);
        auto extra = detail::eval2(c, A.unit(), A.unit(), B.basis_vector(beta));
        for (const auto& [i, x] : e) eps_x.add_to(i, beta, x);
        for (std::size_t r = 0; r < dm; ++r) {
            auto v = k.sub(extra[r], k.add(m[r], m[r]));
            if (!k.is_zero(v)) eps_x.add_to(da + r, beta, v);
        }
    }
    auto tx = validate_triple(std::move(X), B, std::move(eps_x));

    Matrix<K> p(k, da, dx), s(k, dx, da);
    for (std::size_t i = 0; i < da; ++i) {
        p.add_to(i, i, k.one());
        s.add_to(i, i, k.one());
    }
    Extension<K> ext{std::move(tx), {std::move(p)}, {std::move(s)}, da, dm};
    verify_extension(cx, ext);
    return ext;
}

/// m_{alpha,X}((a+m)(b+n)) = eps(alpha)ab + eps(alpha)(an + mb) + c(a (x) b (x) alpha), compared with
/// eps_X(alpha) x y for every basis alpha, x, y.
template <Field K>
bool family_product_consistent(const SecondaryComplex<K>& cx, const Cochain<K>& c, const Extension<K>& e) {
    const K& k = cx.field();
    const auto& t = cx.triple();
    const auto& A = t.A();
    const auto& M = cx.module();
    const auto& X = e.algebra();
    const std::size_t da = e.dim_a, dm = e.dim_m;
    for (std::size_t beta = 0; beta < t.B().dim(); ++beta) {
        const auto ea = t.eps_basis(beta);
        SparseVec<K> ex;
        for (std::size_t r = 0; r < X.dim(); ++r) {
            auto v = e.eps().at(r, beta);
            if (!k.is_zero(v)) ex.emplace_back(static_cast<std::uint32_t>(r), v);
        }
        for (std::size_t i = 0; i < X.dim(); ++i)
            for (std::size_t j = 0; j < X.dim(); ++j) {
                auto lhs = X.multiply(X.multiply(ex, X.basis_vector(i)), X.basis_vector(j));
                SparseVec<K> a, b;
                Vec<K> m(dm, k.zero()), n(dm, k.zero());
                if (i < da) a = A.basis_vector(i);
                else m[i - da] = k.one();
                if (j < da) b = A.basis_vector(j);
                else n[j - da] = k.one();
                auto prod_a = A.multiply(ea, A.multiply(a, b));
                Vec<K> prod_m(dm, k.zero());
                if (!a.empty()) prod_m = M.act_left(ea, M.act_left(a, n));
                if (!b.empty()) {
                    auto mb = M.act_left(ea, M.act_right(b, m));
                    for (std::size_t r = 0; r < dm; ++r) prod_m[r] = k.add(prod_m[r], mb[r]);
                }
                if (!a.empty() && !b.empty()) {
                    auto cv = detail::eval2(c, a, b, t.B().basis_vector(beta));
                    for (std::size_t r = 0; r < dm; ++r) prod_m[r] = k.add(prod_m[r], cv[r]);
                }
                if (!equal(k, lhs, detail::join(k, prod_a, prod_m, da))) return false;
            }
    }
    return true;
}

/// c_s(a (x) b (x) alpha) = eps_X(alpha) s(a) s(b) - s(eps(alpha) a b)
template <Field K>
Cochain<K> cocycle_from_section(const SecondaryComplex<K>& cx, const Extension<K>& e, const LinearMap<K>& section) {
    verify_extension(cx, e);
    const K& k = cx.field();
    const auto& t = cx.triple();
    const auto& A = t.A();
    const auto& X = e.algebra();
    const auto& s = section.matrix;
    if (s.rows() != X.dim() || s.cols() != A.dim()) throw PreconditionError("section has wrong shape");
    if (!detail::same(e.projection.matrix * s, Matrix<K>::identity(k, A.dim())))
        throw PreconditionError("not a section of the projection");
    auto S = [&](const SparseVec<K>& a) { return to_sparse(k, s.apply(to_dense(k, a, A.dim()))); };
    Cochain<K> out = cx.zero(2);
    const auto c2 = cx.codec(2);
    for (std::uint64_t o = 0; o < c2.count(); ++o) {
        const auto T = c2.decode(o);
        SparseVec<K> ex;
        for (std::size_t r = 0; r < X.dim(); ++r) {
            auto v = e.eps().at(r, T.pairs[0]);
            if (!k.is_zero(v)) ex.emplace_back(static_cast<std::uint32_t>(r), v);
        }
        auto lhs = X.multiply(X.multiply(ex, S(A.basis_vector(T.diag[0]))), S(A.basis_vector(T.diag[1])));
        auto prod = A.multiply_basis_right(A.multiply(t.eps_basis(T.pairs[0]), A.basis_vector(T.diag[0])), T.diag[1]);
        auto diff = axpy(k, lhs, k.neg(k.one()), S(prod));
        auto [a_part, m_part] = detail::split(k, diff, e.dim_a, e.dim_m);
        if (!a_part.empty()) throw Error("section cocycle leaves the kernel of p");
        out.set_value(o, m_part);
    }
    return out;
}

template <Field K>
Cochain<K> cocycle_from_section(const SecondaryComplex<K>& cx, const Extension<K>& e) {
    return cocycle_from_section(cx, e, e.section);
}

template <Field K>
struct Equivalence {
    bool equivalent = false;
    std::optional<Cochain<K>> witness;  // f with c1 - c2 = delta f
};

/// Whether c1 and c2 are cohomologous; when they are, F(a+m) = a + m + f(a) is
/// checked to be a B-algebra isomorphism X_1 -> X_2 over A.
template <Field K>
Equivalence<K> classes_equivalent(const SecondaryComplex<K>& cx, const Cochain<K>& c1, const Cochain<K>& c2) {
    for (const auto* c : {&c1, &c2}) {
        cx.require_compatible(*c);
        if (c->degree() != 2) throw PreconditionError("extension classes live in degree 2");
        if (!cx.is_cocycle(*c)) throw PreconditionError("not a cocycle");
    }
    auto f = cx.coboundary_preimage(c1 - c2);
    if (!f) return {false, std::nullopt};

    const K& k = cx.field();
    const std::size_t da = cx.triple().A().dim(), dm = cx.module().dim(), dx = da + dm;
    auto x1 = extension_from_cocycle(cx, c1), x2 = extension_from_cocycle(cx, c2);
    Matrix<K> F = Matrix<K>::identity(k, dx);
    for (std::size_t i = 0; i < da; ++i) {
        const auto v = f->value(TensorIndex{{static_cast<std::uint32_t>(i)}, {}});
        for (std::size_t r = 0; r < dm; ++r)
            if (!k.is_zero(v[r])) F.add_to(da + r, i, v[r]);
    }
    const auto& X1 = x1.algebra();
    const auto& X2 = x2.algebra();
    auto img = [&](const SparseVec<K>& x) { return to_sparse(k, F.apply(to_dense(k, x, dx))); };
    for (std::size_t i = 0; i < dx; ++i)
        for (std::size_t j = 0; j < dx; ++j)
            if (!equal(k, img(X1.basis_product(i, j)), X2.multiply(img(X1.basis_vector(i)), img(X1.basis_vector(j)))))
                throw Error("witness map is not multiplicative");
    if (!detail::same(F * x1.eps(), x2.eps())) throw Error("witness map does not intertwine eps_X");
    if (!detail::same(x2.projection.matrix * F, x1.projection.matrix)) throw Error("witness map is not over A");
    if (rank(F) != dx) throw Error("witness map is not invertible");
    return {true, std::move(f)};
}

/// c(a (x) b (x) alpha) = c(eps(alpha) (x) ab (x) 1) + c(1 (x) 1 (x) alpha) ab
///                        - 2 eps(alpha) c(1 (x) 1 (x) 1) ab + eps(alpha) c(a (x) b (x) 1)
template <Field K>
bool key_identity_holds(const SecondaryComplex<K>& cx, const Cochain<K>& c) {
    const K& k = cx.field();
    const auto& t = cx.triple();
    const auto& A = t.A();
    const auto& B = t.B();
    const auto& M = cx.module();
    const auto c111 = detail::eval2(c, A.unit(), A.unit(), B.unit());
    for (std::size_t a = 0; a < A.dim(); ++a)
        for (std::size_t b = 0; b < A.dim(); ++b)
            for (std::size_t beta = 0; beta < B.dim(); ++beta) {
                const auto ea = t.eps_basis(beta);
                const auto ab = A.basis_product(a, b);
                auto lhs = detail::eval2(c, A.basis_vector(a), A.basis_vector(b), B.basis_vector(beta));
                auto rhs = detail::eval2(c, ea, ab, B.unit());
                auto t2 = M.act_right(ab, detail::eval2(c, A.unit(), A.unit(), B.basis_vector(beta)));
                auto t3 = M.act_right(ab, M.act_left(ea, c111));
                auto t4 = M.act_left(ea, detail::eval2(c, A.basis_vector(a), A.basis_vector(b), B.unit()));
                for (std::size_t r = 0; r < rhs.size(); ++r)
                    rhs[r] = k.add(k.sub(k.add(rhs[r], t2[r]), k.add(t3[r], t3[r])), t4[r]);
                if (!equal(k, lhs, rhs)) return false;
            }
    return true;
}

template <Field K>
struct Obstruction {
    Cochain<K> value;  // c o c, degree 3
    bool closed;       // delta(c o c) = 0
    bool vanishes;     // c o c is a coboundary
};

/// The class of c o c in H^3((A,B,eps);A).
template <Field K>
Obstruction<K> first_obstruction(const SecondaryComplex<K>& cx, const Cochain<K>& c) {
    require_a_coefficients(cx);
    cx.require_compatible(c);
    if (c.degree() != 2) throw PreconditionError("obstruction needs a 2-cochain");
    if (!cx.is_cocycle(c)) throw PreconditionError("not a cocycle");
    auto o = circle(cx, c, c);
    const bool closed = cx.is_cocycle(o);
    const bool vanishes = cx.is_coboundary(o);
    return {std::move(o), closed, vanishes};
}

/// A random 2-cocycle: delta of a random 1-cochain plus a random combination of H^2 representatives.
template <Field K>
Cochain<K> random_cocycle(const SecondaryComplex<K>& cx, const CohomologySpace<K>& h2, std::mt19937_64& rng) {
    const K& k = cx.field();
    auto c = cx.delta(random_cochain(k, cx.shape(1), rng));
    for (const auto& rep : h2.representatives())
        c += k.from_int(static_cast<long>(rng() % 7) - 3) * rep;
    return c;
}

}  // namespace secohom
