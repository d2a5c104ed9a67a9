#pragma once

// The secondary Hochschild complex C^n((A,B,eps);M) with its differential, the
// ordinary Hochschild complex C^n(A,M) (an independent implementation used as
// an oracle and as the target of Phi), cohomology with canonical
// representatives, the restriction map Phi and the chi map into ker Phi_2.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "secohom/algebra.hpp"
#include "secohom/cochain.hpp"
#include "secohom/error.hpp"
#include "secohom/linalg.hpp"
#include "secohom/tensor.hpp"

namespace secohom {

inline constexpr std::uint64_t kDefaultMaxBasis = std::uint64_t{1} << 21;

enum class Flavor { Ordinary, Secondary };

inline std::string to_string(Flavor f) { return f == Flavor::Ordinary ? "ordinary" : "secondary"; }

/// Matrix of delta_n : C^n -> C^{n+1}, cochains as column vectors.
template <Field K>
struct DifferentialMatrix {
    std::size_t degree;
    Flavor flavor;
    Matrix<K> matrix;
};

/// H^n with canonical representatives.
template <Field K>
class CohomologySpace {
public:
    CohomologySpace(std::size_t degree, CochainShape shape, Subspace<K> cocycles, Subspace<K> coboundaries)
        : degree_(degree), shape_(shape), cocycles_(std::move(cocycles)), coboundaries_(std::move(coboundaries)),
          classes_(cocycles_.field(), cocycles_.ambient()) {
        dim_ = quotient_dim(cocycles_, coboundaries_);
        std::vector<SparseVec<K>> reduced;
        for (const auto& z : cocycles_.basis()) {
            auto r = coboundaries_.reduce(z);
            if (!r.empty()) reduced.push_back(std::move(r));
        }
        classes_ = Subspace<K>::span(field(), cocycles_.ambient(), reduced);
        if (classes_.dim() != dim_) throw Error("internal: class basis has dimension " + std::to_string(classes_.dim()));
    }

    const K& field() const { return cocycles_.field(); }
    std::size_t degree() const { return degree_; }
    std::size_t dim() const { return dim_; }
    const CochainShape& shape() const { return shape_; }
    const Subspace<K>& cocycles() const { return cocycles_; }
    const Subspace<K>& coboundaries() const { return coboundaries_; }

    /// Representatives, echelon-reduced against the coboundaries.
    std::vector<Cochain<K>> representatives() const {
        std::vector<Cochain<K>> out;
        for (const auto& v : classes_.basis())
            out.emplace_back(field(), shape_, to_dense(field(), v, cocycles_.ambient()));
        return out;
    }

    bool is_cocycle(const Cochain<K>& f) const { return cocycles_.contains(f.data()); }
    bool is_coboundary(const Cochain<K>& f) const { return coboundaries_.contains(f.data()); }

    /// Canonical form of the class of f.
    Cochain<K> canonical(const Cochain<K>& f) const {
        require_cocycle(f);
        return Cochain<K>(field(), shape_, to_dense(field(), coboundaries_.reduce(to_sparse(field(), f.data())), cocycles_.ambient()));
    }

    /// Coordinates of the class of f in the representative basis.
    Vec<K> class_coordinates(const Cochain<K>& f) const {
        require_cocycle(f);
        auto r = coboundaries_.reduce(to_sparse(field(), f.data()));
        Vec<K> coords;
        for (const auto& row : classes_.basis()) coords.push_back(sparse_at(field(), r, row.front().first));
        return coords;
    }

private:
    void require_cocycle(const Cochain<K>& f) const {
        if (!(f.shape() == shape_)) throw PreconditionError("cochain shape does not match the cohomology space");
        if (!is_cocycle(f)) throw PreconditionError("not a cocycle");
    }

    std::size_t degree_;
    CochainShape shape_;
    Subspace<K> cocycles_;
    Subspace<K> coboundaries_;
    Subspace<K> classes_;
    std::size_t dim_ = 0;
};

// ---------------------------------------------------------------------------
// Ordinary Hochschild complex

template <Field K>
class OrdinaryComplex {
public:
    OrdinaryComplex(FiniteAlgebra<K> A, Bimodule<K> M, std::uint64_t max_basis = kDefaultMaxBasis)
        : a_(std::move(A)), m_(std::move(M)), max_basis_(max_basis) {
        if (m_.algebra_dim() != a_.dim()) throw PreconditionError("triple/module mismatch");
    }

    const K& field() const { return a_.field(); }
    const FiniteAlgebra<K>& algebra() const { return a_; }
    const Bimodule<K>& module() const { return m_; }

    CochainShape shape(std::size_t n) const { return {n, a_.dim(), 1, m_.dim()}; }
    std::uint64_t dim(std::size_t n) const { return shape(n).size(); }

    void require_within_cap(std::size_t n) const {
        if (dim(n) > max_basis_) throw SizeCapError(dim(n), max_basis_);
    }

    Cochain<K> zero(std::size_t n) const {
        require_within_cap(n);
        return Cochain<K>(field(), shape(n));
    }

    /// (delta f)(a_1..a_{n+1}) = a_1 f(a_2..) + sum_i (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^{n+1} f(a_1..a_n) a_{n+1}
    Cochain<K> delta(const Cochain<K>& f) const {
        const std::size_t n = f.degree();
        if (!(f.shape() == shape(n))) throw PreconditionError("triple/module mismatch");
        require_within_cap(n + 1);
        const K& k = field();
        const std::size_t d = a_.dim();
        Cochain<K> out(k, shape(n + 1));
        const std::uint64_t count = power(d, n + 1);
        std::vector<std::uint32_t> a(n + 1);
        for (std::uint64_t t = 0; t < count; ++t) {
            digits(t, a);
            Vec<K> acc = m_.act_left(a_.basis_vector(a[0]), f.value(offset(a, 1, n + 1, npos)));
            for (std::size_t i = 1; i <= n; ++i) {
                const auto sign = (i % 2) ? k.neg(k.one()) : k.one();
                for (const auto& [q, c] : a_.basis_product(a[i - 1], a[i])) {
                    std::uint64_t off = offset(a, 0, n + 1, i - 1, q);
                    f.accumulate(acc, off, k.mul(sign, c));
                }
            }
            Vec<K> last = m_.act_right(a_.basis_vector(a[n]), f.value(offset(a, 0, n, npos)));
            const bool minus = (n + 1) % 2;
            for (std::size_t r = 0; r < acc.size(); ++r) acc[r] = minus ? k.sub(acc[r], last[r]) : k.add(acc[r], last[r]);
            out.set_value(t, acc);
        }
        return out;
    }

    DifferentialMatrix<K> delta_matrix(std::size_t n) const {
        require_within_cap(n);
        require_within_cap(n + 1);
        const K& k = field();
        const std::size_t dm = m_.dim();
        Matrix<K> mat(k, dim(n + 1), dim(n));
        const std::uint64_t count = power(a_.dim(), n + 1);
        std::vector<std::uint32_t> a(n + 1);
        for (std::uint64_t t = 0; t < count; ++t) {
            digits(t, a);
            const Matrix<K>& L = m_.left(a[0]);
            const Matrix<K>& R = m_.right(a[n]);
            const std::uint64_t first = offset(a, 1, n + 1, npos), last = offset(a, 0, n, npos);
            const auto last_sign = ((n + 1) % 2) ? k.neg(k.one()) : k.one();
            for (std::size_t r = 0; r < dm; ++r) {
                SparseVec<K> row;
                for (const auto& [s, v] : L.row(r)) row.emplace_back(static_cast<std::uint32_t>(first * dm + s), v);
                for (std::size_t i = 1; i <= n; ++i) {
                    const auto sign = (i % 2) ? k.neg(k.one()) : k.one();
                    for (const auto& [q, c] : a_.basis_product(a[i - 1], a[i]))
                        row.emplace_back(static_cast<std::uint32_t>(offset(a, 0, n + 1, i - 1, q) * dm + r), k.mul(sign, c));
                }
                for (const auto& [s, v] : R.row(r)) row.emplace_back(static_cast<std::uint32_t>(last * dm + s), k.mul(last_sign, v));
                mat.set_row(t * dm + r, std::move(row));
            }
        }
        return {n, Flavor::Ordinary, std::move(mat)};
    }

    CohomologySpace<K> cohomology(std::size_t n) const {
        auto z = nullspace(delta_matrix(n).matrix);
        Subspace<K> b(field(), dim(n));
        if (n > 0) b = column_space(delta_matrix(n - 1).matrix);
        return CohomologySpace<K>(n, shape(n), std::move(z), std::move(b));
    }

private:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::uint64_t power(std::size_t base, std::size_t e) const {
        std::uint64_t r = 1;
        for (std::size_t i = 0; i < e; ++i) r *= base;
        return r;
    }

    void digits(std::uint64_t t, std::vector<std::uint32_t>& a) const {
        for (std::size_t i = a.size(); i-- > 0;) {
            a[i] = static_cast<std::uint32_t>(t % a_.dim());
            t /= a_.dim();
        }
    }

    /// Offset of (a[begin..end)) with positions merge, merge+1 replaced by the single index q.
    std::uint64_t offset(const std::vector<std::uint32_t>& a, std::size_t begin, std::size_t end, std::size_t merge,
                         std::uint32_t q = 0) const {
        std::uint64_t off = 0;
        for (std::size_t i = begin; i < end; ++i) {
            if (i == merge) {
                off = off * a_.dim() + q;
                ++i;
                continue;
            }
            off = off * a_.dim() + a[i];
        }
        return off;
    }

    FiniteAlgebra<K> a_;
    Bimodule<K> m_;
    std::uint64_t max_basis_;
};

// ---------------------------------------------------------------------------
// Secondary complex

/// The terms of (delta^eps f)(T) for one basis tensor T of degree n+1:
/// left . f(src_left) + sum coef * f(offset) + right_sign * f(src_right) . right.
template <Field K>
struct DeltaTerms {
    SparseVec<K> left;
    std::uint64_t src_left = 0;
    std::vector<std::pair<std::uint64_t, typename K::Element>> middle;
    SparseVec<K> right;
    std::uint64_t src_right = 0;
    bool right_negative = false;
};

template <Field K>
class SecondaryComplex {
public:
    using Element = typename K::Element;

    SecondaryComplex(Triple<K> t, Bimodule<K> M, std::uint64_t max_basis = kDefaultMaxBasis)
        : t_(std::move(t)), m_(std::move(M)), max_basis_(max_basis) {
        if (m_.algebra_dim() != t_.A().dim()) throw PreconditionError("triple/module mismatch");
    }

    const K& field() const { return t_.field(); }
    const Triple<K>& triple() const { return t_; }
    const Bimodule<K>& module() const { return m_; }
    std::uint64_t max_basis() const { return max_basis_; }

    OrdinaryComplex<K> ordinary() const { return OrdinaryComplex<K>(t_.A(), m_, max_basis_); }

    CochainShape shape(std::size_t n) const { return {n, t_.A().dim(), t_.B().dim(), m_.dim()}; }
    std::uint64_t dim(std::size_t n) const { return shape(n).size(); }
    TensorCodec codec(std::size_t n) const { return shape(n).codec(); }

    void require_within_cap(std::size_t n) const {
        if (dim(n) > max_basis_) throw SizeCapError(dim(n), max_basis_);
    }

    Cochain<K> zero(std::size_t n) const {
        require_within_cap(n);
        return Cochain<K>(field(), shape(n));
    }

    void require_compatible(const Cochain<K>& f) const {
        if (!(f.shape() == shape(f.degree()))) throw PreconditionError("triple/module mismatch");
    }

    /// Decomposition of (delta^eps_n f)(T) for the degree-(n+1) basis tensor at `offset`.
    DeltaTerms<K> delta_terms(std::size_t n, const TensorCodec& out_codec, const TensorCodec& in_codec,
                              std::uint64_t offset) const {
        const K& k = field();
        const auto& A = t_.A();
        const auto& B = t_.B();
        const TensorIndex T = out_codec.decode(offset);
        DeltaTerms<K> terms;
        std::vector<std::uint32_t> factors;

        // a_1 eps(b_{1,2} ... b_{1,n+1}) f(T^1_{n+1})
        factors.clear();
        for (std::size_t j = 1; j <= n; ++j) factors.push_back(pair_at(T, 0, j));
        terms.left = A.multiply_basis_left(T.diag[0], t_.eps(basis_product(B, std::span<const std::uint32_t>(factors))));
        terms.src_left = in_codec.encode(sub_tensor(T, 1, n + 1));

        // (-1)^i f(M_{i,i+1}): merge slots i-1, i (0-based) with diagonal eps(b_{i,i+1}) a_i a_{i+1}
        for (std::size_t i = 1; i <= n; ++i) {
            const std::size_t p = i - 1;
            std::vector<std::pair<std::size_t, std::size_t>> blocks;
            std::vector<SparseVec<K>> values;
            for (std::size_t q = 0; q <= n; ++q) {
                if (q == p) {
                    blocks.emplace_back(p, p + 2);
                    auto prod = A.multiply_basis_right(A.basis_vector(T.diag[p]), T.diag[p + 1]);
                    values.push_back(A.multiply(t_.eps_basis(pair_at(T, p, p + 1)), prod));
                    ++q;
                } else {
                    blocks.emplace_back(q, q + 1);
                    values.push_back(A.basis_vector(T.diag[q]));
                }
            }
            const auto sign = (i % 2) ? k.neg(k.one()) : k.one();
            auto arg = collapse(B, T, blocks, std::move(values));
            expand(k, in_codec, arg, [&](std::uint64_t off, const Element& c) { terms.middle.emplace_back(off, k.mul(sign, c)); });
        }

        // (-1)^{n+1} f(T^0_n) a_{n+1} eps(b_{1,n+1} ... b_{n,n+1})
        factors.clear();
        for (std::size_t i = 0; i < n; ++i) factors.push_back(pair_at(T, i, n));
        terms.right = A.multiply_basis_right(t_.eps(basis_product(B, std::span<const std::uint32_t>(factors))), T.diag[n]);
        terms.src_right = in_codec.encode(sub_tensor(T, 0, n));
        terms.right_negative = (n + 1) % 2;
        return terms;
    }

    /// delta^eps_n f
    Cochain<K> delta(const Cochain<K>& f) const {
        require_compatible(f);
        const std::size_t n = f.degree();
        require_within_cap(n + 1);
        const K& k = field();
        Cochain<K> out(k, shape(n + 1));
        const auto out_codec = codec(n + 1), in_codec = codec(n);
        for (std::uint64_t t = 0; t < out_codec.count(); ++t) {
            auto terms = delta_terms(n, out_codec, in_codec, t);
            Vec<K> acc = m_.act_left(terms.left, f.value(terms.src_left));
            for (const auto& [off, c] : terms.middle) f.accumulate(acc, off, c);
            Vec<K> last = m_.act_right(terms.right, f.value(terms.src_right));
            for (std::size_t r = 0; r < acc.size(); ++r)
                acc[r] = terms.right_negative ? k.sub(acc[r], last[r]) : k.add(acc[r], last[r]);
            out.set_value(t, acc);
        }
        return out;
    }

    DifferentialMatrix<K> delta_matrix(std::size_t n) const {
        require_within_cap(n);
        require_within_cap(n + 1);
        const K& k = field();
        const std::size_t dm = m_.dim();
        Matrix<K> mat(k, dim(n + 1), dim(n));
        const auto out_codec = codec(n + 1), in_codec = codec(n);
        for (std::uint64_t t = 0; t < out_codec.count(); ++t) {
            auto terms = delta_terms(n, out_codec, in_codec, t);
            const Matrix<K> L = m_.left_operator(terms.left);
            const Matrix<K> R = m_.right_operator(terms.right);
            for (std::size_t r = 0; r < dm; ++r) {
                SparseVec<K> row;
                for (const auto& [s, v] : L.row(r)) row.emplace_back(static_cast<std::uint32_t>(terms.src_left * dm + s), v);
                for (const auto& [off, c] : terms.middle) row.emplace_back(static_cast<std::uint32_t>(off * dm + r), c);
                for (const auto& [s, v] : R.row(r))
                    row.emplace_back(static_cast<std::uint32_t>(terms.src_right * dm + s), terms.right_negative ? k.neg(v) : v);
                mat.set_row(t * dm + r, std::move(row));
            }
        }
        return {n, Flavor::Secondary, std::move(mat)};
    }

    bool is_cocycle(const Cochain<K>& f) const { return delta(f).is_zero(); }

    /// Some g with delta^eps g = f, or nullopt.
    std::optional<Cochain<K>> coboundary_preimage(const Cochain<K>& f) const {
        require_compatible(f);
        if (f.degree() == 0) throw PreconditionError("degree 0 has no coboundaries");
        auto mat = delta_matrix(f.degree() - 1).matrix;
        auto x = solve(mat, f.data());
        if (!x) return std::nullopt;
        return Cochain<K>(field(), shape(f.degree() - 1), std::move(*x));
    }

    bool is_coboundary(const Cochain<K>& f) const {
        if (f.degree() == 0) return f.is_zero();
        return coboundary_preimage(f).has_value();
    }

    CohomologySpace<K> cohomology(std::size_t n) const {
        auto z = nullspace(delta_matrix(n).matrix);
        Subspace<K> b(field(), dim(n));
        if (n > 0) b = column_space(delta_matrix(n - 1).matrix);
        return CohomologySpace<K>(n, shape(n), std::move(z), std::move(b));
    }

    /// Phi_n at cochain level: all off-diagonal entries set to 1_B.
    Cochain<K> phi_restriction(const Cochain<K>& f) const {
        require_compatible(f);
        const std::size_t n = f.degree();
        const auto& A = t_.A();
        auto ord = ordinary();
        Cochain<K> out = ord.zero(n);
        const TensorCodec plain(n, A.dim(), 1);
        TensorArg<K> arg;
        arg.diag.resize(n);
        arg.pairs.assign(pair_count(n), t_.B().unit());
        for (std::uint64_t o = 0; o < plain.count(); ++o) {
            const auto idx = plain.decode(o);
            for (std::size_t i = 0; i < n; ++i) arg.diag[i] = A.basis_vector(idx.diag[i]);
            out.set_value(o, f.evaluate(arg));
        }
        return out;
    }

    /// chi(u)(a (x) b (x) alpha) = a u(alpha) b for u in Der_k(B, M).
    Cochain<K> chi(const LinearMap<K>& u) const {
        if (u.source() != t_.B().dim() || u.target() != m_.dim()) throw PreconditionError("chi needs a map B -> M");
        if (!derivation_space(t_, m_, DerivationKind::OnB).contains(u.flatten()))
            throw ValidationError("not a derivation on B");
        const auto& A = t_.A();
        Cochain<K> out = zero(2);
        const auto c2 = codec(2);
        for (std::uint64_t o = 0; o < c2.count(); ++o) {
            const auto T = c2.decode(o);
            Vec<K> v(m_.dim(), field().zero());
            for (std::size_t r = 0; r < m_.dim(); ++r) v[r] = u.matrix.at(r, T.pairs[0]);
            v = m_.act_right(A.basis_vector(T.diag[1]), m_.act_left(A.basis_vector(T.diag[0]), v));
            out.set_value(o, v);
        }
        return out;
    }

private:
    Triple<K> t_;
    Bimodule<K> m_;
    std::uint64_t max_basis_;
};

template <Field K>
struct PhiSummary {
    std::size_t degree;
    /// dim H^n(A,M) x dim H^n((A,B,eps);M), in the canonical representative bases.
    Matrix<K> matrix;
    std::size_t secondary_dim;
    std::size_t ordinary_dim;
    std::size_t image_dim;
    std::size_t kernel_dim;
};

/// The map Phi_n : H^n((A,B,eps);M) -> H^n(A,M) on cohomology.
template <Field K>
PhiSummary<K> phi_induced(const SecondaryComplex<K>& cx, std::size_t n) {
    auto sec = cx.cohomology(n);
    auto ord_cx = cx.ordinary();
    auto ord = ord_cx.cohomology(n);
    const K& k = cx.field();
    Matrix<K> mat(k, ord.dim(), sec.dim());
    std::size_t col = 0;
    for (const auto& rep : sec.representatives()) {
        auto coords = ord.class_coordinates(cx.phi_restriction(rep));
        for (std::size_t r = 0; r < coords.size(); ++r)
            if (!k.is_zero(coords[r])) mat.add_to(r, col, coords[r]);
        ++col;
    }
    const std::size_t image = rank(mat);
    return {n, std::move(mat), sec.dim(), ord.dim(), image, sec.dim() - image};
}

/// The identity map as a 1-cochain with coefficients in the regular bimodule.
template <Field K>
Cochain<K> identity_cochain(const SecondaryComplex<K>& cx) {
    if (cx.module().dim() != cx.triple().A().dim()) throw PreconditionError("coefficients must be A");
    Cochain<K> f = cx.zero(1);
    for (std::size_t i = 0; i < cx.triple().A().dim(); ++i) f.data()[i * cx.module().dim() + i] = cx.field().one();
    return f;
}

}  // namespace secohom
