#pragma once

// Symmetric-group action on secondary cochains, shuffle operators, the
// Eulerian idempotents e_n(k) and the Hodge decomposition of H^n.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "secohom/complex.hpp"

namespace secohom {

class Permutation {
public:
    explicit Permutation(std::vector<std::uint32_t> image) : image_(std::move(image)) {
        std::vector<bool> seen(image_.size(), false);
        for (auto v : image_) {
            if (v >= image_.size() || seen[v]) throw PreconditionError("not a permutation");
            seen[v] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::uint32_t> v(n);
        std::iota(v.begin(), v.end(), 0u);
        return Permutation(std::move(v));
    }

    std::size_t size() const { return image_.size(); }
    std::uint32_t operator()(std::size_t i) const { return image_[i]; }
    const std::vector<std::uint32_t>& image() const { return image_; }

    /// +1 or -1, by counting inversions.
    int sign() const {
        std::size_t inv = 0;
        for (std::size_t i = 0; i < image_.size(); ++i)
            for (std::size_t j = i + 1; j < image_.size(); ++j)
                if (image_[i] > image_[j]) ++inv;
        return inv % 2 ? -1 : 1;
    }

    /// (this * o)(i) = this(o(i))
    Permutation operator*(const Permutation& o) const {
        if (o.size() != size()) throw PreconditionError("permutation sizes differ");
        std::vector<std::uint32_t> v(size());
        for (std::size_t i = 0; i < size(); ++i) v[i] = image_[o.image_[i]];
        return Permutation(std::move(v));
    }

    Permutation inverse() const {
        std::vector<std::uint32_t> v(size());
        for (std::size_t i = 0; i < size(); ++i) v[image_[i]] = static_cast<std::uint32_t>(i);
        return Permutation(std::move(v));
    }

    bool operator==(const Permutation&) const = default;

private:
    std::vector<std::uint32_t> image_;
};

/// All permutations of {0..n-1} in lexicographic order.
inline std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<std::uint32_t> v(n);
    std::iota(v.begin(), v.end(), 0u);
    std::vector<Permutation> out;
    do out.emplace_back(v);
    while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// Pure (r, n-r) shuffles: increasing on the first r positions and on the rest.
inline std::vector<Permutation> pure_shuffles(std::size_t n, std::size_t r) {
    std::vector<Permutation> out;
    if (r > n) return out;
    std::vector<bool> chosen(n, false);
    std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(r), true);
    do {
        std::vector<std::uint32_t> v;
        for (std::size_t i = 0; i < n; ++i)
            if (chosen[i]) v.push_back(static_cast<std::uint32_t>(i));
        for (std::size_t i = 0; i < n; ++i)
            if (!chosen[i]) v.push_back(static_cast<std::uint32_t>(i));
        out.emplace_back(std::move(v));
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
    return out;
}

/// lambda_i = 2^i - 2
inline long hodge_eigenvalue(std::size_t i) { return (1L << i) - 2; }

template <Field K>
void require_symmetric_setting(const SecondaryComplex<K>& cx) {
    if (!cx.triple().A().is_commutative()) throw PreconditionError("A not commutative");
    const auto& M = cx.module();
    for (std::size_t i = 0; i < M.algebra_dim(); ++i)
        if (!detail::same(M.left(i), M.right(i))) throw PreconditionError("M not symmetric");
}

namespace detail {

/// Calls visit(o, src) for every offset o of the codec, where src is the offset of T' below.
/// The source offset is linear in the digits of T: digit d (codec order) carries weight w[d].
template <class Visit>
void for_each_source(const TensorCodec& c, const Permutation& pi, Visit&& visit) {
    const std::size_t n = c.degree();
    c.decode(0);  // refuses unaddressable shapes
    std::vector<std::uint64_t> w, radix;
    const auto inv = pi.inverse();
    for (std::size_t q = 0; q < n; ++q) {
        w.push_back(c.diag_weight(inv(q)));
        radix.push_back(c.dim_a());
    }
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v) {
            const auto r = std::min(inv(u), inv(v)), s = std::max(inv(u), inv(v));
            w.push_back(c.pair_weight(pair_index(n, r, s)));
            radix.push_back(c.dim_b());
        }
    std::vector<std::uint64_t> digit(w.size(), 0);
    std::uint64_t src = 0;
    for (std::uint64_t o = 0; o < c.count(); ++o) {
        visit(o, src);
        for (std::size_t d = digit.size(); d-- > 0;) {
            if (++digit[d] < radix[d]) {
                src += w[d];
                break;
            }
            src -= w[d] * (radix[d] - 1);
            digit[d] = 0;
        }
    }
}

}  // namespace detail

/// (pi f)(T) = f(T') with T'_{rr} = a_{pi(r)} and T'_{rc} = b_{min(pi r, pi c), max(pi r, pi c)}.
template <Field K>
Cochain<K> act(const SecondaryComplex<K>& cx, const Permutation& pi, const Cochain<K>& f) {
    require_symmetric_setting(cx);
    cx.require_compatible(f);
    if (pi.size() != f.degree()) throw PreconditionError("permutation size does not match cochain degree");
    Cochain<K> out(cx.field(), f.shape());
    const std::size_t dm = f.module_dim();
    detail::for_each_source(f.codec(), pi, [&](std::uint64_t o, std::uint64_t src) {
        for (std::size_t r = 0; r < dm; ++r) out.data()[o * dm + r] = f.data()[src * dm + r];
    });
    return out;
}

/// The right action f . pi, realised as the left action of pi^{-1}.
template <Field K>
Cochain<K> act_right(const SecondaryComplex<K>& cx, const Cochain<K>& f, const Permutation& pi) {
    return act(cx, pi.inverse(), f);
}

/// s_{r,n-r} f = sum over pure (r,n-r) shuffles of sgn(pi) f . pi. The right action is the one
/// that commutes with delta; the left action does not.
template <Field K>
Cochain<K> shuffle(const SecondaryComplex<K>& cx, std::size_t r, const Cochain<K>& f) {
    require_symmetric_setting(cx);
    cx.require_compatible(f);
    const K& k = cx.field();
    Cochain<K> out(k, f.shape());
    const std::size_t dm = f.module_dim();
    auto& dst = out.data();
    const auto& from = f.data();
    for (const auto& pi : pure_shuffles(f.degree(), r)) {
        const bool plus = pi.sign() > 0;
        detail::for_each_source(f.codec(), pi.inverse(), [&](std::uint64_t o, std::uint64_t src) {
            for (std::size_t i = 0; i < dm; ++i) {
                if (plus) k.add_to(dst[o * dm + i], from[src * dm + i]);
                else k.sub_from(dst[o * dm + i], from[src * dm + i]);
            }
        });
    }
    return out;
}

/// s_n f = sum_{r=1}^{n-1} s_{r,n-r} f
template <Field K>
Cochain<K> total_shuffle(const SecondaryComplex<K>& cx, const Cochain<K>& f) {
    require_symmetric_setting(cx);
    Cochain<K> out(cx.field(), f.shape());
    for (std::size_t r = 1; r < f.degree(); ++r) out += shuffle(cx, r, f);
    return out;
}

/// Refuses prime fields in which some lambda_k - lambda_i (i, k <= n) vanishes.
template <Field K>
void require_hodge_denominators(const K& k, std::size_t n) {
    for (std::size_t a = 1; a <= n; ++a)
        for (std::size_t b = a + 1; b <= n; ++b)
            if (k.is_zero(k.from_int(hodge_eigenvalue(b) - hodge_eigenvalue(a))))
                throw PreconditionError("denominator not invertible (prime field too small)");
}

/// e_n(k) f = prod_{i != k} (lambda_k - lambda_i)^{-1} (s_n - lambda_i) f, with e_n(k) = 0 for k > n
/// or k = 0 < n, and e_0(0) = 1.
template <Field K>
Cochain<K> idempotent_apply(const SecondaryComplex<K>& cx, std::size_t k, const Cochain<K>& f) {
    require_symmetric_setting(cx);
    const std::size_t n = f.degree();
    const K& field = cx.field();
    if (n == 0) return k == 0 ? f : Cochain<K>(field, f.shape());
    if (k == 0 || k > n) return Cochain<K>(field, f.shape());
    require_hodge_denominators(field, n);
    Cochain<K> g = f;
    auto denom = field.one();
    for (std::size_t i = 1; i <= n; ++i) {
        if (i == k) continue;
        auto lam = field.from_int(hodge_eigenvalue(i));
        auto next = total_shuffle(cx, g);
        next -= lam * g;
        g = std::move(next);
        denom = field.mul(denom, field.from_int(hodge_eigenvalue(k) - hodge_eigenvalue(i)));
    }
    g *= field.inv(denom);
    return g;
}

/// All of e_n(0) f, ..., e_n(n) f at once: the powers s_n^j f (j < n) are computed once and each
/// idempotent is expanded as a polynomial in s_n.
template <Field K>
std::vector<Cochain<K>> hodge_projections(const SecondaryComplex<K>& cx, const Cochain<K>& f) {
    require_symmetric_setting(cx);
    const std::size_t n = f.degree();
    const K& field = cx.field();
    std::vector<Cochain<K>> out(n + 1, Cochain<K>(field, f.shape()));
    if (n == 0) {
        out[0] = f;
        return out;
    }
    require_hodge_denominators(field, n);
    std::vector<Cochain<K>> powers{f};
    for (std::size_t j = 1; j < n; ++j) powers.push_back(total_shuffle(cx, powers.back()));
    for (std::size_t k = 1; k <= n; ++k) {
        Vec<K> coef{field.one()};  // coefficients of prod_{i != k} (s - lambda_i), low degree first
        auto denom = field.one();
        for (std::size_t i = 1; i <= n; ++i) {
            if (i == k) continue;
            const auto lam = field.from_int(hodge_eigenvalue(i));
            Vec<K> next(coef.size() + 1, field.zero());
            for (std::size_t d = 0; d < coef.size(); ++d) {
                next[d + 1] = field.add(next[d + 1], coef[d]);
                next[d] = field.sub(next[d], field.mul(lam, coef[d]));
            }
            coef = std::move(next);
            denom = field.mul(denom, field.from_int(hodge_eigenvalue(k) - hodge_eigenvalue(i)));
        }
        const auto scale = field.inv(denom);
        for (std::size_t d = 0; d < coef.size(); ++d)
            if (!field.is_zero(coef[d])) out[k] += field.mul(coef[d], scale) * powers[d];
    }
    return out;
}

/// mu_n(s_n) f = prod_{i=1}^{n} (s_n - lambda_i) f
template <Field K>
Cochain<K> minimal_polynomial_apply(const SecondaryComplex<K>& cx, const Cochain<K>& f) {
    Cochain<K> g = f;
    for (std::size_t i = 1; i <= f.degree(); ++i) {
        auto next = total_shuffle(cx, g);
        next -= cx.field().from_int(hodge_eigenvalue(i)) * g;
        g = std::move(next);
    }
    return g;
}

/// Basis of e_n(k) C^n, as the span of e_n(k) applied to the coordinate basis.
template <Field K>
Subspace<K> hodge_component(const SecondaryComplex<K>& cx, std::size_t n, std::size_t k) {
    const K& field = cx.field();
    const auto d = cx.dim(n);
    cx.require_within_cap(n);
    Echelon<K> e(field, d);
    for (std::uint64_t c = 0; c < d && e.rank() < d; ++c) {
        Cochain<K> basis = cx.zero(n);
        basis.data()[c] = field.one();
        e.insert(to_sparse(field, idempotent_apply(cx, k, basis).data()));
    }
    std::vector<SparseVec<K>> rows = e.rows();
    return Subspace<K>::span(field, d, rows);
}

struct HodgeComponent {
    std::size_t k;
    std::size_t dim;
};

/// dim H^{k, n-k} for k = 1..n (k = 0 only when n = 0).
template <Field K>
std::vector<HodgeComponent> hodge_decomposition(const SecondaryComplex<K>& cx, std::size_t n) {
    require_symmetric_setting(cx);
    require_hodge_denominators(cx.field(), n + 1);
    const K& field = cx.field();
    auto image_rank = [&](const Subspace<K>& space, std::size_t deg) {
        const auto mat = cx.delta_matrix(deg).matrix;
        Matrix<K> images(field, space.dim(), mat.rows());
        for (std::size_t i = 0; i < space.dim(); ++i)
            images.set_row(i, to_sparse(field, mat.apply(to_dense(field, space.basis()[i], space.ambient()))));
        return rank(images);
    };
    std::vector<HodgeComponent> out;
    const std::size_t first = n == 0 ? 0 : 1;
    for (std::size_t k = first; k <= n; ++k) {
        auto here = hodge_component(cx, n, k);
        std::size_t cocycles = here.dim() - image_rank(here, n);
        std::size_t boundaries = 0;
        if (n > 0) boundaries = image_rank(hodge_component(cx, n - 1, k), n - 1);
        out.push_back({k, cocycles - boundaries});
    }
    return out;
}

}  // namespace secohom
